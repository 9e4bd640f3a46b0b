"""Bottom-up scheme dynamic program deciding c-colourability of a term."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .annotate import Annotations, annotate
from .labels import bit, size
from .scheme import (
    Scheme,
    closure,
    nullary_scheme,
    project,
    relabel,
    saturated,
    trace,
)
from .term import Add, Relab, Term, Union, Vertex, format_position


def scheme_count_bound(c: int, k: int) -> int:
    """min((c+1)^(2^k), (2^c - 2)^k): how many schemes over k labels can exist."""
    lacking = (2 ** c - 2) ** k  # 0**0 == 1
    if not lacking:
        return 0
    if (1 << min(k, 64)) * math.log2(c + 1) > lacking.bit_length() + 1:
        return lacking
    return min((c + 1) ** (1 << k), lacking)


def entry_bound(c: int, k: int) -> int:
    return min(c, 2 ** k)


@dataclass
class PositionStats:
    pos: str
    k_prime: int
    set_size: int
    N_s_bound: int
    D_s_bound: int
    closure_size: int = 0

    def to_json(self) -> dict:
        return {
            "pos": self.pos,
            "k_prime": self.k_prime,
            "set_size": self.set_size,
            "N_s_bound": self.N_s_bound,
            "D_s_bound": self.D_s_bound,
            "closure_size": self.closure_size,
        }


@dataclass(frozen=True)
class UnionWitness:
    """First justification of a union output scheme."""

    left: Scheme  # source scheme in the left child's set
    right: Scheme
    left_steps: tuple  # single steps (element, label) from project(left) to phi
    right_steps: tuple
    phi: Scheme  # common overapproximation that survived the filters


@dataclass
class SolveResult:
    term: Term
    c: int
    colourable: bool
    annotations: Optional[Annotations]
    sets: dict = field(default_factory=dict)  # flat index -> frozenset of schemes
    witnesses: Optional[dict] = None  # flat index -> {scheme: justification}
    stats: list = field(default_factory=list)
    short_circuit: bool = False
    label_bits: float = 0.0  # l_s = k + log2(c)

    def set_at(self, pos) -> frozenset:
        return self.sets[self.term.index(pos)]

    @property
    def root_set(self) -> frozenset:
        return self.sets.get(self.term.root_index, frozenset())


# --- the four transfer functions ---------------------------------------------

def step_vertex(label: int, c: int) -> frozenset:
    return frozenset((nullary_scheme(label, c),))


def step_add(schemes: frozenset) -> frozenset:
    return schemes


def step_relab(schemes: frozenset, a: int, b: int, boundary_after: int) -> frozenset:
    """Relabel every scheme; if b stays a boundary label, drop schemes where
    every colour carries b."""
    if a == b:
        return schemes
    out = {relabel(s, a, b) for s in schemes}
    if boundary_after & bit(b):
        out = {s for s in out if not saturated(s, bit(b))}
    return frozenset(out)


def step_union(
    left: frozenset,
    right: frozenset,
    boundary_left: int,
    boundary_right: int,
    pending: list,
    boundary_after: int,
    witnesses: Optional[dict] = None,
    info: Optional[dict] = None,
) -> frozenset:
    """Combine the children's scheme sets.

    ``pending`` is a list of two-bit label masks. ``witnesses``, when given,
    is filled with a :class:`UnionWitness` per output scheme; ``info`` receives
    the closure sizes.
    """
    record = witnesses is not None
    origin = ({}, {})
    projected = []
    for side, (schemes, keep) in enumerate(((left, boundary_left), (right, boundary_right))):
        proj = []
        for s in schemes:
            p = project(s, keep)
            if record and p not in origin[side]:
                origin[side][p] = s
            proj.append(p)
        projected.append(proj)
    target = boundary_left | boundary_right
    parents = ({}, {}) if record else (None, None)
    over_left = closure(projected[0], target, parents[0])
    over_right = closure(projected[1], target, parents[1])
    if info is not None:
        info["closure_size"] = len(over_left) + len(over_right)
    small, large = (over_left, over_right) if len(over_left) <= len(over_right) else (over_right, over_left)
    common = [phi for phi in small if phi in large]
    if record:
        common.sort()
    out: set = set()
    for phi in common:
        if any(mask & pair == pair for mask, _ in phi for pair in pending):
            continue
        if saturated(phi, boundary_after):
            continue
        s = project(phi, boundary_after)
        if s in out:
            continue
        out.add(s)
        if record:
            root_l, steps_l = trace(parents[0], phi)
            root_r, steps_r = trace(parents[1], phi)
            witnesses[s] = UnionWitness(
                origin[0][root_l], origin[1][root_r], tuple(steps_l), tuple(steps_r), phi
            )
    return frozenset(out)


# --- driver ------------------------------------------------------------------

def solve(
    t: Term,
    c: int,
    *,
    witnesses: bool = False,
    keep_sets: bool = False,
    short_circuit: bool = True,
) -> SolveResult:
    """Run the scheme DP over ``t`` with ``c`` colours.

    With ``short_circuit`` (the default) a term with at most ``c`` vertices is
    reported colourable without running the DP. ``keep_sets`` retains the
    scheme set of every position (implied by ``witnesses``).
    """
    if c < 1:
        raise ValueError("number of colours must be at least 1")
    n = len(t.vertex_names)
    label_bits = size(t.label_mask) + math.log2(c)
    if short_circuit and c >= n:
        return SolveResult(t, c, True, None, short_circuit=True, label_bits=label_bits)
    ann = annotate(t)
    keep = keep_sets or witnesses
    sets: list = [None] * len(t.nodes)
    why: Optional[dict] = {} if witnesses else None
    stats = []
    for i, (node, ks) in enumerate(zip(t.nodes, t.kids)):
        boundary = ann.boundary[i]
        info: dict = {}
        local: Optional[dict] = {} if witnesses else None
        if isinstance(node, Vertex):
            # keep boundary labels only; a boundary label cannot take every colour
            out = frozenset(
                project(s, boundary)
                for s in step_vertex(node.label, c)
                if not saturated(s, boundary)
            )
        elif isinstance(node, Add):
            out = step_add(sets[ks[0]])
            if local is not None:
                local.update((s, s) for s in out)
        elif isinstance(node, Relab):
            child = sets[ks[0]]
            out = step_relab(child, node.a, node.b, boundary)
            if local is not None:
                for s in sorted(child):
                    r = relabel(s, node.a, node.b)
                    if r in out and r not in local:
                        local[r] = s
        else:
            l, r = ks
            out = step_union(
                sets[l], sets[r], ann.boundary[l], ann.boundary[r],
                ann.pending_masks(i), boundary, local, info,
            )
        sets[i] = out
        if why is not None:
            why[i] = local
        k_prime = size(boundary)
        stats.append(PositionStats(
            format_position(t.pos[i]), k_prime, len(out),
            scheme_count_bound(c, k_prime), entry_bound(c, k_prime),
            info.get("closure_size", 0),
        ))
        if not keep:
            for k in ks:
                sets[k] = None
    root = t.root_index
    kept = {i: s for i, s in enumerate(sets) if s is not None}
    return SolveResult(
        t, c, bool(sets[root]), ann, kept, why, stats, label_bits=label_bits,
    )


def is_colourable(t: Term, c: int) -> bool:
    return solve(t, c).colourable


def greedy_bound(t: Term) -> int:
    """Colours used by a largest-degree-first greedy colouring (an upper bound)."""
    from .term import evaluate_graph

    g = evaluate_graph(t)
    adj = g.adjacency()
    colour: dict = {}
    for v in sorted(adj, key=lambda x: (-len(adj[x]), x)):
        taken = {colour[w] for w in adj[v] if w in colour}
        k = 1
        while k in taken:
            k += 1
        colour[v] = k
    return max(colour.values(), default=1)


def chromatic_number(t: Term) -> int:
    """Least c with a proper c-colouring, by binary search over [1, greedy bound]."""
    lo, hi = 1, min(len(t.vertex_names), greedy_bound(t))
    while lo < hi:
        mid = (lo + hi) // 2
        if solve(t, mid).colourable:
            hi = mid
        else:
            lo = mid + 1
    return lo
