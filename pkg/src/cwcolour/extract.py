"""Turn recorded justifications back into an explicit proper colouring.

Colours are fixed only at the root: the chosen root scheme is laid out as one
label set per colour ("slots"). Walking down, each step rewrites the slot list
into one for the justifying child scheme, so a leaf finds its colour as the
unique slot holding its label.
"""
from __future__ import annotations

from typing import Optional

from .labels import bit, relabel_mask
from .scheme import Scheme, project, relabel, single_step
from .solver import SolveResult, UnionWitness, solve
from .term import Add, LabeledGraph, Relab, Term, Vertex


class ExtractionError(RuntimeError):
    pass


def _expand(s: Scheme) -> list:
    slots = []
    for mask, mult in s:
        slots.extend([mask] * mult)
    return slots


def _assign(slots: list, s: Scheme, key) -> list:
    """Give each colour an element of ``s`` whose image under ``key`` is the
    colour's current slot."""
    free: dict = {}
    for colour, mask in enumerate(slots):
        free.setdefault(mask, []).append(colour)
    out = [None] * len(slots)
    for mask, mult in s:
        pool = free.get(key(mask), [])
        if len(pool) < mult:
            raise ExtractionError("justification does not match the slot layout")
        for _ in range(mult):
            out[pool.pop()] = mask
    return out


def extract_colouring(t: Term, c: int, result: Optional[SolveResult] = None) -> Optional[dict]:
    """Return a proper colouring {name: colour in 1..c}, or None if there is none."""
    if result is None:
        result = solve(t, c, witnesses=True)
    if result.short_circuit:
        return {name: i + 1 for i, name in enumerate(t.vertex_names)}
    if not result.colourable:
        return None
    if result.witnesses is None:
        raise ExtractionError("solve() must be run with witnesses=True")
    boundary = result.annotations.boundary
    why = result.witnesses
    root = t.root_index
    start = min(result.sets[root])
    colouring: dict = {}
    stack = [(root, start, _expand(start))]
    while stack:
        i, s, slots = stack.pop()
        node, ks = t.nodes[i], t.kids[i]
        if isinstance(node, Vertex):
            lb = bit(node.label)
            if not boundary[i] & lb:
                # no edge leaves this vertex: it is isolated, any colour will do
                colouring[node.name] = 1
                continue
            holders = [j for j, mask in enumerate(slots) if mask & lb]
            if len(holders) != 1:
                raise ExtractionError(f"vertex {node.name} does not own exactly one slot")
            colouring[node.name] = holders[0] + 1
        elif isinstance(node, Add):
            stack.append((ks[0], s, slots))
        elif isinstance(node, Relab):
            pred = why[i][s]
            a, b = node.a, node.b
            stack.append((ks[0], pred, _assign(slots, pred, lambda m: relabel_mask(m, a, b))))
        else:
            w: UnionWitness = why[i][s]
            keep = boundary[i]
            phi_slots = _assign(slots, w.phi, lambda m: m & keep)
            for k, src, steps in ((ks[0], w.left, w.left_steps), (ks[1], w.right, w.right_steps)):
                cur = list(phi_slots)
                for mask, a in reversed(steps):
                    cur[cur.index(mask | bit(a))] = mask
                kb = boundary[k]
                stack.append((k, src, _assign(cur, src, lambda m, kb=kb: m & kb)))
    return colouring


def replay(result: SolveResult, i: int, s: Scheme) -> Scheme:
    """Re-derive scheme ``s`` at flat index ``i`` from its recorded justification."""
    t = result.term
    node, ks = t.nodes[i], t.kids[i]
    if isinstance(node, Vertex):
        return s
    w = result.witnesses[i][s]
    if isinstance(node, Add):
        return w
    if isinstance(node, Relab):
        return relabel(w, node.a, node.b)
    boundary = result.annotations.boundary
    out = []
    for src, steps, k in ((w.left, w.left_steps, ks[0]), (w.right, w.right_steps, ks[1])):
        cur = project(src, boundary[k])
        for mask, a in steps:
            cur = single_step(cur, mask, a)
            if cur is None:
                raise ExtractionError("recorded step was rejected on replay")
        out.append(cur)
    if out[0] != w.phi or out[1] != w.phi:
        raise ExtractionError("replayed overapproximations disagree")
    return project(w.phi, boundary[i])


def verify_colouring(g: LabeledGraph, colouring: dict, c: int) -> bool:
    """True iff ``colouring`` is a proper colouring of ``g`` with colours 1..c.

    Raises ValueError for names that are not vertices of ``g``.
    """
    names = set(g.names)
    unknown = set(colouring) - names
    if unknown:
        raise ValueError(f"unknown vertices in colouring: {sorted(unknown)}")
    if set(colouring) != names:
        return False
    if any(not isinstance(col, int) or not 1 <= col <= c for col in colouring.values()):
        return False
    return all(colouring[x] != colouring[y] for x, y in g.edges)
