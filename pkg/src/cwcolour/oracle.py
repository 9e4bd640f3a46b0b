"""Brute-force ground truth and random instances for differential testing.

Nothing here touches the scheme DP or the annotation recurrences: every
answer is computed from the evaluated graphs directly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .labels import bit, relabel_mask
from .scheme import canonical
from .term import (
    Add,
    LabeledGraph,
    Node,
    Relab,
    Term,
    Union,
    Vertex,
    evaluate_graph,
)

DEFAULT_CAP = 16


class OracleLimitError(ValueError):
    """The instance is too large for exhaustive search."""


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise OracleLimitError(f"{n} vertices exceeds the brute-force cap of {cap}")


def _order(g: LabeledGraph) -> tuple:
    adj = g.adjacency()
    order = sorted(adj, key=lambda v: (-len(adj[v]), v))
    return order, adj


def proper_colourings(g: LabeledGraph, c: int, cap: int = DEFAULT_CAP) -> Iterator[dict]:
    """Every proper colouring with colours 0..c-1, one per colour permutation class.

    Colours are introduced in order (a vertex may only open colour ``used``),
    so each partition into independent sets appears exactly once.
    """
    _check_cap(len(g.vertices), cap)
    order, adj = _order(g)
    colour: dict = {}

    def go(i: int, opened: int) -> Iterator[dict]:
        if i == len(order):
            yield dict(colour)
            return
        v = order[i]
        taken = {colour[w] for w in adj[v] if w in colour}
        for k in range(min(opened + 1, c)):
            if k in taken:
                continue
            colour[v] = k
            yield from go(i + 1, max(opened, k + 1))
            del colour[v]

    yield from go(0, 0)


def brute_force_colourable(g: LabeledGraph, c: int, cap: int = DEFAULT_CAP) -> bool:
    return next(proper_colourings(g, c, cap), None) is not None


def brute_force_chromatic(g: LabeledGraph, cap: int = DEFAULT_CAP) -> int:
    c = 1
    while not brute_force_colourable(g, c, cap):
        c += 1
    return c


def brute_force_annotations(t: Term, pos) -> tuple:
    """(used, boundary, pending) at ``pos`` computed straight from the definitions."""
    whole = evaluate_graph(t)
    sub = evaluate_graph(t.subterm(pos))
    label = dict(sub.vertices)
    used = 0
    for l in label.values():
        used |= bit(l)
    boundary = 0
    pending = set()
    for x, y in whole.edges:
        if (x in label) != (y in label):
            inner = x if x in label else y
            boundary |= bit(label[inner])
        elif x in label and (x, y) not in sub.edges:
            a, b = sorted((label[x], label[y]))
            pending.add((a, b))
    return used, boundary, frozenset(pending)


def describe(colouring: dict, labels: dict, keep: int, c: int):
    """Scheme describing ``colouring`` (colours 0..c-1) over the vertices in
    ``labels`` (name -> label), counting only labels in ``keep``."""
    per_colour = [0] * c
    for name, l in labels.items():
        per_colour[colouring[name]] |= bit(l) & keep
    return canonical((mask, 1) for mask in per_colour)


def enumerate_descriptions(
    t: Term,
    pos,
    c: int,
    restrict_to_full: bool,
    labels: Optional[int] = None,
    cap: int = DEFAULT_CAP,
) -> frozenset:
    """Descriptions at ``pos`` of proper c-colourings.

    With ``restrict_to_full`` the colourings are those of the whole graph,
    restricted to the subterm; otherwise those of the subterm's graph alone.
    ``labels`` selects which labels the description records (default: the
    boundary labels at ``pos``).
    """
    sub = evaluate_graph(t.subterm(pos))
    at_pos = dict(sub.vertices)
    if labels is None:
        labels = brute_force_annotations(t, pos)[1]
    g = evaluate_graph(t) if restrict_to_full else sub
    return frozenset(describe(col, at_pos, labels, c) for col in proper_colourings(g, c, cap))


def is_overapproximation(target, source) -> bool:
    """Whether ``target`` is reachable from ``source`` by single steps.

    Equivalent condition: the colours can be matched so every source set is
    contained in its target set, and every label present in all target sets
    was already present in all source sets.
    """
    big = [m for m, k in target for _ in range(k)]
    small = [m for m, k in source for _ in range(k)]
    if len(big) != len(small):
        return False
    every_big = every_small = -1
    for m in big:
        every_big &= m
    for m in small:
        every_small &= m
    if every_big & ~every_small:
        return False
    # bipartite matching small -> big with containment
    match: dict = {}

    def augment(i: int, seen: set) -> bool:
        for j, m in enumerate(big):
            if j in seen or small[i] & ~m:
                continue
            seen.add(j)
            if j not in match or augment(match[j], seen):
                match[j] = i
                return True
        return False

    return all(augment(i, set()) for i in range(len(small)))


# --- random instances ----------------------------------------------------------

@dataclass(frozen=True)
class GenParams:
    seed: int
    n: int
    k: int
    add_density: float = 0.5
    relab_density: float = 0.3


def random_term(p: GenParams) -> Term:
    """A random valid term of width at most ``k`` with ``n`` vertices.

    After every union the unary chain is normalised: edge additions first (each
    label pair independently with ``add_density``), then relabellings.
    """
    if p.n < 1 or p.k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    rng = random.Random(p.seed)
    pool: list = []
    for i in range(p.n):
        label = rng.randint(1, p.k)
        pool.append((Vertex(label, f"v{i}"), bit(label)))
    while len(pool) > 1:
        i, j = sorted(rng.sample(range(len(pool)), 2))
        right = pool.pop(j)
        left = pool.pop(i)
        node: Node = Union(left[0], right[0])
        used = left[1] | right[1]
        present = [l for l in range(1, p.k + 1) if used & bit(l)]
        for x in range(len(present)):
            for y in range(x + 1, len(present)):
                if rng.random() < p.add_density:
                    node = Add(present[x], present[y], node)
        for _ in range(p.k):
            if rng.random() < p.relab_density:
                present = [l for l in range(1, p.k + 1) if used & bit(l)]
                a = rng.choice(present)
                b = rng.randint(1, p.k)
                if a != b:
                    node = Relab(a, b, node)
                    used = relabel_mask(used, a, b)
        pool.insert(rng.randint(0, len(pool)), (node, used))
    return Term(pool[0][0])


# --- fixed terms used across tests and the CLI ---------------------------------

def path_term(n: int) -> Term:
    """Width-3 term for the path v0 - v1 - ... - v(n-1).

    Label 2 marks the current end of the path, 1 the finished interior and 3
    the vertex being attached.
    """
    node: Node = Vertex(2, "v0")
    for i in range(1, n):
        node = Relab(3, 2, Relab(2, 1, Add(2, 3, Union(node, Vertex(3, f"v{i}")))))
    return Term(node)


def clique_term(n: int) -> Term:
    """Width-2 term for the complete graph on n vertices."""
    node: Node = Vertex(1, "k0")
    for i in range(1, n):
        node = Relab(2, 1, Add(1, 2, Union(node, Vertex(2, f"k{i}"))))
    return Term(node)

