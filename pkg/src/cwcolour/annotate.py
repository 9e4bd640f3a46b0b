"""Per-position used labels, boundary labels and pending pairs.

All vertices that share a label at a position have the same future: every
edge added above the position treats them alike. So the facts needed here
can be tracked per label rather than per vertex, with three O(k^2) passes:

* bottom-up ``full[a]``: labels b such that every a-vertex is adjacent to
  every b-vertex inside the subterm;
* top-down ``joined[a]``: labels b whose class will be joined to the a-class
  by some ``add`` strictly above the position;
* top-down ``outside``: labels having an edge to a vertex outside the subterm.

boundary = used labels with an outside edge; pending = joined pairs that are
not already complete bipartite.
"""
from __future__ import annotations

from dataclasses import dataclass

from .labels import bit, iter_labels, labels_of, relabel_mask
from .term import Add, Relab, Term, Union, Vertex, format_position


@dataclass(frozen=True)
class Annotations:
    """Flat per-index annotation tables aligned with ``term.nodes``."""

    term: Term
    used: tuple  # label masks
    boundary: tuple  # label masks
    pending: tuple  # frozensets of (a, b) with a < b

    def at(self, pos) -> tuple:
        i = self.term.index(pos)
        return self.used[i], self.boundary[i], self.pending[i]

    def pending_masks(self, i: int) -> list:
        return [bit(a) | bit(b) for a, b in sorted(self.pending[i])]

    def to_json(self) -> list:
        return [
            {
                "pos": format_position(p),
                "used": labels_of(self.used[i]),
                "boundary": labels_of(self.boundary[i]),
                "pending": [list(pair) for pair in sorted(self.pending[i])],
            }
            for i, p in enumerate(self.term.pos)
        ]


def used_labels(t: Term) -> list:
    used: list = []
    for node, ks in zip(t.nodes, t.kids):
        if isinstance(node, Vertex):
            used.append(bit(node.label))
        elif isinstance(node, Union):
            used.append(used[ks[0]] | used[ks[1]])
        elif isinstance(node, Add):
            used.append(used[ks[0]])
        else:
            used.append(relabel_mask(used[ks[0]], node.a, node.b))
    return used


def annotate(t: Term) -> Annotations:
    used = used_labels(t)
    n = len(t.nodes)
    full = _complete_pairs(t, used)
    joined: list = [None] * n
    outside: list = [0] * n
    root = t.root_index
    joined[root] = {label: 0 for label in iter_labels(used[root])}
    outside[root] = 0
    for i in range(n - 1, -1, -1):
        node, ks = t.nodes[i], t.kids[i]
        h, f = joined[i], outside[i]
        if isinstance(node, Add):
            (k,) = ks
            row = dict(h)
            if node.a in row and node.b in row:
                row[node.a] |= bit(node.b)
                row[node.b] |= bit(node.a)
            joined[k] = row
            outside[k] = f
        elif isinstance(node, Relab):
            (k,) = ks
            a, b = node.a, node.b
            row = {}
            child_f = 0
            for label in iter_labels(used[k]):
                image = b if label == a else label
                partners = 0
                for other in iter_labels(h[image]):
                    # labels mapping onto ``other`` below the relabelling
                    if other == b:
                        partners |= (bit(a) | bit(b)) & used[k]
                    else:
                        partners |= bit(other) & used[k]
                partners &= ~bit(label)
                if label == a or label == b:
                    partners &= ~(bit(a) | bit(b))
                row[label] = partners
                if f & bit(image):
                    child_f |= bit(label)
            joined[k] = row
            outside[k] = child_f
        elif isinstance(node, Union):
            for k, sib in ((ks[0], ks[1]), (ks[1], ks[0])):
                mine, theirs = used[k], used[sib]
                row = {}
                child_f = f & mine
                for label in iter_labels(mine):
                    row[label] = h[label] & mine
                    if h[label] & theirs:
                        child_f |= bit(label)
                joined[k] = row
                outside[k] = child_f
    boundary = tuple(outside[i] & used[i] for i in range(n))
    pending = []
    for i in range(n):
        pairs = set()
        for a, partners in joined[i].items():
            for b in iter_labels(partners & ~full[i][a]):
                if a < b:
                    pairs.add((a, b))
        pending.append(frozenset(pairs))
    return Annotations(t, tuple(used), boundary, tuple(pending))


def _complete_pairs(t: Term, used: list) -> list:
    """Bottom-up: ``full[i][a]`` is the mask of used labels b != a such that
    every a-vertex is adjacent to every b-vertex in the subterm at i."""
    full: list = []
    for node, ks in zip(t.nodes, t.kids):
        if isinstance(node, Vertex):
            full.append({node.label: 0})
        elif isinstance(node, Add):
            row = dict(full[ks[0]])
            if node.a in row and node.b in row:
                row[node.a] |= bit(node.b)
                row[node.b] |= bit(node.a)
            full.append(row)
        elif isinstance(node, Relab):
            old = full[ks[0]]
            a, b = node.a, node.b
            if a == b or a not in old:
                full.append(old)
                continue
            drop = ~(bit(a) | bit(b))
            merged = (old[a] & old[b] if b in old else old[a]) & drop
            row = {}
            for label, m in old.items():
                if label == a or label == b:
                    continue
                m &= drop
                if merged & bit(label):
                    m |= bit(b)
                row[label] = m
            row[b] = merged
            full.append(row)
        else:
            u1, u2 = used[ks[0]], used[ks[1]]
            only1, only2 = u1 & ~u2, u2 & ~u1
            row = {}
            for label in iter_labels(u1 | u2):
                lb = bit(label)
                if only1 & lb:
                    row[label] = full[ks[0]][label] & only1
                elif only2 & lb:
                    row[label] = full[ks[1]][label] & only2
                else:
                    row[label] = 0
            full.append(row)
    return full
