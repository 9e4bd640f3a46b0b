"""Clique-width terms: syntax tree, S-expression parser, positions and evaluation.

A term is built from four symbols::

    (v 1 x)            vertex x with label 1
    (u T1 T2 ...)      disjoint union (n-ary input is left-folded to binary)
    (add 1 2 T)        join every 1-labelled vertex to every 2-labelled vertex
    (rel 1 2 T)        relabel 1 into 2

Everything here is iterative so that very deep terms (long paths, caterpillars)
do not hit the interpreter recursion limit.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union as TUnion

from .labels import bit

MAX_LABEL = 64

Position = tuple  # tuple[int, ...]; () is the root


class TermError(ValueError):
    """Raised for syntactically or semantically invalid terms."""

    def __init__(self, message: str, offset: int | None = None, text: str | None = None):
        self.offset = offset
        if offset is not None and text is not None:
            line = text.count("\n", 0, offset) + 1
            col = offset - (text.rfind("\n", 0, offset) + 1) + 1
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)


@dataclass(frozen=True)
class Vertex:
    label: int
    name: str


@dataclass(frozen=True)
class Union:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Add:
    a: int
    b: int
    child: "Node"


@dataclass(frozen=True)
class Relab:
    a: int
    b: int
    child: "Node"


Node = TUnion[Vertex, Union, Add, Relab]


def children(node: Node) -> tuple:
    if isinstance(node, Union):
        return (node.left, node.right)
    if isinstance(node, (Add, Relab)):
        return (node.child,)
    return ()


def format_position(pos: Position) -> str:
    return ".".join(map(str, pos)) if pos else "ε"


def parse_position(text: str) -> Position:
    text = text.strip()
    if text in ("", "ε", "e", "root"):
        return ()
    try:
        return tuple(int(part) for part in text.split("."))
    except ValueError:
        raise TermError(f"bad position {text!r}") from None


def _check_label(label: int, where: str) -> None:
    if not 1 <= label <= MAX_LABEL:
        raise TermError(f"label {label} in {where} outside 1..{MAX_LABEL}")


class Term:
    """An immutable, validated clique-width term.

    Nodes are kept both as the original tree and as a flat post-order table:
    ``nodes[i]``, ``pos[i]`` and ``kids[i]`` (indices of the children, which
    always precede ``i``). The root is the last entry.
    """

    def __init__(self, root: Node):
        self.root = root
        nodes: list = []
        pos: list = []
        kids: list = []
        # iterative post-order: (node, position, expanded?)
        stack: list = [(root, (), False)]
        index_of: dict = {}
        while stack:
            node, p, expanded = stack.pop()
            ch = children(node)
            if expanded or not ch:
                kids.append(tuple(index_of[p + (j,)] for j in range(len(ch))))
                index_of[p] = len(nodes)
                nodes.append(node)
                pos.append(p)
                continue
            stack.append((node, p, True))
            for j in reversed(range(len(ch))):
                stack.append((ch[j], p + (j,), False))
        self.nodes: tuple = tuple(nodes)
        self.pos: tuple = tuple(pos)
        self.kids: tuple = tuple(kids)
        self._index = index_of
        sizes: list = []
        for ks in kids:
            sizes.append(1 + sum(sizes[k] for k in ks))
        self._sizes = sizes
        self._validate()

    def _validate(self) -> None:
        seen: set = set()
        labels = 0
        for node in self.nodes:
            if isinstance(node, Vertex):
                _check_label(node.label, f"vertex {node.name}")
                if not isinstance(node.name, str) or not _NAME.fullmatch(node.name):
                    raise TermError(f"invalid vertex name {node.name!r}")
                if node.name in seen:
                    raise TermError(f"duplicate vertex name {node.name!r}")
                seen.add(node.name)
                labels |= bit(node.label)
            elif isinstance(node, Add):
                _check_label(node.a, "add")
                _check_label(node.b, "add")
                if node.a >= node.b:
                    raise TermError(f"add needs a < b, got {node.a} {node.b}")
                labels |= bit(node.a) | bit(node.b)
            elif isinstance(node, Relab):
                _check_label(node.a, "rel")
                _check_label(node.b, "rel")
                labels |= bit(node.a) | bit(node.b)
            elif not isinstance(node, Union):
                raise TermError(f"unknown node {node!r}")
        self.label_mask: int = labels
        self.vertex_names: tuple = tuple(n.name for n in self.nodes if isinstance(n, Vertex))

    # --- addressing -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def root_index(self) -> int:
        return len(self.nodes) - 1

    def index(self, pos: Position) -> int:
        try:
            return self._index[tuple(pos)]
        except KeyError:
            raise TermError(f"no position {format_position(tuple(pos))}") from None

    def node_at(self, pos: Position) -> Node:
        return self.nodes[self.index(pos)]

    def subterm(self, pos: Position) -> "Term":
        return Term(self.node_at(pos))

    def subtree_indices(self, i: int) -> range:
        """Flat indices of the subterm rooted at index ``i`` (a contiguous block)."""
        return range(i - self._sizes[i] + 1, i + 1)

    def vertex_names_under(self, i: int) -> list:
        return [self.nodes[j].name for j in self.subtree_indices(i) if isinstance(self.nodes[j], Vertex)]

    # --- value semantics --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Term):
            return NotImplemented
        return len(self) == len(other) and self.to_text() == other.to_text()

    def __hash__(self) -> int:
        return hash(self.to_text())

    def __repr__(self) -> str:
        text = self.to_text()
        if len(text) > 80:
            text = text[:77] + "..."
        return f"Term({text})"

    def to_text(self) -> str:
        out: list = []
        for node, ks in zip(self.nodes, self.kids):
            if isinstance(node, Vertex):
                out.append(f"(v {node.label} {node.name})")
            elif isinstance(node, Union):
                out.append(f"(u {out[ks[0]]} {out[ks[1]]})")
            elif isinstance(node, Add):
                out.append(f"(add {node.a} {node.b} {out[ks[0]]})")
            else:
                out.append(f"(rel {node.a} {node.b} {out[ks[0]]})")
        return out[-1]

    def __str__(self) -> str:
        return self.to_text()


# --- parsing ---------------------------------------------------------------

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_TOKEN = re.compile(r"\s+|;[^\n]*|(?P<tok>\(|\)|[^\s();]+)")
_KEYWORDS = {"v", "u", "add", "rel"}


def _tokens(text: str) -> list:
    toks = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:  # pragma: no cover - the pattern matches any character class
            raise TermError("unexpected character", i, text)
        if m.group("tok") is not None:
            toks.append((m.group("tok"), m.start()))
        i = m.end()
    return toks


def _label(tok: tuple, text: str) -> int:
    value, off = tok
    if not value.isdigit():
        raise TermError(f"expected a label, got {value!r}", off, text)
    label = int(value)
    if not 1 <= label <= MAX_LABEL:
        raise TermError(f"label {label} outside 1..{MAX_LABEL}", off, text)
    return label


def parse_term(text: str) -> Term:
    """Parse the S-expression form of a term.

    Raises TermError with a line/column for syntax errors, duplicate names,
    labels outside 1..64 and ``add`` with equal labels.
    """
    toks = _tokens(text)
    if not toks:
        raise TermError("empty input")
    # frames: [keyword, offset, header args, child nodes]
    stack: list = []
    result = None
    i = 0
    while i < len(toks):
        value, off = toks[i]
        if result is not None:
            raise TermError(f"trailing input {value!r}", off, text)
        if value == "(":
            if i + 1 >= len(toks):
                raise TermError("unexpected end of input", len(text), text)
            kw, kw_off = toks[i + 1]
            if kw not in _KEYWORDS:
                raise TermError(f"unknown operator {kw!r}", kw_off, text)
            i += 2
            if kw == "v":
                if i + 2 >= len(toks):
                    raise TermError("unexpected end of input", len(text), text)
                label = _label(toks[i], text)
                name, name_off = toks[i + 1]
                if not _NAME.fullmatch(name):
                    raise TermError(f"invalid vertex name {name!r}", name_off, text)
                if toks[i + 2][0] != ")":
                    raise TermError("expected ')' after vertex", toks[i + 2][1], text)
                i += 3
                node = Vertex(label, name)
                if stack:
                    stack[-1][3].append(node)
                else:
                    result = node
                continue
            header: tuple = ()
            if kw in ("add", "rel"):
                if i + 1 >= len(toks):
                    raise TermError("unexpected end of input", len(text), text)
                a, b = _label(toks[i], text), _label(toks[i + 1], text)
                if kw == "add" and a == b:
                    raise TermError(f"add with equal labels {a}", toks[i][1], text)
                header = (a, b)
                i += 2
            stack.append([kw, off, header, []])
            continue
        if value == ")":
            if not stack:
                raise TermError("unbalanced ')'", off, text)
            kw, kw_off, header, kids = stack.pop()
            if kw == "u":
                if len(kids) < 2:
                    raise TermError("union needs at least two terms", kw_off, text)
                node = kids[0]
                for other in kids[1:]:
                    node = Union(node, other)
            else:
                if len(kids) != 1:
                    raise TermError(f"{kw} takes exactly one term", kw_off, text)
                a, b = header
                if kw == "add":
                    node = Add(min(a, b), max(a, b), kids[0])
                else:
                    node = Relab(a, b, kids[0])
            if stack:
                stack[-1][3].append(node)
            else:
                result = node
            i += 1
            continue
        raise TermError(f"unexpected token {value!r}", off, text)
    if stack or result is None:
        raise TermError("unexpected end of input", len(text), text)
    return Term(result)


# --- derived quantities ----------------------------------------------------

def width(t: Term) -> int:
    return bin(t.label_mask).count("1")


def positions(t: Term) -> list:
    """All positions in post-order (children before parents)."""
    return list(t.pos)


@dataclass
class LabeledGraph:
    vertices: list  # [(name, final label)]
    edges: set = field(default_factory=set)  # {(name1, name2)} with name1 < name2

    @property
    def names(self) -> list:
        return [name for name, _ in self.vertices]

    def adjacency(self) -> dict:
        adj: dict = {name: set() for name, _ in self.vertices}
        for x, y in self.edges:
            adj[x].add(y)
            adj[y].add(x)
        return adj

    def export(self) -> str:
        lines = [f"p {len(self.vertices)} {len(self.edges)}"]
        lines.extend(f"{x} {y}" for x, y in sorted(self.edges))
        return "\n".join(lines) + "\n"


def edge(x: str, y: str) -> tuple:
    return (x, y) if x < y else (y, x)


def evaluate_graph(t: Term) -> LabeledGraph:
    """Evaluate the term bottom-up into its labelled graph."""
    classes: list = []  # per index: {label: [names]}, consumed by the parent
    edges: set = set()
    for node, ks in zip(t.nodes, t.kids):
        if isinstance(node, Vertex):
            cls = {node.label: [node.name]}
        elif isinstance(node, Union):
            left, right = classes[ks[0]], classes[ks[1]]
            if len(left) < len(right):
                left, right = right, left
            for label, names in right.items():
                left.setdefault(label, []).extend(names)
            cls = left
        elif isinstance(node, Add):
            cls = classes[ks[0]]
            for x in cls.get(node.a, ()):
                for y in cls.get(node.b, ()):
                    edges.add(edge(x, y))
        else:
            cls = classes[ks[0]]
            if node.a != node.b and node.a in cls:
                cls.setdefault(node.b, []).extend(cls.pop(node.a))
        for k in ks:
            classes[k] = None
        classes.append(cls)
    final = {name: label for label, names in classes[-1].items() for name in names}
    return LabeledGraph([(name, final[name]) for name in t.vertex_names], edges)
