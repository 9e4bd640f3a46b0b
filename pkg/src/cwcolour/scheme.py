"""Schemes: canonical multisets of label sets.

A scheme is a tuple of ``(mask, multiplicity)`` pairs, strictly increasing by
mask, with every multiplicity positive. Multiplicities sum to the number of
colours ``c``, which is not stored. Because the representation is canonical,
plain tuple equality and hashing identify equal schemes, and a ``set`` of
schemes is a deduplicated scheme set.
"""
from __future__ import annotations

import re
from typing import Iterable, Optional

from .labels import bit, iter_labels, labels_of, mask_of, relabel_mask

Scheme = tuple  # tuple[tuple[int, int], ...]
SchemeSet = frozenset

MASK_LIMIT = 1 << 64
MULT_LIMIT = 1 << 64


class SchemeError(ValueError):
    pass


def canonical(entries: Iterable) -> Scheme:
    """Merge ``(mask, multiplicity)`` pairs into canonical form."""
    acc: dict = {}
    for mask, mult in entries:
        if mult:
            acc[mask] = acc.get(mask, 0) + mult
    return tuple(sorted((m, k) for m, k in acc.items() if k))


def nullary_scheme(label: int, c: int) -> Scheme:
    """One colour on ``{label}``, ``c - 1`` unused colours."""
    if c < 1:
        raise SchemeError("need at least one colour")
    if c == 1:
        return ((bit(label), 1),)
    return ((0, c - 1), (bit(label), 1))


def multiplicity(s: Scheme, element: int) -> int:
    for mask, mult in s:
        if mask == element:
            return mult
    return 0


def total(s: Scheme) -> int:
    return sum(mult for _, mult in s)


def used_labels(s: Scheme) -> int:
    m = 0
    for mask, _ in s:
        m |= mask
    return m


def weight(s: Scheme) -> int:
    return sum(mult * (1 + bin(mask).count("1")) for mask, mult in s)


def relabel(s: Scheme, a: int, b: int) -> Scheme:
    if a == b:
        return s
    ba = bit(a)
    if not any(mask & ba for mask, _ in s):
        return s
    return canonical((relabel_mask(mask, a, b), mult) for mask, mult in s)


def project(s: Scheme, keep: int) -> Scheme:
    if all(mask & ~keep == 0 for mask, _ in s):
        return s
    return canonical((mask & keep, mult) for mask, mult in s)


def saturated(s: Scheme, label_mask: int) -> int:
    """Labels of ``label_mask`` that occur in every element of ``s``."""
    common = label_mask
    for mask, _ in s:
        common &= mask
    return common


def _move(s: Scheme, src: int, dst: int) -> Scheme:
    out = []
    placed = False
    for mask, mult in s:
        if mask == src:
            mult -= 1
            if not mult:
                continue
        if not placed and mask >= dst:
            if mask == dst:
                out.append((mask, mult + 1))
                placed = True
                continue
            out.append((dst, 1))
            placed = True
        out.append((mask, mult))
    if not placed:
        out.append((dst, 1))
    return tuple(out)


def single_step(s: Scheme, element: int, label: int) -> Optional[Scheme]:
    """Move one unit from ``element`` to ``element | {label}``.

    Returns None when the step is not allowed: the element is absent, already
    contains the label, or afterwards every element would contain the label.
    """
    lb = bit(label)
    if element & lb:
        return None
    lacking = 0
    present = False
    for mask, mult in s:
        if not mask & lb:
            lacking += mult
        if mask == element:
            present = True
    if not present or lacking < 2:
        return None
    return _move(s, element, element | lb)


def successors(s: Scheme, allowed: int):
    """Yield ``(element, label, scheme)`` for every accepted single step with label in ``allowed``."""
    lacking: dict = {}
    for a in iter_labels(allowed):
        lb = 1 << (a - 1)
        lacking[a] = sum(mult for mask, mult in s if not mask & lb)
    for mask, _ in s:
        for a, lack in lacking.items():
            if lack >= 2 and not mask & (1 << (a - 1)):
                yield mask, a, _move(s, mask, mask | (1 << (a - 1)))


def closure(schemes: Iterable, target: int, parents: Optional[dict] = None) -> set:
    """All overapproximations of ``schemes`` whose used labels are exactly ``target``.

    Missing labels are first added one at a time in ascending order (every
    insertion point explored), then the result is closed under single steps
    within ``target``. If ``parents`` is given it receives, for every visited
    scheme, its first justification ``(parent, element, label)`` or None for
    an input scheme.
    """
    visited: dict = {} if parents is None else parents
    out: set = set()
    stack: list = []
    for s in schemes:
        if used_labels(s) & ~target:
            raise SchemeError("scheme uses labels outside the closure target")
        if s in visited:
            continue
        visited[s] = None
        frontier = [s]
        for a in iter_labels(target & ~used_labels(s)):
            nxt = []
            for x in frontier:
                for mask, _ in x:
                    y = single_step(x, mask, a)
                    if y is not None and y not in visited:
                        visited[y] = (x, mask, a)
                        nxt.append(y)
            frontier = nxt
        stack.extend(frontier)
    while stack:
        s = stack.pop()
        out.add(s)
        for mask, a, y in successors(s, target):
            if y not in visited:
                visited[y] = (s, mask, a)
                stack.append(y)
    return out


def trace(parents: dict, s: Scheme) -> tuple:
    """Follow first justifications back to an input scheme.

    Returns ``(root, steps)`` where applying ``steps`` (``(element, label)``
    pairs) to ``root`` in order reproduces ``s``.
    """
    steps = []
    while True:
        why = parents[s]
        if why is None:
            break
        s, mask, a = why
        steps.append((mask, a))
    steps.reverse()
    return s, steps


# --- encodings ---------------------------------------------------------------

def _varint(n: int) -> bytes:
    out = bytearray()
    while True:
        low = n & 0x7F
        n >>= 7
        if n:
            out.append(low | 0x80)
        else:
            out.append(low)
            return bytes(out)


def _read_varint(data: bytes, i: int) -> tuple:
    shift = 0
    value = 0
    start = i
    while True:
        if i >= len(data):
            raise SchemeError("truncated varint")
        byte = data[i]
        i += 1
        value |= (byte & 0x7F) << shift
        if not byte & 0x80:
            break
        shift += 7
        if shift > 63:
            raise SchemeError("varint too long")
    if i - start > 1 and data[i - 1] == 0:
        raise SchemeError("non-minimal varint")
    return value, i


def encode(s: Scheme) -> bytes:
    parts = [_varint(len(s))]
    for mask, mult in s:
        parts.append(mask.to_bytes(8, "big"))
        parts.append(_varint(mult))
    return b"".join(parts)


def decode(data: bytes) -> Scheme:
    count, i = _read_varint(data, 0)
    out = []
    prev = -1
    for _ in range(count):
        if i + 8 > len(data):
            raise SchemeError("truncated element")
        mask = int.from_bytes(data[i:i + 8], "big")
        i += 8
        mult, i = _read_varint(data, i)
        if mult == 0:
            raise SchemeError("zero multiplicity")
        if mask <= prev:
            raise SchemeError("elements not strictly increasing")
        prev = mask
        out.append((mask, mult))
    if i != len(data):
        raise SchemeError("trailing bytes")
    return tuple(out)


def render(s: Scheme) -> str:
    parts = []
    for mask, mult in s:
        body = "{" + ",".join(map(str, labels_of(mask))) + "}"
        parts.append(body if mult == 1 else f"{mult}:{body}")
    return "{" + ",".join(parts) + "}"


_ENTRY = re.compile(r"\s*(?:(\d+)\s*:\s*)?\{\s*([\d\s,]*)\}\s*")


def parse_scheme(text: str) -> Scheme:
    """Parse the rendering ``{2:{1,2},{2,3},3:{}}`` (entries in any order)."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise SchemeError(f"bad scheme {text!r}")
    body = text[1:-1].strip()
    entries = []
    i = 0
    while i < len(body):
        m = _ENTRY.match(body, i)
        if m is None:
            raise SchemeError(f"bad scheme entry in {text!r}")
        mult = int(m.group(1)) if m.group(1) else 1
        labels = [int(x) for x in re.split(r"[\s,]+", m.group(2).strip()) if x]
        entries.append((mask_of(labels), mult))
        i = m.end()
        if i < len(body):
            if body[i] != ",":
                raise SchemeError(f"expected ',' in {text!r}")
            i += 1
    return canonical(entries)
