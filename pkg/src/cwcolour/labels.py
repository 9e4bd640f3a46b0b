"""Label sets as integer bitmasks; label ``l`` lives at bit ``l - 1``."""
from __future__ import annotations

from typing import Iterable, Iterator

LabelSet = int
EMPTY: LabelSet = 0


def bit(label: int) -> LabelSet:
    return 1 << (label - 1)


def mask_of(labels: Iterable[int]) -> LabelSet:
    m = 0
    for label in labels:
        m |= 1 << (label - 1)
    return m


def labels_of(mask: LabelSet) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return out


def iter_labels(mask: LabelSet) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


def size(mask: LabelSet) -> int:
    return bin(mask).count("1")


def relabel_mask(mask: LabelSet, a: int, b: int) -> LabelSet:
    """Replace label a by b in the set (no change when a is absent)."""
    ba = 1 << (a - 1)
    if mask & ba:
        return (mask & ~ba) | (1 << (b - 1))
    return mask


def render(mask: LabelSet) -> str:
    return "{" + ",".join(map(str, labels_of(mask))) + "}"
