"""Bitmask helpers for vertex sets.

Vertex sets throughout the package are plain Python ints used as bitmasks:
bit v set means vertex v is in the set.  This keeps set algebra (union,
intersection, difference, cardinality) down to single int operations and
makes every iteration order deterministic (ascending vertex index).
"""

from __future__ import annotations

from typing import Iterable, Iterator


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_list(mask: int) -> list[int]:
    return list(bits(mask))


def lowest(mask: int) -> int:
    """Index of the lowest set bit; mask must be nonzero."""
    return (mask & -mask).bit_length() - 1
