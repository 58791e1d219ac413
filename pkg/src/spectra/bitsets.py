"""Subsets of small ground sets as bitmasks.

Elements are 1-indexed in user-facing lists (JSON, CLI); bit ``k`` of a
mask stands for element ``k + 1``.  Ground sets are capped at 16 elements
so full ``2**n`` enumerations stay cheap.
"""

from __future__ import annotations

from typing import Iterable, Iterator

GROUND_SET_LIMIT = 16


def mask_from_elements(elements: Iterable[int], n: int | None = None) -> int:
    """Build a mask from 1-indexed element numbers."""
    mask = 0
    for e in elements:
        if e < 1 or (n is not None and e > n):
            raise ValueError(f"element {e} outside ground set")
        mask |= 1 << (e - 1)
    return mask


def elements_from_mask(mask: int) -> list[int]:
    """1-indexed, ascending element list of a mask."""
    return [k + 1 for k in iter_bits(mask)]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def subsets(n: int) -> range:
    """All masks over an n-element ground set."""
    return range(1 << n)
