"""Bitmask encoding for subsets of the ground set {0, .., n-1}.

A subset is an int whose bit e is set iff element e is in the subset.
Set equality is encoding equality, so masks work as dict keys and sort
deterministically.  Python ints are unbounded, so nothing here caps n.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

# An element set is just an int used as a bit vector.
ElementSet = int


def as_mask(s: ElementSet | Iterable[int]) -> int:
    """Coerce an int mask, or any iterable of elements, to a mask."""
    if isinstance(s, int):
        if s < 0:
            raise ValueError("element-set masks are non-negative")
        return s
    mask = 0
    for e in s:
        if not isinstance(e, int) or e < 0:
            raise ValueError("elements are non-negative integers")
        mask |= 1 << e
    return mask


def iter_elements(mask: int) -> Iterator[int]:
    """Yield the elements of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def elements(mask: int) -> tuple[int, ...]:
    return tuple(iter_elements(mask))


def lowest_element(mask: int) -> int:
    if not mask:
        raise ValueError("the empty set has no lowest element")
    return (mask & -mask).bit_length() - 1


def subset_masks(n: int, r: int) -> Iterator[int]:
    """All r-element subsets of {0, .., n-1} as masks."""
    if r < 0:
        return
    for combo in combinations(range(n), r):
        m = 0
        for e in combo:
            m |= 1 << e
        yield m


def format_set(mask: int) -> str:
    """Comma-joined ascending elements; '-' for the empty set."""
    if not mask:
        return "-"
    return ",".join(str(e) for e in iter_elements(mask))
