"""Core matroid objects.

A sparse paving matroid of rank r on ground set {0, .., n-1} is stored
by its list of designated dependent r-sets: every r-subset of the
ground set is a basis unless it appears in `chset`.  Validity requires
the designated sets to have pairwise symmetric difference at least 4
and to leave at least one basis.

An ExplicitMatroid lists its bases outright and is only used for
cross-checking and for small conversions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable

from .bitset import ElementSet, as_mask, format_set, iter_elements, subset_masks
from .errors import (
    DistanceViolation,
    ElementOutOfRange,
    EmptyBases,
    ExchangeViolation,
    NoBasis,
    NotACircuitHyperplane,
    NotBases,
    PreconditionViolated,
    RangeError,
    RankOutOfRange,
    SizeMismatch,
    TooLarge,
)


@dataclass(frozen=True)
class SparsePavingMatroid:
    n: int
    r: int
    chset: tuple[int, ...]
    _index: frozenset = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, r: int, chset: Iterable[ElementSet] = ()) -> None:
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "r", int(r))
        canon = tuple(sorted({as_mask(h) for h in chset}))
        object.__setattr__(self, "chset", canon)
        object.__setattr__(self, "_index", frozenset(canon))

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    @property
    def basis_count(self) -> int:
        return comb(self.n, self.r) - len(self.chset)

    def __repr__(self) -> str:
        body = "; ".join(format_set(h) for h in self.chset)
        return f"SparsePavingMatroid(n={self.n}, r={self.r}, chset=[{body}])"


@dataclass(frozen=True)
class ExplicitMatroid:
    n: int
    r: int
    bases: frozenset

    def __init__(self, n: int, r: int, bases: Iterable[ElementSet]) -> None:
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "r", int(r))
        object.__setattr__(self, "bases", frozenset(as_mask(b) for b in bases))

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def __repr__(self) -> str:
        return f"ExplicitMatroid(n={self.n}, r={self.r}, {len(self.bases)} bases)"


def _check_subset(m_n: int, s: int, what: str = "set") -> None:
    if s < 0 or s >> m_n:
        raise ElementOutOfRange(f"{what} {format_set(s)} is not inside 0..{m_n - 1}")


def validate(m: SparsePavingMatroid) -> None:
    """Raise a ValidationError subclass if m is not well formed.

    The pairwise separation check is exact but avoids the quadratic
    pair scan: two r-sets at symmetric difference 2 share an (r-1)-set,
    so hashing every (r-1)-subset of every designated set finds all
    close pairs in O(len(chset) * r).
    """
    if m.n < 0:
        raise RangeError(f"ground size {m.n} is negative")
    if not 0 <= m.r <= m.n:
        raise RankOutOfRange(f"rank {m.r} not in 0..{m.n}")
    for h in m.chset:
        _check_subset(m.n, h, "designated set")
        if h.bit_count() != m.r:
            raise SizeMismatch(
                f"designated set {format_set(h)} has size {h.bit_count()}, expected {m.r}"
            )
    seen: dict[int, int] = {}
    for h in m.chset:
        for e in iter_elements(h):
            key = h ^ (1 << e)
            other = seen.get(key)
            if other is not None and other != h:
                raise DistanceViolation(
                    f"designated sets {format_set(other)} and {format_set(h)} "
                    "are at symmetric difference 2"
                )
            seen[key] = h
    if len(m.chset) == comb(m.n, m.r):
        raise NoBasis(f"all {len(m.chset)} r-subsets are designated dependent")


def is_basis(m: SparsePavingMatroid, s: ElementSet) -> bool:
    s = as_mask(s)
    _check_subset(m.n, s)
    return s.bit_count() == m.r and s not in m._index


def basis_predicate(m) -> tuple[Callable[[int], bool], int, int]:
    """Basis membership test plus (n, r), for either representation.

    The returned predicate takes a mask and does no range checking;
    callers that accept untrusted masks must validate them first.
    """
    if isinstance(m, SparsePavingMatroid):
        idx = m._index
        r = m.r
        return (lambda s: s.bit_count() == r and s not in idx), m.n, m.r
    if isinstance(m, ExplicitMatroid):
        bases = m.bases
        return (lambda s: s in bases), m.n, m.r
    raise TypeError(f"expected a matroid, got {type(m).__name__}")


def rank_of(m: SparsePavingMatroid, s: ElementSet) -> int:
    s = as_mask(s)
    _check_subset(m.n, s)
    k = s.bit_count()
    if k < m.r:
        return k
    if k == m.r and s in m._index:
        return m.r - 1
    return m.r


def closure_of(m: SparsePavingMatroid, s: ElementSet) -> int:
    """Largest superset of s with the same rank.

    Sets of size below r-1 are closed; an (r-1)-set picks up at most
    one completion (two completions would sit at symmetric difference
    2); designated dependent r-sets are closed; anything of full rank
    closes to the ground set.
    """
    s = as_mask(s)
    _check_subset(m.n, s)
    k = s.bit_count()
    if k <= m.r - 2:
        return s
    if k == m.r - 1:
        rest = m.ground & ~s
        for e in iter_elements(rest):
            if (s | (1 << e)) in m._index:
                return s | (1 << e)
        return s
    if k == m.r and s in m._index:
        return s
    return m.ground


def dual(m: SparsePavingMatroid) -> SparsePavingMatroid:
    """Complement every designated set; separation is preserved."""
    g = m.ground
    return SparsePavingMatroid(m.n, m.n - m.r, tuple(g ^ h for h in m.chset))


def uniform(n: int, r: int) -> SparsePavingMatroid:
    if n < 0:
        raise RangeError(f"ground size {n} is negative")
    if not 0 <= r <= n:
        raise RankOutOfRange(f"rank {r} not in 0..{n}")
    return SparsePavingMatroid(n, r, ())


def relax(m: SparsePavingMatroid, h: ElementSet) -> SparsePavingMatroid:
    """Turn one designated dependent set back into a basis."""
    h = as_mask(h)
    _check_subset(m.n, h)
    if h not in m._index:
        raise NotACircuitHyperplane(f"{format_set(h)} is not a designated set of m")
    return SparsePavingMatroid(m.n, m.r, tuple(k for k in m.chset if k != h))


def _drop_element(mask: int, e: int) -> int:
    """Remove bit e and shift higher bits down one position."""
    low = mask & ((1 << e) - 1)
    return low | ((mask >> (e + 1)) << e)


def minor(
    m: SparsePavingMatroid, kind: str, e: int
) -> tuple[SparsePavingMatroid, tuple[int, ...]]:
    """Single-element deletion or contraction.

    Returns the minor together with a label map: entry i is the old
    label of new element i.  The class is closed under both operations;
    the rank only moves in the degenerate directions (deleting an
    element present in every basis, contracting one present in none).
    """
    if kind not in ("delete", "contract"):
        raise PreconditionViolated(f"kind must be 'delete' or 'contract', got {kind!r}")
    if not 0 <= e < m.n:
        raise ElementOutOfRange(f"element {e} not in 0..{m.n - 1}")
    bit = 1 << e
    having = [h for h in m.chset if h & bit]
    avoiding = [h for h in m.chset if not h & bit]
    label_map = tuple(x for x in range(m.n) if x != e)
    if kind == "delete":
        if len(avoiding) == comb(m.n - 1, m.r):
            # e sits in every basis: the deletion is uniform of rank r-1
            out = SparsePavingMatroid(m.n - 1, m.r - 1, ())
        else:
            out = SparsePavingMatroid(
                m.n - 1, m.r, tuple(_drop_element(h, e) for h in avoiding)
            )
    else:
        if m.r == 0 or len(having) == comb(m.n - 1, m.r - 1):
            # e sits in no basis: contraction and deletion agree
            out = SparsePavingMatroid(
                m.n - 1, m.r, tuple(_drop_element(h, e) for h in avoiding)
            )
        else:
            out = SparsePavingMatroid(
                m.n - 1, m.r - 1, tuple(_drop_element(h, e) for h in having)
            )
    return out, label_map


def swap_witnesses(
    m: SparsePavingMatroid,
    b1: ElementSet,
    b2: ElementSet,
    x: int,
    candidates: ElementSet,
) -> int:
    """Elements y of `candidates` completing a two-sided exchange.

    Both b1 - x + y and b2 - y + x must be bases.  x must come from
    b1 - b2 and candidates must sit inside b2 - b1.
    """
    b1 = as_mask(b1)
    b2 = as_mask(b2)
    cand = as_mask(candidates)
    for b in (b1, b2):
        _check_subset(m.n, b)
        if not is_basis(m, b):
            raise NotBases(f"{format_set(b)} is not a basis")
    if not 0 <= x < m.n:
        raise ElementOutOfRange(f"element {x} not in 0..{m.n - 1}")
    xb = 1 << x
    if not (b1 & xb) or (b2 & xb):
        raise PreconditionViolated(f"element {x} is not in b1 - b2")
    if cand & ~(b2 & ~b1):
        raise PreconditionViolated("candidates must be a subset of b2 - b1")
    out = 0
    idx = m._index
    for y in iter_elements(cand):
        yb = 1 << y
        if ((b1 ^ xb) | yb) not in idx and ((b2 ^ yb) | xb) not in idx:
            out |= yb
    return out


def to_explicit(m: SparsePavingMatroid, cap: int = 10_000_000) -> ExplicitMatroid:
    total = comb(m.n, m.r)
    if total > cap:
        raise TooLarge(f"{total} bases exceed the explicit cap {cap}")
    idx = m._index
    return ExplicitMatroid(
        m.n, m.r, (s for s in subset_masks(m.n, m.r) if s not in idx)
    )


# -- explicit-form operations -------------------------------------------------


def explicit_validate(em: ExplicitMatroid) -> None:
    """Check the basis family directly, including the exchange axiom."""
    if em.n < 0:
        raise RangeError(f"ground size {em.n} is negative")
    if not 0 <= em.r <= em.n:
        raise RankOutOfRange(f"rank {em.r} not in 0..{em.n}")
    if not em.bases:
        raise EmptyBases("a matroid needs at least one basis")
    for b in em.bases:
        _check_subset(em.n, b, "basis")
        if b.bit_count() != em.r:
            raise SizeMismatch(
                f"basis {format_set(b)} has size {b.bit_count()}, expected {em.r}"
            )
    for a in em.bases:
        for b in em.bases:
            for x in iter_elements(a & ~b):
                xa = a ^ (1 << x)
                if all((xa | (1 << y)) not in em.bases for y in iter_elements(b & ~a)):
                    raise ExchangeViolation(
                        f"no exchange for {x} out of {format_set(a)} "
                        f"toward {format_set(b)}"
                    )


def explicit_rank(em: ExplicitMatroid, s: ElementSet) -> int:
    s = as_mask(s)
    _check_subset(em.n, s)
    return max((s & b).bit_count() for b in em.bases)


def explicit_closure(em: ExplicitMatroid, s: ElementSet) -> int:
    s = as_mask(s)
    _check_subset(em.n, s)
    rk = explicit_rank(em, s)
    out = s
    for e in iter_elements(em.ground & ~s):
        if explicit_rank(em, s | (1 << e)) == rk:
            out |= 1 << e
    return out


def explicit_minor(
    em: ExplicitMatroid, kind: str, e: int
) -> tuple[ExplicitMatroid, tuple[int, ...]]:
    if kind not in ("delete", "contract"):
        raise PreconditionViolated(f"kind must be 'delete' or 'contract', got {kind!r}")
    if not 0 <= e < em.n:
        raise ElementOutOfRange(f"element {e} not in 0..{em.n - 1}")
    bit = 1 << e
    label_map = tuple(x for x in range(em.n) if x != e)
    if kind == "delete":
        keep = [b for b in em.bases if not b & bit]
        if keep:
            out = ExplicitMatroid(em.n - 1, em.r, (_drop_element(b, e) for b in keep))
        else:
            out = ExplicitMatroid(
                em.n - 1, em.r - 1, (_drop_element(b ^ bit, e) for b in em.bases)
            )
    else:
        cont = [b ^ bit for b in em.bases if b & bit]
        if cont:
            out = ExplicitMatroid(em.n - 1, em.r - 1, (_drop_element(b, e) for b in cont))
        else:
            out = ExplicitMatroid(
                em.n - 1, em.r, (_drop_element(b, e) for b in em.bases)
            )
    return out, label_map
