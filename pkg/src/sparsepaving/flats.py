"""Cyclic flats and the extremal counts they admit.

A flat is cyclic when its restriction has no coloops, i.e. removing
any single element does not drop its rank.  For a sparse paving
matroid with rank and corank at least two these are exactly the empty
set, the full ground set, and the designated dependent r-sets, which
makes the count easy to certify: constructions with many designated
sets give lower bounds on the maximum number of cyclic flats any
matroid on n elements can have, and a packing argument gives the
2^{n+1}/(n+2) upper bound recorded here alongside the constructive
2^{n-1}/n^{3/2} + 2 lower bound.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from math import comb, isqrt

from .bitset import ElementSet, iter_elements
from .core import (
    ExplicitMatroid,
    SparsePavingMatroid,
    closure_of,
    explicit_closure,
    explicit_rank,
    rank_of,
)
from .errors import InternalCheckError, PreconditionViolated, RangeError, TooLarge
from .construct import gs_best_class
from .parallel import pmap


def cyclic_flats_of(m) -> list[ElementSet]:
    """All flats whose restriction is coloop-free, as sorted masks.

    Sparse paving fast path needs rank and corank at least 2: smaller
    flats always contain a coloop, spanning proper flats cannot be
    closed, and both degenerate directions break those facts, so they
    fall back to the definition scan.
    """
    if isinstance(m, SparsePavingMatroid) and m.r >= 2 and m.n - m.r >= 2:
        return [0, *m.chset, m.ground]
    if isinstance(m, SparsePavingMatroid):
        rank, clo = rank_of, closure_of
    elif isinstance(m, ExplicitMatroid):
        rank, clo = explicit_rank, explicit_closure
    else:
        raise TypeError(f"expected a matroid, got {type(m).__name__}")
    if m.n > 20:
        raise TooLarge(f"definition scan over 2^{m.n} subsets refused")
    out = []
    for f in range(1 << m.n):
        if clo(m, f) != f:
            continue
        rf = rank(m, f)
        if all(rank(m, f & ~(1 << e)) == rf for e in iter_elements(f)):
            out.append(f)
    return out


def flat_histogram(flats) -> dict[int, int]:
    """Size histogram a_i: how many of the given sets have i elements."""
    c = Counter(f.bit_count() for f in flats)
    return dict(sorted(c.items()))


@dataclass(frozen=True)
class BoundsReport:
    """Exact evaluations of the counting bounds at a given size.

    zn_upper bounds the number of cyclic flats of any matroid on n
    elements; zn_lower_int is the integer threshold some sparse paving
    matroid is guaranteed to reach (ceil of the radical expression,
    plus 2 for the trivial flats).  ch_upper bounds the number of
    designated dependent r-sets.  basis_count is a slot for reports
    about one concrete matroid.
    """

    n: int
    r: int | None
    zn_upper: Fraction
    zn_lower_int: int
    zn_lower_decimal: str
    zn_lower_radical: str
    ch_upper: Fraction | None
    basis_count: int | None = None


def bounds(n: int, r: int | None = None, basis_count: int | None = None) -> BoundsReport:
    if n < 1:
        raise PreconditionViolated(f"need n >= 1, got {n}")
    if r is not None and not 0 <= r <= n:
        raise PreconditionViolated(f"rank {r} not in 0..{n}")
    zn_upper = Fraction(1 << (n + 1), n + 2)
    # ceil(2^{n-1} / n^{3/2}) without floats: the smallest q with
    # q^2 * n^3 >= 2^{2(n-1)}
    t = 1 << (2 * (n - 1))
    n3 = n**3
    q = isqrt(t // n3)
    while q * q * n3 < t:
        q += 1
    with localcontext() as ctx:
        ctx.prec = 36
        dec = Decimal(1 << (n - 1)) / Decimal(n) ** Decimal("1.5") + 2
    report = BoundsReport(
        n=n,
        r=r,
        zn_upper=zn_upper,
        zn_lower_int=q + 2,
        zn_lower_decimal=f"{dec:.12g}",
        zn_lower_radical=f"2^{n - 1}/{n}^(3/2) + 2",
        ch_upper=Fraction(comb(n, r), n - r + 1) if r is not None else None,
        basis_count=basis_count,
    )
    if 4 <= n <= 24:
        # sanity: the real lower bound sits below the upper bound here;
        # compare squares to keep the radical out of it
        d = zn_upper - 2
        if d <= 0 or Fraction(t, n3) > d * d:
            raise InternalCheckError(f"bound formulas crossed at n={n}")
    return report


@dataclass(frozen=True)
class CensusReport:
    n: int
    lower_bound: int
    best_rank: int
    best_class: int
    entries: tuple[tuple[int, int, int], ...]  # (rank, residue class, flat count)
    limits: BoundsReport
    gap_to_upper: Fraction


def _census_row(args: tuple[int, int]) -> tuple[int, int, int]:
    n, r = args
    c, size = gs_best_class(n, r)
    return (r, c, size + 2)  # plus the empty and full flats


def zn_census(n: int, jobs: int = 1) -> CensusReport:
    """Certified lower bound on the max cyclic-flat count at size n.

    Scans the residue-class construction over every rank in 2..n-2 and
    keeps the best; the result is guaranteed to land between the two
    closed-form bounds, and falling outside is a build defect.
    """
    if not 4 <= n <= 24:
        raise RangeError(f"census supported for 4 <= n <= 24, got {n}")
    rows = pmap(_census_row, [(n, r) for r in range(2, n - 1)], jobs)
    best = max(rows, key=lambda row: row[2])  # ties keep the smallest rank
    limits = bounds(n)
    lower = best[2]
    if not limits.zn_lower_int <= lower <= limits.zn_upper:
        raise InternalCheckError(
            f"census bound {lower} escapes [{limits.zn_lower_int}, {limits.zn_upper}]"
        )
    return CensusReport(
        n=n,
        lower_bound=lower,
        best_rank=best[0],
        best_class=best[1],
        entries=tuple(rows),
        limits=limits,
        gap_to_upper=limits.zn_upper - lower,
    )
