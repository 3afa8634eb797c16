"""Exchange walks between bases and between collections of bases.

Three graphs live here.  The pair graph has vertices (a1, a2, a3): an
ordered partition of the ground set whose first two blocks are disjoint
bases; two vertices are adjacent when one element swap between two
blocks turns one into the other.  The collection graphs have vertices
that are multisets (or tuples) of k bases with a prescribed multiset
union; adjacency is a symmetric exchange between two members.

All constructive routines lean on two facts about sparse paving
matroids: two dependent r-sets never differ in exactly two elements, so
at most one completion of an (r-1)-set is dependent, and the pruned
symmetric exchange bound (for bases B, B' with a fixed on one side and
X a set of candidates on the other, at most two members of X fail the
two-sided exchange).  Every step is re-verified with the basis
predicate before it is emitted; a failure raises InternalCheckError
because it would contradict those guarantees.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

from .bitset import ElementSet, as_mask, elements, format_set, iter_elements, subset_masks
from .core import basis_predicate
from .errors import (
    ElementOutOfRange,
    ExchangeViolation,
    InternalCheckError,
    NotAVertex,
    NotBases,
    NotDisjoint,
    PreconditionViolated,
    TooLarge,
    UnionMismatch,
)


class Move(NamedTuple):
    """Symmetric exchange between members i < j of a collection.

    Member i loses x and gains y; member j loses y and gains x.
    """

    i: int
    j: int
    x: int
    y: int


@dataclass(frozen=True)
class BasisPairVertex:
    a1: int
    a2: int
    a3: int

    def __repr__(self) -> str:
        return (
            f"({format_set(self.a1)} | {format_set(self.a2)} | {format_set(self.a3)})"
        )


@dataclass(frozen=True)
class Multiset:
    """Multiset of ground-set elements, stored as sorted (element, count) pairs."""

    counts: tuple[tuple[int, int], ...]

    def __init__(self, counts: Iterable[tuple[int, int]]) -> None:
        agg: Counter = Counter()
        for e, c in counts:
            if not isinstance(e, int) or e < 0:
                raise ElementOutOfRange(f"bad multiset element {e!r}")
            if c < 0:
                raise PreconditionViolated("negative multiplicity")
            agg[e] += c
        canon = tuple(sorted((e, c) for e, c in agg.items() if c > 0))
        object.__setattr__(self, "counts", canon)

    @classmethod
    def from_elements(cls, it: Iterable[int]) -> "Multiset":
        return cls((e, 1) for e in it)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def counter(self) -> Counter:
        return Counter(dict(self.counts))


_basis_pred = basis_predicate


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# -- basis pair graph ---------------------------------------------------------


def bpg_vertex(m, a1: ElementSet, a2: ElementSet, a3: ElementSet) -> BasisPairVertex:
    """Validated vertex constructor for the pair graph of m."""
    pred, n, _ = _basis_pred(m)
    a1, a2, a3 = as_mask(a1), as_mask(a2), as_mask(a3)
    ground = (1 << n) - 1
    for a in (a1, a2, a3):
        if a & ~ground:
            raise ElementOutOfRange(f"block {format_set(a)} leaves the ground set")
    if a1 & a2 or a1 & a3 or a2 & a3:
        raise NotDisjoint("vertex blocks must be pairwise disjoint")
    if a1 | a2 | a3 != ground:
        raise UnionMismatch("vertex blocks must cover the ground set")
    if not pred(a1):
        raise NotAVertex(f"first block {format_set(a1)} is not a basis")
    if not pred(a2):
        raise NotAVertex(f"second block {format_set(a2)} is not a basis")
    return BasisPairVertex(a1, a2, a3)


def bpg_adjacent(m, u: BasisPairVertex, v: BasisPairVertex) -> bool:
    """True when exactly one element pair is swapped between two blocks."""
    bpg_vertex(m, u.a1, u.a2, u.a3)
    bpg_vertex(m, v.a1, v.a2, v.a3)
    moved = (
        (u.a1 & ~v.a1).bit_count()
        + (u.a2 & ~v.a2).bit_count()
        + (u.a3 & ~v.a3).bit_count()
    )
    return moved == 2


def _disjoint_pair_path(
    pred: Callable[[int], bool],
    cur1: int,
    cur2: int,
    tgt1: int,
    tgt2: int,
) -> list[tuple[int, int]]:
    """Walk a disjoint basis pair to a target pair on the same ground.

    Every step swaps one element between the two blocks and keeps both
    blocks bases.  Returns the pairs after each step (start excluded).
    Progress per round: a pruned exchange while at least three elements
    are out of place, else one of four direct swaps, else the blocked
    two-by-two pattern pins four dependent sets and a two-step detour
    through a shared element works.
    """
    out: list[tuple[int, int]] = []
    while cur1 != tgt1:
        gap = cur1 & ~tgt1
        need = tgt1 & ~cur1  # sits inside cur2
        if gap.bit_count() == 1:
            # adjacent: the target itself is the final step
            cur1, cur2 = tgt1, tgt2
            out.append((cur1, cur2))
            continue
        if gap.bit_count() >= 3:
            x = _lowest(gap)
            for y in iter_elements(need):
                n1 = (cur1 ^ (1 << x)) | (1 << y)
                n2 = (cur2 ^ (1 << y)) | (1 << x)
                if pred(n1) and pred(n2):
                    break
            else:
                raise InternalCheckError("no pruned-exchange witness in pair walk")
            cur1, cur2 = n1, n2
            out.append((cur1, cur2))
            continue
        b1, b2 = elements(gap)
        a1, a2 = elements(need)
        hit = None
        for b, a in ((b1, a1), (b1, a2), (b2, a1), (b2, a2)):
            n1 = (cur1 ^ (1 << b)) | (1 << a)
            n2 = (cur2 ^ (1 << a)) | (1 << b)
            if pred(n1) and pred(n2):
                hit = (n1, n2)
                break
        if hit is not None:
            cur1, cur2 = hit
            out.append((cur1, cur2))
            continue
        # Blocked square.  One of the two sets (cur1 - b1) + a must be
        # dependent; anchoring on it forces the other three corners, and
        # a shared element exists because the pattern is impossible in
        # rank two.
        if not pred((cur1 ^ (1 << b1)) | (1 << a1)):
            pass
        elif not pred((cur1 ^ (1 << b1)) | (1 << a2)):
            a1, a2 = a2, a1
        else:
            raise InternalCheckError("blocked exchange square lost its anchor")
        common = cur1 & tgt1
        if not common:
            raise InternalCheckError("blocked exchange square in rank two")
        x = _lowest(common)
        for b, a in ((x, a1), (b2, a2)):
            n1 = (cur1 ^ (1 << b)) | (1 << a)
            n2 = (cur2 ^ (1 << a)) | (1 << b)
            if not (pred(n1) and pred(n2)):
                raise InternalCheckError("detour step left the basis family")
            cur1, cur2 = n1, n2
            out.append((cur1, cur2))
    return out


def bpg_path(m, u: BasisPairVertex, v: BasisPairVertex) -> list[BasisPairVertex]:
    """Constructive path from u to v in the pair graph, endpoints included.

    First the third blocks are aligned one swap at a time (with a
    two-step dodge when the final swap is blocked), then the two
    disjoint bases are walked onto the target pair.
    """
    pred, n, _ = _basis_pred(m)
    u = bpg_vertex(m, u.a1, u.a2, u.a3)
    v = bpg_vertex(m, v.a1, v.a2, v.a3)
    path = [u]
    cur1, cur2, cur3 = u.a1, u.a2, u.a3

    def emit(n1: int, n2: int, n3: int) -> None:
        nonlocal cur1, cur2, cur3
        cur1, cur2, cur3 = n1, n2, n3
        path.append(bpg_vertex(m, n1, n2, n3))

    while cur3 != v.a3:
        leave = cur3 & ~v.a3
        enter = v.a3 & ~cur3
        t1 = bool(enter & cur1)
        block = cur1 if t1 else cur2
        b = _lowest(enter & block)
        if leave.bit_count() >= 2:
            # at most one landing spot is a dependent completion
            for a3c in iter_elements(leave):
                nb = (block ^ (1 << b)) | (1 << a3c)
                if pred(nb):
                    break
            else:
                raise InternalCheckError("third-block alignment found no landing")
        else:
            a3c = _lowest(leave)
            nb = (block ^ (1 << b)) | (1 << a3c)
            if not pred(nb):
                # dodge: trade an element with the other basis block
                # first, stepping clear of the dependent completion
                other = cur2 if t1 else cur1
                found = False
                for a1c in iter_elements(block & ~(1 << b)):
                    for a2c in iter_elements(other):
                        m1 = (block ^ (1 << a1c)) | (1 << a2c)
                        m2 = (other ^ (1 << a2c)) | (1 << a1c)
                        if pred(m1) and pred(m2):
                            found = True
                            break
                    if found:
                        break
                if not found:
                    raise InternalCheckError("third-block dodge found no swap")
                if t1:
                    emit(m1, m2, cur3)
                else:
                    emit(m2, m1, cur3)
                block = m1
                nb = (block ^ (1 << b)) | (1 << a3c)
                if not pred(nb):
                    raise InternalCheckError("third-block dodge did not unblock")
        n3 = (cur3 ^ (1 << a3c)) | (1 << b)
        if t1:
            emit(nb, cur2, n3)
        else:
            emit(cur1, nb, n3)

    for n1, n2 in _disjoint_pair_path(pred, cur1, cur2, v.a1, v.a2):
        emit(n1, n2, cur3)
    return path


# -- collection moves ---------------------------------------------------------


def _apply_positions(m, members: list[int], move: Move) -> None:
    i, j, x, y = move
    if not (0 <= i < j < len(members)):
        raise ExchangeViolation(f"move indices ({i}, {j}) out of range")
    bi, bj = members[i], members[j]
    xb, yb = 1 << x, 1 << y
    if not bi & xb or bj & xb:
        raise ExchangeViolation(f"element {x} is not in member {i} only")
    if not bj & yb or bi & yb:
        raise ExchangeViolation(f"element {y} is not in member {j} only")
    pred, _, _ = _basis_pred(m)
    nbi = (bi ^ xb) | yb
    nbj = (bj ^ yb) | xb
    if not pred(nbi) or not pred(nbj):
        raise ExchangeViolation(f"move {i}:{j}:{x}:{y} does not map bases to bases")
    members[i], members[j] = nbi, nbj


def apply_white_move(m, state: Sequence[ElementSet], move: Move) -> tuple[int, ...]:
    """Apply one move to a multiset state in canonical (sorted) order."""
    members = sorted(as_mask(b) for b in state)
    _apply_positions(m, members, move)
    return tuple(sorted(members))


def apply_tuple_move(m, state: Sequence[ElementSet], move: Move) -> tuple[int, ...]:
    """Apply one move to an ordered state; positions are literal."""
    members = [as_mask(b) for b in state]
    _apply_positions(m, members, move)
    return tuple(members)


def _mk_move(state: tuple[int, ...], vi: int, vj: int, x: int, y: int) -> Move:
    """Move record between the members of state holding values vi and vj."""
    i = state.index(vi)
    j = state.index(vj)
    if i == j:
        j = state.index(vj, i + 1)
    if i > j:
        i, j, x, y = j, i, y, x
    return Move(i, j, x, y)


class _Side:
    """One endpoint's evolving multiset, with its move and state log."""

    def __init__(self, members: tuple[int, ...]):
        self.state = members
        self.moves: list[Move] = []
        self.history: list[tuple[int, ...]] = [members]

    def push(self, m, vi: int, vj: int, x: int, y: int) -> None:
        mv = _mk_move(self.state, vi, vj, x, y)
        self.state = apply_white_move(m, self.state, mv)
        self.moves.append(mv)
        self.history.append(self.state)


def _pick_helper(act: Counter, b1: int, amb: int, bma: int) -> int:
    # some member other than the b1 slot must be richer in amb than in
    # bma, because the side was chosen with the larger multiplicity mass
    # on amb and the b1 slot itself runs an amb deficit
    pool = act.copy()
    pool[b1] -= 1
    cands = [
        v
        for v, c in pool.items()
        if c > 0 and (v & amb).bit_count() > (v & bma).bit_count()
    ]
    if not cands:
        raise InternalCheckError("no member is richer in the target difference")
    return min(cands)


def _advance(m, a1_mask: int, b1: int, side: _Side, matched: Counter) -> None:
    """One improvement round: bring the member b1 of `side` nearer a1_mask.

    The helper member b2 holds more of a1 - b1 than of b1 - a1.  Case
    split on half the symmetric difference: pruned exchanges handle
    three or more, direct or anchored double steps handle two, and for
    one a chain either finishes outright or fixes interfering members
    one exchange at a time, strictly shrinking their number.
    """
    pred, n, r = _basis_pred(m)
    act = Counter(side.state) - matched
    amb = a1_mask & ~b1
    bma = b1 & ~a1_mask
    half = amb.bit_count()

    if half >= 3:
        b2 = _pick_helper(act, b1, amb, bma)
        p = (b2 & amb).bit_count()
        q = (b2 & bma).bit_count()
        if q == 0:
            a = _lowest(b2 & amb)
            for bh in iter_elements(bma):
                if pred((b1 ^ (1 << bh)) | (1 << a)) and pred(
                    (b2 ^ (1 << a)) | (1 << bh)
                ):
                    side.push(m, b1, b2, bh, a)
                    return
            raise InternalCheckError("pruned exchange failed with no overlap")
        if p >= 3:
            bh = _lowest(bma & ~b2)
            for a in iter_elements(b2 & amb):
                if pred((b1 ^ (1 << bh)) | (1 << a)) and pred(
                    (b2 ^ (1 << a)) | (1 << bh)
                ):
                    side.push(m, b1, b2, bh, a)
                    return
            raise InternalCheckError("pruned exchange failed on a rich helper")
        # p = 2, q = 1
        a1c, a2c = elements(b2 & amb)
        rest = bma & ~b2
        b1c = _lowest(rest)
        b2c = _lowest(rest ^ (1 << b1c))
        for bh, a in ((b1c, a1c), (b1c, a2c), (b2c, a1c), (b2c, a2c)):
            if pred((b1 ^ (1 << bh)) | (1 << a)) and pred(
                (b2 ^ (1 << a)) | (1 << bh)
            ):
                side.push(m, b1, b2, bh, a)
                return
        if not pred((b1 ^ (1 << b1c)) | (1 << a1c)):
            pass
        elif not pred((b1 ^ (1 << b1c)) | (1 << a2c)):
            a1c, a2c = a2c, a1c
        else:
            raise InternalCheckError("blocked square lost its anchor")
        spare = b2 & ~(a1_mask | b1)
        if not spare:
            raise InternalCheckError("anchored case needs an outside element")
        y = _lowest(spare)
        side.push(m, b1, b2, b1c, y)
        nb1 = (b1 ^ (1 << b1c)) | (1 << y)
        nb2 = (b2 ^ (1 << y)) | (1 << b1c)
        side.push(m, nb1, nb2, b2c, a1c)
        return

    if half == 2:
        b2 = _pick_helper(act, b1, amb, bma)
        a1c, a2c = elements(amb)
        b1c, b2c = elements(bma)
        q0 = b2 & bma
        if q0 == 0:
            a = _lowest(b2 & amb)
            for bh in (b1c, b2c):
                if pred((b1 ^ (1 << bh)) | (1 << a)) and pred(
                    (b2 ^ (1 << a)) | (1 << bh)
                ):
                    side.push(m, b1, b2, bh, a)
                    return
            # anchor on the blocked (b1 - b) + a completion, relabeling
            # so b1c names it; the helper side of the other pair is then
            # a forced second dependent set
            if pred((b1 ^ (1 << b1c)) | (1 << a)):
                b1c, b2c = b2c, b1c
            for z in iter_elements(b2 & ~a1_mask):
                if pred((b2 ^ (1 << z)) | (1 << b1c)):
                    break
            else:
                raise InternalCheckError("no escape element beside the anchor")
            side.push(m, b1, b2, b1c, z)
            nb1 = (b1 ^ (1 << b1c)) | (1 << z)
            nb2 = (b2 ^ (1 << z)) | (1 << b1c)
            side.push(m, nb1, nb2, b2c, a)
            return
        # the helper meets {b1c, b2c} in one element; call it b1c
        if q0 != (1 << b1c):
            b1c, b2c = b2c, b1c
        for a in (a1c, a2c):
            if pred((b1 ^ (1 << b2c)) | (1 << a)) and pred(
                (b2 ^ (1 << a)) | (1 << b2c)
            ):
                side.push(m, b1, b2, b2c, a)
                return
        if pred((b1 ^ (1 << b2c)) | (1 << a1c)):
            a1c, a2c = a2c, a1c
        for x in iter_elements((a1_mask & b1) & ~b2):
            if pred((b2 ^ (1 << a1c)) | (1 << x)):
                break
        else:
            raise InternalCheckError("no shared element escapes the anchor")
        side.push(m, b1, b2, x, a1c)
        nb1 = (b1 ^ (1 << x)) | (1 << a1c)
        nb2 = (b2 ^ (1 << a1c)) | (1 << x)
        side.push(m, nb1, nb2, b2c, a2c)
        return

    # half == 1
    a1c = _lowest(amb)
    b1c = _lowest(bma)
    guard = 0
    while True:
        guard += 1
        if guard > len(side.state) + 4:
            raise InternalCheckError("single-swap chain failed to settle")
        act = Counter(side.state) - matched
        b2 = _pick_helper(act, b1, amb, bma)
        x_mask = b2 & ~(1 << a1c)
        if pred(x_mask | (1 << b1c)):
            side.push(m, b1, b2, b1c, a1c)
            return
        others = act.copy()
        others[b1] -= 1
        others[b2] -= 1
        others = +others
        if not others:
            raise InternalCheckError("two-member collections always finish direct")
        ordered = sorted(others)
        # a member missing b1c and part of x_mask lets a pre-swap pull
        # the helper off the dependent completion for good
        for bh in ordered:
            if (bh >> b1c) & 1 or not x_mask & ~bh:
                continue
            y = _lowest(x_mask & ~bh)
            for z in iter_elements(bh & ~b2):
                if pred((bh ^ (1 << z)) | (1 << y)) and pred(
                    (b2 ^ (1 << y)) | (1 << z)
                ):
                    break
            else:
                raise InternalCheckError("symmetric exchange witness missing")
            side.push(m, b2, bh, y, z)
            nb2 = (b2 ^ (1 << y)) | (1 << z)
            side.push(m, b1, nb2, b1c, a1c)
            return
        # interferers hold b1c without a1c; hand each one an a1c from
        # the helper, shrinking their number by one per pass
        fixed = False
        for bh in ordered:
            if not (bh >> b1c) & 1 or (bh >> a1c) & 1:
                continue
            for z in iter_elements(bh & ~b2):
                if pred((b2 ^ (1 << a1c)) | (1 << z)) and pred(
                    (bh ^ (1 << z)) | (1 << a1c)
                ):
                    break
            else:
                raise InternalCheckError("interferer fix found no exchange")
            side.push(m, b2, bh, a1c, z)
            fixed = True
            break
        if fixed:
            continue
        for bh in ordered:
            if (bh >> b1c) & 1 and (bh >> a1c) & 1 and (b2 ^ bh).bit_count() >= 4:
                x = _lowest(bh & ~(1 << b1c) & ~b2)
                for y in iter_elements(b2 & ~bh):
                    if pred((bh ^ (1 << x)) | (1 << y)) and pred(
                        (b2 ^ (1 << y)) | (1 << x)
                    ):
                        break
                else:
                    raise InternalCheckError("symmetric exchange witness missing")
                side.push(m, b2, bh, y, x)
                nb2 = (b2 ^ (1 << y)) | (1 << x)
                side.push(m, b1, nb2, b1c, a1c)
                return
        raise InternalCheckError("single-swap chain exhausted every repair")


def _as_members(m, col: Sequence[ElementSet], what: str) -> tuple[int, ...]:
    pred, n, _ = _basis_pred(m)
    ground = (1 << n) - 1
    members = tuple(as_mask(b) for b in col)
    for b in members:
        if b & ~ground:
            raise ElementOutOfRange(
                f"{what} member {format_set(b)} leaves the ground set"
            )
        if not pred(b):
            raise NotBases(f"{what} member {format_set(b)} is not a basis")
    return members


def _element_union(members: Iterable[int]) -> Counter:
    u: Counter = Counter()
    for b in members:
        for e in iter_elements(b):
            u[e] += 1
    return u


def white_moves(m, src: Sequence[ElementSet], dst: Sequence[ElementSet]) -> list[Move]:
    """Moves turning the multiset src into the multiset dst.

    Indices in each move refer to the canonical (sorted) ordering of
    the multiset at the time the move is applied.  Both endpoints are
    walked toward a common middle; the moves recorded on the dst side
    are inverted and reversed onto the tail of the result.
    """
    s_members = tuple(sorted(_as_members(m, src, "src")))
    d_members = tuple(sorted(_as_members(m, dst, "dst")))
    if len(s_members) != len(d_members):
        raise UnionMismatch("collections have different member counts")
    if _element_union(s_members) != _element_union(d_members):
        raise UnionMismatch("collections have different multiset unions")

    side_s = _Side(s_members)
    side_d = _Side(d_members)
    matched: Counter = Counter()
    while True:
        act_s = Counter(side_s.state) - matched
        act_d = Counter(side_d.state) - matched
        if not act_s:
            break
        best = None
        for a in sorted(act_s):
            for b in sorted(act_d):
                d = (a ^ b).bit_count()
                if best is None or d < best[0]:
                    best = (d, a, b)
        dist, a_val, b_val = best
        if dist == 0:
            matched[a_val] += 1
            continue
        union: Counter = Counter()
        for v, c in act_s.items():
            for e in iter_elements(v):
                union[e] += c
        ma = sum(union[e] for e in iter_elements(a_val & ~b_val))
        mb = sum(union[e] for e in iter_elements(b_val & ~a_val))
        if ma >= mb:
            _advance(m, a_val, b_val, side_d, matched)
        else:
            _advance(m, b_val, a_val, side_s, matched)

    inverted: list[Move] = []
    for t in range(len(side_d.moves) - 1, -1, -1):
        mv = side_d.moves[t]
        prev = side_d.history[t]
        after = side_d.history[t + 1]
        vi2 = (prev[mv.i] ^ (1 << mv.x)) | (1 << mv.y)
        vj2 = (prev[mv.j] ^ (1 << mv.y)) | (1 << mv.x)
        inverted.append(_mk_move(after, vi2, vj2, mv.y, mv.x))
    result = side_s.moves + inverted

    cur = s_members
    for mv in result:
        cur = apply_white_move(m, cur, mv)
    if cur != d_members:
        raise InternalCheckError("move replay did not land on the target multiset")
    return result


def white2_path(m, src: Sequence[ElementSet], dst: Sequence[ElementSet]) -> list[Move]:
    """Moves on ordered positions turning the tuple src into dst exactly.

    The multiset is matched first by replaying white_moves onto the
    ordered state; the leftover permutation is resolved one
    transposition at a time, each realized as a disjoint-pair walk in
    the minor that contracts the two members' shared elements and
    deletes everything outside their union.
    """
    pred, n, _ = _basis_pred(m)
    src_t = _as_members(m, src, "src")
    dst_t = _as_members(m, dst, "dst")
    if len(src_t) != len(dst_t):
        raise UnionMismatch("collections have different member counts")
    if _element_union(src_t) != _element_union(dst_t):
        raise UnionMismatch("collections have different multiset unions")

    k = len(src_t)
    out: list[Move] = []
    cur = list(src_t)

    def emit(p: int, q: int, x: int, y: int) -> None:
        if p > q:
            p, q, x, y = q, p, y, x
        nbp = (cur[p] ^ (1 << x)) | (1 << y)
        nbq = (cur[q] ^ (1 << y)) | (1 << x)
        if not pred(nbp) or not pred(nbq):
            raise InternalCheckError("tuple move left the basis family")
        cur[p], cur[q] = nbp, nbq
        out.append(Move(p, q, x, y))

    sorted_state = tuple(sorted(src_t))
    for mv in white_moves(m, src_t, dst_t):
        vi, vj = sorted_state[mv.i], sorted_state[mv.j]
        p = cur.index(vi)
        q = cur.index(vj)
        if q == p:
            q = cur.index(vj, p + 1)
        emit(p, q, mv.x, mv.y)
        sorted_state = apply_white_move(m, sorted_state, mv)

    for p in range(k):
        if cur[p] == dst_t[p]:
            continue
        q = next(qq for qq in range(p + 1, k) if cur[qq] == dst_t[p])
        ai, aj = cur[p], cur[q]
        shared = ai & aj
        d1 = ai & ~shared
        d2 = aj & ~shared

        def view(dmask: int, _shared=shared) -> bool:
            return pred(dmask | _shared)

        prev1 = d1
        for n1, _ in _disjoint_pair_path(view, d1, d2, d2, d1):
            x = _lowest(prev1 & ~n1)
            y = _lowest(n1 & ~prev1)
            emit(p, q, x, y)
            prev1 = n1
        if cur[p] != dst_t[p]:
            raise InternalCheckError("transposition walk missed its target")
    if tuple(cur) != dst_t:
        raise InternalCheckError("ordered replay did not land on the target tuple")
    return out


# -- exhaustive connectivity oracles ------------------------------------------


def _fits(b: int, remaining: Counter) -> bool:
    return all(remaining[e] >= 1 for e in iter_elements(b))


def _take(b: int, remaining: Counter) -> Counter:
    nxt = remaining.copy()
    for e in iter_elements(b):
        nxt[e] -= 1
    return +nxt


def graph_connected(
    m,
    kind: str,
    s: Multiset | None = None,
    cap: int = 1_000_000,
) -> tuple[bool, int]:
    """Exhaustive connectivity check; returns (connected, vertex count).

    kind is "bpg", "white_multiset", or "white_tuple"; the white kinds
    need the multiset union s.  Enumerating more than cap vertices
    raises TooLarge.  An empty or single-vertex graph counts as
    connected.
    """
    pred, n, r = _basis_pred(m)
    ground = (1 << n) - 1
    if math.comb(n, r) > max(cap, 5_000_000):
        raise TooLarge("too many candidate bases to enumerate")
    if kind == "bpg":
        if s is not None:
            raise PreconditionViolated("the pair graph takes no multiset")
        bases = [b for b in subset_masks(n, r) if pred(b)]
        verts: list[tuple[int, int]] = []
        for b1 in bases:
            celts = elements(ground & ~b1)
            for combo in itertools.combinations(celts, r):
                b2 = 0
                for e in combo:
                    b2 |= 1 << e
                if pred(b2):
                    verts.append((b1, b2))
                    if len(verts) > cap:
                        raise TooLarge(f"pair graph exceeds {cap} vertices")
        if len(verts) <= 1:
            return True, len(verts)
        index = {v: i for i, v in enumerate(verts)}
        seen = bytearray(len(verts))
        stack = [verts[0]]
        seen[0] = 1
        count = 1
        while stack:
            a1, a2 = stack.pop()
            a3 = ground & ~(a1 | a2)
            nbrs: list[tuple[int, int]] = []
            for x in iter_elements(a1):
                for y in iter_elements(a2):
                    n1 = (a1 ^ (1 << x)) | (1 << y)
                    n2 = (a2 ^ (1 << y)) | (1 << x)
                    if pred(n1) and pred(n2):
                        nbrs.append((n1, n2))
            for x in iter_elements(a1):
                for y in iter_elements(a3):
                    n1 = (a1 ^ (1 << x)) | (1 << y)
                    if pred(n1):
                        nbrs.append((n1, a2))
            for x in iter_elements(a2):
                for y in iter_elements(a3):
                    n2 = (a2 ^ (1 << x)) | (1 << y)
                    if pred(n2):
                        nbrs.append((a1, n2))
            for v in nbrs:
                i = index[v]
                if not seen[i]:
                    seen[i] = 1
                    count += 1
                    stack.append(v)
        return count == len(verts), len(verts)

    if kind not in ("white_multiset", "white_tuple"):
        raise PreconditionViolated(f"unknown graph kind {kind!r}")
    if s is None:
        raise PreconditionViolated("collection graphs need the multiset union")
    counts = s.counter()
    for e in counts:
        if e >= n:
            raise ElementOutOfRange(f"multiset element {e} outside the ground set")
    total = s.total
    if r == 0:
        if total:
            raise PreconditionViolated("rank zero admits only the empty union")
        return True, 1
    if total % r:
        raise PreconditionViolated("union size is not a multiple of the rank")
    k = total // r
    # sorted so the index-ordered enumeration yields canonical tuples
    bases = sorted(b for b in subset_masks(n, r) if pred(b) and _fits(b, counts))

    verts2: list[tuple[int, ...]] = []
    if kind == "white_multiset":

        def rec(lo: int, remaining: Counter, chosen: list[int]) -> None:
            if len(chosen) == k:
                verts2.append(tuple(chosen))
                if len(verts2) > cap:
                    raise TooLarge(f"collection graph exceeds {cap} vertices")
                return
            for idx in range(lo, len(bases)):
                b = bases[idx]
                if _fits(b, remaining):
                    chosen.append(b)
                    rec(idx, _take(b, remaining), chosen)
                    chosen.pop()

        rec(0, counts, [])
    else:

        def rec2(remaining: Counter, chosen: list[int]) -> None:
            if len(chosen) == k:
                verts2.append(tuple(chosen))
                if len(verts2) > cap:
                    raise TooLarge(f"collection graph exceeds {cap} vertices")
                return
            for b in bases:
                if _fits(b, remaining):
                    chosen.append(b)
                    rec2(_take(b, remaining), chosen)
                    chosen.pop()

        rec2(counts, [])

    if len(verts2) <= 1:
        return True, len(verts2)
    index2 = {v: i for i, v in enumerate(verts2)}
    seen2 = bytearray(len(verts2))
    stack2 = [verts2[0]]
    seen2[0] = 1
    count2 = 1
    resort = kind == "white_multiset"
    while stack2:
        vert = stack2.pop()
        for i in range(k):
            for j in range(i + 1, k):
                bi, bj = vert[i], vert[j]
                for x in iter_elements(bi & ~bj):
                    for y in iter_elements(bj & ~bi):
                        nbi = (bi ^ (1 << x)) | (1 << y)
                        nbj = (bj ^ (1 << y)) | (1 << x)
                        if not pred(nbi) or not pred(nbj):
                            continue
                        nxt = list(vert)
                        nxt[i], nxt[j] = nbi, nbj
                        key = tuple(sorted(nxt)) if resort else tuple(nxt)
                        at = index2[key]
                        if not seen2[at]:
                            seen2[at] = 1
                            count2 += 1
                            stack2.append(key)
    return count2 == len(verts2), len(verts2)
