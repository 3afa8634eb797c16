"""Line-oriented matroid files.

Two formats, both with 0-based element labels:

    spm 1           bases 1
    n 4             n 4
    r 2             r 2
    ch 0 3          b 0 1
    ch 1 2          b 0 2

A body line lists one r-set with strictly increasing elements.  Blank
lines and '#' comments are skipped on input.  Serialization is
canonical (sets ordered as masks, single spaces, LF, trailing
newline), so parse(serialize(m)) == m and serialize(parse(t)) is a
normal form for t.  Parsed content is validated before it is returned.
"""

from __future__ import annotations

from .bitset import elements
from .core import ExplicitMatroid, SparsePavingMatroid, explicit_validate, validate
from .errors import ParseError, TooLarge


def _int_token(lineno: int, tok: str) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {tok!r}") from None


def _named_int(row: tuple[int, list[str]], name: str) -> int:
    lineno, toks = row
    if len(toks) != 2 or toks[0] != name:
        raise ParseError(f"line {lineno}: expected '{name} <integer>'")
    return _int_token(lineno, toks[1])


def parse_matroid(text: str, explicit_work_cap: int = 10_000_000):
    """Read either format; returns the validated matroid object.

    explicit_work_cap bounds the quadratic exchange-axiom check run on
    'bases 1' files (measured as basis count squared).
    """
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.strip()
        if not body or body.startswith("#"):
            continue
        rows.append((lineno, body.split()))
    if not rows:
        raise ParseError("line 1: empty input")
    head_line, head = rows[0]
    if head == ["spm", "1"]:
        tag = "ch"
    elif head == ["bases", "1"]:
        tag = "b"
    else:
        raise ParseError(f"line {head_line}: unknown format {' '.join(head)!r}")
    if len(rows) < 3:
        raise ParseError(f"line {rows[-1][0]}: missing 'n' and 'r' lines")
    n = _named_int(rows[1], "n")
    r = _named_int(rows[2], "r")
    masks = []
    for lineno, toks in rows[3:]:
        if toks[0] != tag:
            raise ParseError(f"line {lineno}: expected a {tag!r} line, got {toks[0]!r}")
        if len(toks) != r + 1:
            raise ParseError(f"line {lineno}: expected {r} elements, got {len(toks) - 1}")
        prev = -1
        mask = 0
        for t in toks[1:]:
            e = _int_token(lineno, t)
            if e <= prev:
                raise ParseError(f"line {lineno}: elements must be strictly increasing")
            if not 0 <= e < n:
                raise ParseError(f"line {lineno}: element {e} is outside 0..{n - 1}")
            prev = e
            mask |= 1 << e
        masks.append(mask)
    if tag == "ch":
        spm = SparsePavingMatroid(n, r, masks)
        validate(spm)
        return spm
    if len(masks) * len(masks) > explicit_work_cap:
        raise TooLarge(
            f"validating {len(masks)} explicit bases exceeds the work cap"
        )
    em = ExplicitMatroid(n, r, masks)
    explicit_validate(em)
    return em


def serialize_matroid(m) -> str:
    if isinstance(m, SparsePavingMatroid):
        head, tag, body = "spm 1", "ch", m.chset
    elif isinstance(m, ExplicitMatroid):
        head, tag, body = "bases 1", "b", tuple(sorted(m.bases))
    else:
        raise TypeError(f"expected a matroid, got {type(m).__name__}")
    lines = [head, f"n {m.n}", f"r {m.r}"]
    for s in body:
        lines.append(" ".join([tag, *[str(e) for e in elements(s)]]))
    return "\n".join(lines) + "\n"
