"""Command line front end (installed as `spm`).

Every subcommand is deterministic for a fixed argv, input files, and
seed, at any --jobs level.  Anything the tool prints as a result is
re-verified against the defining predicate first (window bases, step
adjacency, flat definition), never trusted straight from the search.
"""

from __future__ import annotations

import argparse
import sys

from .bitset import elements, format_set
from .construct import graham_sloane, gs_best_class, random_sparse_paving
from .core import (
    ExplicitMatroid,
    SparsePavingMatroid,
    closure_of,
    dual,
    explicit_closure,
    explicit_minor,
    explicit_rank,
    is_basis,
    minor,
    rank_of,
    relax,
)
from .cyclic import (
    average_ch_intervals,
    brute_force_order,
    check_density,
    find_cyclic_order,
    gabow_cycle_any,
)
from .errors import (
    InternalCheckError,
    MatroidError,
    PreconditionViolated,
    TooLarge,
    ValidationError,
)
from .exchange import (
    Multiset,
    apply_tuple_move,
    apply_white_move,
    bpg_adjacent,
    bpg_path,
    bpg_vertex,
    graph_connected,
    white2_path,
    white_moves,
)
from .fileio import parse_matroid, serialize_matroid
from .flats import bounds, cyclic_flats_of, flat_histogram, zn_census

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _parse_set(spec: str) -> int:
    """Comma-separated elements to a mask; '-' or '' is the empty set."""
    spec = spec.strip()
    if spec in ("", "-"):
        return 0
    mask = 0
    for tok in spec.split(","):
        try:
            e = int(tok)
        except ValueError:
            raise PreconditionViolated(f"bad element {tok!r} in set spec {spec!r}") from None
        if e < 0:
            raise PreconditionViolated(f"negative element in set spec {spec!r}")
        if (mask >> e) & 1:
            raise PreconditionViolated(f"repeated element {e} in set spec {spec!r}")
        mask |= 1 << e
    return mask


def _parse_members(spec: str) -> list[int]:
    return [_parse_set(part) for part in spec.split("|")]


def _load(args):
    with open(args.file, encoding="utf-8") as fh:
        return parse_matroid(fh.read(), explicit_work_cap=args.cap_explicit)


def _load_spm(args) -> SparsePavingMatroid:
    m = _load(args)
    if not isinstance(m, SparsePavingMatroid):
        raise PreconditionViolated("this command needs an 'spm 1' file")
    return m


def _emit(m, args, extra_stdout: str | None = None) -> int:
    text = serialize_matroid(m)
    if isinstance(m, SparsePavingMatroid) and parse_matroid(text) != m:
        raise InternalCheckError("serialization did not round-trip")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        if extra_stdout:
            print(extra_stdout)
    else:
        if extra_stdout:
            print(f"# {extra_stdout}")
        sys.stdout.write(text)
    return EXIT_OK


# -- subcommand bodies --------------------------------------------------------


def _cmd_gen_gs(args) -> int:
    c = args.residue if args.residue is not None else gs_best_class(args.n, args.r)[0]
    return _emit(graham_sloane(args.n, args.r, c, cap=args.cap_explicit), args)


def _cmd_gen_random(args) -> int:
    m = random_sparse_paving(
        args.n, args.r, seed=args.seed, max_sets=args.target, cap=args.cap_explicit
    )
    return _emit(m, args)


def _cmd_validate(args) -> int:
    m = _load(args)
    if isinstance(m, SparsePavingMatroid):
        print(f"ok spm n={m.n} r={m.r} dependent={len(m.chset)} bases={m.basis_count}")
    else:
        print(f"ok bases n={m.n} r={m.r} bases={len(m.bases)}")
    return EXIT_OK


def _cmd_dual(args) -> int:
    return _emit(dual(_load_spm(args)), args)


def _cmd_minor(args) -> int:
    m = _load(args)
    if args.delete is not None:
        kind, e = "delete", args.delete
    else:
        kind, e = "contract", args.contract
    if isinstance(m, SparsePavingMatroid):
        out, label_map = minor(m, kind, e)
    else:
        out, label_map = explicit_minor(m, kind, e)
    return _emit(out, args, extra_stdout="labels " + " ".join(str(x) for x in label_map))


def _cmd_relax(args) -> int:
    return _emit(relax(_load_spm(args), _parse_set(args.ch)), args)


def _check_pair_graph_vertex(m, spec: str):
    parts = spec.split(";")
    if len(parts) != 2:
        raise PreconditionViolated(f"vertex spec {spec!r} needs 'A1;A2'")
    a1, a2 = _parse_set(parts[0]), _parse_set(parts[1])
    return bpg_vertex(m, a1, a2, m.ground & ~(a1 | a2))


def _cmd_conj_farber(args) -> int:
    m = _load_spm(args)
    if (args.src is None) != (args.dst is None):
        print("error: --from and --to go together", file=sys.stderr)
        return EXIT_USAGE
    if args.src is not None:
        u = _check_pair_graph_vertex(m, args.src)
        v = _check_pair_graph_vertex(m, args.dst)
        path = bpg_path(m, u, v)
        if path[0] != u or path[-1] != v:
            raise InternalCheckError("path endpoints are off")
        for a, b in zip(path, path[1:]):
            if not bpg_adjacent(m, a, b):
                raise InternalCheckError("path step failed re-verification")
        print(f"path {len(path) - 1} steps")
        for vert in path:
            print(f"v {format_set(vert.a1)}|{format_set(vert.a2)}|{format_set(vert.a3)}")
    if args.oracle or args.src is None:
        connected, count = graph_connected(m, "bpg", cap=args.cap_vertices)
        if not connected:
            print("WITNESS disconnected", count)
            return EXIT_FAILS
        print(f"connected {count} vertices")
    return EXIT_OK


def _run_collection_walk(args, ordered: bool) -> int:
    m = _load_spm(args)
    src = _parse_members(args.src)
    dst = _parse_members(args.dst)
    if len(src) != args.k or len(dst) != args.k:
        print(f"error: --k {args.k} does not match the member lists", file=sys.stderr)
        return EXIT_USAGE
    if ordered:
        moves = white2_path(m, src, dst)
        state: tuple[int, ...] = tuple(src)
        target = tuple(dst)
        step = apply_tuple_move
    else:
        moves = white_moves(m, src, dst)
        state = tuple(sorted(src))
        target = tuple(sorted(dst))
        step = apply_white_move
    for mv in moves:
        state = step(m, state, mv)  # validates both touched members
    if state != target:
        raise InternalCheckError("replayed moves do not reach the target")
    print(f"moves {len(moves)}")
    for mv in moves:
        print(f"move {mv.i} {mv.j} {mv.x} {mv.y}")
    if args.oracle:
        s = Multiset.from_elements(e for b in src for e in elements(b))
        kind = "white_tuple" if ordered else "white_multiset"
        connected, count = graph_connected(m, kind, s=s, cap=args.cap_vertices)
        if not connected:
            print("WITNESS disconnected", count)
            return EXIT_FAILS
        print(f"oracle connected {count} vertices")
    return EXIT_OK


def _cmd_conj_white(args) -> int:
    return _run_collection_walk(args, ordered=False)


def _cmd_conj_white2(args) -> int:
    return _run_collection_walk(args, ordered=True)


def _cmd_order_cyclic(args) -> int:
    m = _load_spm(args)
    order = find_cyclic_order(m)
    if order is None:
        ok, wit = check_density(m)
        if ok:
            raise InternalCheckError("density holds but no order was produced")
        if m.r * wit.bit_count() <= rank_of(m, wit) * m.n:
            raise InternalCheckError("density witness failed re-verification")
        if m.n <= args.cap_order and brute_force_order(m, cap=args.cap_order) is not None:
            raise InternalCheckError("exhaustive search contradicts the refusal")
        print("not orderable")
        print("WITNESS", *elements(wit))
        return EXIT_FAILS
    for p in range(m.n):
        w = 0
        for i in range(m.r):
            w |= 1 << order[(p + i) % m.n]
        if not is_basis(m, w):
            raise InternalCheckError("produced order failed re-verification")
    print(*order)
    return EXIT_OK


def _cmd_order_pair(args) -> int:
    m = _load_spm(args)
    b1, b2 = _parse_set(args.b1), _parse_set(args.b2)
    cyc = gabow_cycle_any(m, b1, b2)
    r = m.r
    got1 = 0
    for e in cyc[:r]:
        got1 |= 1 << e
    got2 = 0
    for e in cyc[r:]:
        got2 |= 1 << e
    if got1 != b1 or got2 != b2:
        raise InternalCheckError("cycle blocks do not match the bases")
    # windows of the restriction are r-subsets of b1 | b2, so the
    # ambient basis test is the right re-verification
    for p in range(2 * r):
        w = 0
        for i in range(r):
            w |= 1 << cyc[(p + i) % (2 * r)]
        if not is_basis(m, w):
            raise InternalCheckError("cycle window failed re-verification")
    print(*cyc)
    return EXIT_OK


def _cmd_flats(args) -> int:
    m = _load(args)
    flats = cyclic_flats_of(m)
    if isinstance(m, SparsePavingMatroid):
        rank, clo = rank_of, closure_of
    else:
        rank, clo = explicit_rank, explicit_closure
    for f in flats:
        rf = rank(m, f)
        good = clo(m, f) == f and all(
            rank(m, f & ~(1 << e)) == rf for e in elements(f)
        )
        if not good:
            raise InternalCheckError(f"{format_set(f)} failed the cyclic-flat recheck")
    print(f"count {len(flats)}")
    for f in flats:
        print("flat", *elements(f))
    for size, a in flat_histogram(flats).items():
        print("hist", size, a)
    return EXIT_OK


def _cmd_avg(args) -> int:
    print(average_ch_intervals(_load_spm(args)))
    return EXIT_OK


def _cmd_bounds(args) -> int:
    b = bounds(args.n, args.r)
    print("zn_upper", b.zn_upper)
    print("zn_lower_int", b.zn_lower_int)
    print("zn_lower", b.zn_lower_radical, "=", b.zn_lower_decimal)
    if b.ch_upper is not None:
        print("ch_upper", b.ch_upper)
    return EXIT_OK


def _cmd_census(args) -> int:
    rep = zn_census(args.n, jobs=args.jobs)
    print("lower_bound", rep.lower_bound)
    print("best_rank", rep.best_rank)
    print("best_class", rep.best_class)
    print("zn_upper", rep.limits.zn_upper)
    print("zn_lower_int", rep.limits.zn_lower_int)
    print("gap", rep.gap_to_upper)
    for r, c, k in rep.entries:
        print("rank", r, "class", c, "flats", k)
    return EXIT_OK


# -- wiring -------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    common.add_argument(
        "--cap-vertices", type=int, default=1_000_000, help="graph enumeration cap"
    )
    common.add_argument(
        "--cap-explicit", type=int, default=10_000_000, help="explicit-work cap"
    )
    common.add_argument(
        "--cap-order", type=int, default=9, help="exhaustive order-oracle size cap"
    )

    top = argparse.ArgumentParser(prog="spm", description=__doc__)
    sub = top.add_subparsers(dest="cmd", required=True)

    def leaf(parent, name: str, fn, **kw):
        p = parent.add_parser(name, parents=[common], **kw)
        p.set_defaults(fn=fn)
        return p

    gen = sub.add_parser("gen").add_subparsers(dest="kind", required=True)
    g = leaf(gen, "gs", _cmd_gen_gs, help="residue-class construction")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--class", dest="residue", type=int, default=None)
    g.add_argument("-o", "--output")
    g = leaf(gen, "random", _cmd_gen_random, help="seeded greedy construction")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--target", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("-o", "--output")

    p = leaf(sub, "validate", _cmd_validate)
    p.add_argument("file")

    p = leaf(sub, "dual", _cmd_dual)
    p.add_argument("file")
    p.add_argument("-o", "--output")

    p = leaf(sub, "minor", _cmd_minor)
    p.add_argument("file")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--delete", type=int)
    grp.add_argument("--contract", type=int)
    p.add_argument("-o", "--output")

    p = leaf(sub, "relax", _cmd_relax)
    p.add_argument("file")
    p.add_argument("--ch", required=True, help="dependent set to relax, e.g. '0,3'")
    p.add_argument("-o", "--output")

    conj = sub.add_parser("conj").add_subparsers(dest="which", required=True)
    p = leaf(conj, "farber", _cmd_conj_farber, help="basis pair graph connectivity")
    p.add_argument("file")
    p.add_argument("--from", dest="src", help="vertex 'A1;A2'")
    p.add_argument("--to", dest="dst", help="vertex 'B1;B2'")
    p.add_argument("--oracle", action="store_true")
    for name, fn in (("white", _cmd_conj_white), ("white2", _cmd_conj_white2)):
        p = leaf(conj, name, fn, help="basis collection walk")
        p.add_argument("file")
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--from", dest="src", required=True, help="'B1|B2|...'")
        p.add_argument("--to", dest="dst", required=True)
        p.add_argument("--oracle", action="store_true")

    order = sub.add_parser("order").add_subparsers(dest="what", required=True)
    p = leaf(order, "cyclic", _cmd_order_cyclic, help="witness cyclic order")
    p.add_argument("file")
    p = leaf(order, "pair", _cmd_order_pair, help="two-block cycle for disjoint bases")
    p.add_argument("file")
    p.add_argument("--b1", required=True)
    p.add_argument("--b2", required=True)

    p = leaf(sub, "flats", _cmd_flats)
    p.add_argument("file")

    p = leaf(sub, "avg", _cmd_avg, help="mean dependent-window count, exact")
    p.add_argument("file")

    p = leaf(sub, "bounds", _cmd_bounds)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=None)

    p = leaf(sub, "census", _cmd_census)
    p.add_argument("--n", type=int, required=True)

    return top


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.fn(args)
    except (ValidationError, PreconditionViolated, TooLarge, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except MatroidError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
