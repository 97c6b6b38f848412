"""Command-line entry point.

One subcommand per module: ``graph`` (dual-graph lattice operations),
``hilbert`` (numerical data, coefficients, p_g-ideal tests), ``brieskorn``
(hypersurface oracles), and ``rees`` (extended-Rees presentation and
normality checks).  Every action is a thin adapter: the library computes,
this module only formats.

Exit codes: 0 computed, 1 verdict false (boolean actions), 2 input or
validation error, 3 resource budget exceeded.  ``--format lines`` emits
one ``key=value`` pair per line for scripting; ``table`` (default) prints
a human-readable summary.  All numbers are exact; rationals print as p/q.
"""

import argparse
import sys

from . import brieskorn, hilbert, lattice, polyalg
from .errors import (
    BudgetError,
    ClosureGuardError,
    DomainError,
    InconsistentDataError,
    ParseError,
    SupportError,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _b(value):
    return "true" if value else "false"


def _yn(value):
    return "yes" if value else "no"


def _emit(fmt, table, pairs):
    if fmt == "lines":
        for key, value in pairs:
            print(f"{key}={value}")
    else:
        for line in table:
            print(line)


def _cycle_rows(g, z):
    return [(vid, z.get(vid)) for vid in g.vertex_ids()]


# ---------------------------------------------------------------------------
# graph


def _cmd_graph(args):
    g, cycles = lattice.load_graph(args.file)

    def named_cycle():
        if not args.cycle:
            raise DomainError(f"action {args.action!r} needs --cycle NAME")
        if args.cycle not in cycles:
            raise DomainError(f"no cycle named {args.cycle!r} in {args.file}")
        return cycles[args.cycle]

    if args.action == "check":
        self_ok = all(v.self_intersection <= -1 for v in g.vertices)
        negdef = lattice.is_negative_definite(g)
        verdict = self_ok and negdef
        _emit(
            args.format,
            [
                f"vertices: {len(g.vertices)}",
                f"edges: {len(g.edges)}",
                f"self-intersections <= -1: {_yn(self_ok)}",
                f"negative definite: {_yn(negdef)}",
                f"valid resolution lattice: {_yn(verdict)}",
            ],
            [
                ("vertices", len(g.vertices)),
                ("edges", len(g.edges)),
                ("self_ok", _b(self_ok)),
                ("negative_definite", _b(negdef)),
                ("verdict", _b(verdict)),
            ],
        )
        return EXIT_OK if verdict else EXIT_FALSE

    if args.action == "fundamental":
        z = lattice.fundamental_cycle(g)
        zz = lattice.pairing(g, z, z)
        rows = _cycle_rows(g, z)
        _emit(
            args.format,
            ["fundamental cycle:"]
            + [f"  {vid} = {c}" for vid, c in rows]
            + [f"Z.Z = {zz}"],
            [(f"cycle.{vid}", c) for vid, c in rows] + [("zz", zz)],
        )
        return EXIT_OK

    if args.action == "canonical":
        z = lattice.canonical_cycle(g)
        rows = _cycle_rows(g, z)
        _emit(
            args.format,
            ["canonical cycle:"] + [f"  {vid} = {c}" for vid, c in rows],
            [(f"cycle.{vid}", c) for vid, c in rows],
        )
        return EXIT_OK

    if args.action == "antinef":
        z = named_cycle()
        verdict = lattice.is_anti_nef(g, z)
        pv = lattice.pairing_vector(g, z)
        ids = g.vertex_ids()
        _emit(
            args.format,
            ["pairings Z.E_i:"]
            + [f"  {vid} = {p}" for vid, p in zip(ids, pv)]
            + [f"anti-nef: {_yn(verdict)}"],
            [(f"pairing.{vid}", p) for vid, p in zip(ids, pv)]
            + [("verdict", _b(verdict))],
        )
        return EXIT_OK if verdict else EXIT_FALSE

    if args.action == "zperp":
        z = named_cycle()
        comps = lattice.z_perp(g, z)
        table = [f"Z-perpendicular components: {len(comps)}"]
        pairs = [("components", len(comps))]
        for i, comp in enumerate(comps, start=1):
            ids = ",".join(comp.vertex_ids())
            table.append(f"  component {i}: {ids}")
            pairs.append((f"component.{i}", ids))
        _emit(args.format, table, pairs)
        return EXIT_OK

    if args.action == "rational":
        pa = lattice.arithmetic_genus(g, lattice.fundamental_cycle(g))
        verdict = pa == 0
        _emit(
            args.format,
            [
                f"fundamental cycle arithmetic genus: {pa}",
                f"rational singularity: {_yn(verdict)}",
            ],
            [("arithmetic_genus", pa), ("verdict", _b(verdict))],
        )
        return EXIT_OK if verdict else EXIT_FALSE

    raise DomainError(f"unknown graph action {args.action!r}")


# ---------------------------------------------------------------------------
# hilbert


def _select_data(args, data):
    if getattr(args, "name", None):
        if args.name not in data:
            raise DomainError(f"no datum named {args.name!r} in {args.file}")
        return {args.name: data[args.name]}
    return data


def _cmd_hilbert(args):
    data = hilbert.load_data(args.file)

    if args.action == "multirees":
        if args.names:
            names = args.names.split(",")
            if len(names) != 2:
                raise DomainError("--names needs exactly two comma-separated names")
            for n in names:
                if n not in data:
                    raise DomainError(f"no datum named {n!r} in {args.file}")
        else:
            if len(data) < 2:
                raise DomainError("multirees needs two datums in the file")
            names = list(data)[:2]
        d1, d2 = data[names[0]], data[names[1]]
        verdict = hilbert.multi_rees_verdict(d1, d2)
        _emit(
            args.format,
            [
                f"pair: {names[0]}, {names[1]}",
                f"bigraded Rees algebra certified: {_yn(verdict)}",
            ],
            [("first", names[0]), ("second", names[1]), ("verdict", _b(verdict))],
        )
        return EXIT_OK if verdict else EXIT_FALSE

    selected = _select_data(args, data)
    table, pairs = [], []
    exit_code = EXIT_OK

    for name, d in selected.items():
        if args.action == "coeffs":
            c = hilbert.coefficients(d)
            table.append(
                f"{name}: coefficients ({c.e0bar}, {c.e1bar}, {c.e2bar})"
            )
            pairs += [
                (f"{name}.e0", c.e0bar),
                (f"{name}.e1", c.e1bar),
                (f"{name}.e2", c.e2bar),
            ]
        elif args.action == "pgtest":
            verdict, (a, b, c_zero) = hilbert.pg_ideal_test(d)
            table.append(
                f"{name}: p_g-ideal {_yn(verdict)} "
                f"(h1 attains pg: {_yn(a)}, e1 = e0 - colength: {_yn(b)}, "
                f"e2 = 0: {_yn(c_zero)})"
            )
            pairs += [
                (f"{name}.verdict", _b(verdict)),
                (f"{name}.h1_attains_pg", _b(a)),
                (f"{name}.e1_matches", _b(b)),
                (f"{name}.e2_zero", _b(c_zero)),
            ]
            if not verdict:
                exit_code = EXIT_FALSE
        elif args.action == "colength":
            val = hilbert.kato_colength(d, args.n)
            table.append(f"{name}: colength of power {args.n} = {val}")
            pairs += [(f"{name}.n", args.n), (f"{name}.colength", val)]
        elif args.action == "n0":
            val = hilbert.stabilization_index(d)
            table.append(f"{name}: stabilization index n0 = {val}")
            pairs.append((f"{name}.n0", val))
        elif args.action == "epsilon":
            val = hilbert.epsilon(
                d.pg, d.h1_at(args.n), d.h1_at(args.m), d.h1_at(args.n + args.m)
            )
            table.append(
                f"{name}: epsilon({args.n}Z, {args.m}Z) = {val}"
            )
            pairs += [
                (f"{name}.n", args.n),
                (f"{name}.m", args.m),
                (f"{name}.epsilon", val),
            ]
        elif args.action == "additivity":
            comps = _parse_component_pgs(args.component_pgs)
            e2 = hilbert.coefficients(d).e2bar
            verdict = hilbert.pg_additivity_check(d.pg, e2, comps)
            total = " + ".join([str(e2)] + [str(p) for p in comps]) or str(e2)
            table.append(
                f"{name}: pg = e2 + component genera: {_yn(verdict)} "
                f"({d.pg} vs {total})"
            )
            pairs += [
                (f"{name}.pg", d.pg),
                (f"{name}.e2", e2),
                (f"{name}.component_pgs", ",".join(str(p) for p in comps)),
                (f"{name}.verdict", _b(verdict)),
            ]
            if not verdict:
                exit_code = EXIT_FALSE
        else:
            raise DomainError(f"unknown hilbert action {args.action!r}")

    _emit(args.format, table, pairs)
    return exit_code


def _parse_component_pgs(text):
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise DomainError(
            f"--component-pgs needs comma-separated integers, got {text!r}"
        ) from None


# ---------------------------------------------------------------------------
# brieskorn


def _cmd_brieskorn_fermat(args):
    e = args.e
    nmax = args.nmax if args.nmax is not None else 2 * e
    if nmax < 0:
        raise DomainError("--nmax must be >= 0")
    d = brieskorn.fermat_datum(e)
    c = hilbert.coefficients(d)
    n0 = hilbert.stabilization_index(d)
    rows = []
    for n in range(nmax + 1):
        oracle = brieskorn.fermat_colength(e, n)
        closed = brieskorn.fermat_closed_form(e, n)
        rows.append((n, oracle, closed, oracle == closed))
    width = max(len(str(rows[-1][1])), len("colength"))
    table = [f"Fermat family e={e}", f"  n  {'colength':>{width}}  {'closed':>{width}}  match"]
    for n, oracle, closed, ok in rows:
        mark = "✓" if ok else "✗"
        table.append(f"{n:>3}  {oracle:>{width}}  {closed:>{width}}  {mark}")
    table.append(f"coefficients: ({c.e0bar}, {c.e1bar}, {c.e2bar})")
    table.append(f"n0: {n0}")
    pairs = [("e", e), ("nmax", nmax)]
    for n, oracle, closed, ok in rows:
        pairs += [
            (f"colength.{n}", oracle),
            (f"closed.{n}", closed),
            (f"match.{n}", _b(ok)),
        ]
    pairs += [("e0", c.e0bar), ("e1", c.e1bar), ("e2", c.e2bar), ("n0", n0)]
    _emit(args.format, table, pairs)
    return EXIT_OK


def _cmd_brieskorn_pg(args):
    b = brieskorn.BrieskornDescriptor(args.p, args.q, args.r)
    wx, wy, wz = b.weights
    pg = brieskorn.weighted_pg(b)
    _emit(
        args.format,
        [
            f"exponents: ({b.p}, {b.q}, {b.r})",
            f"degree: {b.degree}",
            f"weights: ({wx}, {wy}, {wz})",
            f"a-invariant: {b.a_invariant}",
            f"p_g: {pg}",
        ],
        [
            ("p", b.p),
            ("q", b.q),
            ("r", b.r),
            ("degree", b.degree),
            ("wx", wx),
            ("wy", wy),
            ("wz", wz),
            ("a", b.a_invariant),
            ("pg", pg),
        ],
    )
    return EXIT_OK


def _cmd_brieskorn_datum(args):
    d = brieskorn.fermat_datum(args.e)
    h1 = ",".join(str(v) for v in d.h1)
    _emit(
        args.format,
        [f"datum {d.label} zz={d.zz} zk={d.zk} pg={d.pg} h1={h1}"],
        [("label", d.label), ("zz", d.zz), ("zk", d.zk), ("pg", d.pg), ("h1", h1)],
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# rees


def _budget(args):
    kwargs = {}
    if getattr(args, "max_basis", None) is not None:
        kwargs["max_basis"] = args.max_basis
    if getattr(args, "max_coeff_bits", None) is not None:
        kwargs["max_coeff_bits"] = args.max_coeff_bits
    return polyalg.GroebnerBudget(**kwargs) if kwargs else None


def _cmd_rees_presentf(args):
    f = polyalg.parse_polynomial(args.poly, names=("x", "y", "z"))
    F = polyalg.extended_rees_F(f)
    _emit(args.format, [f"F = {F}"], [("F", F)])
    return EXIT_OK


def _cmd_rees_r1(args):
    F = polyalg.parse_polynomial(args.poly, names=("X", "Y", "Z", "U"))
    if F.arity != 4 or F.is_zero():
        raise DomainError("r1 needs a nonzero polynomial in X, Y, Z, U")
    dim = polyalg.singular_locus_dimension(F, budget=_budget(args))
    verdict = dim <= 1
    word = "PASS" if verdict else "FAIL"
    _emit(
        args.format,
        [f"R1: {word} (singular locus dimension {dim})"],
        [("verdict", _b(verdict)), ("singular_dimension", dim)],
    )
    return EXIT_OK if verdict else EXIT_FALSE


def _cmd_rees_doublepoint(args):
    g = polyalg.parse_polynomial(args.poly, names=("x", "y", "z"))
    verdict = polyalg.double_point_pg_test(g)
    _emit(
        args.format,
        [
            f"order of g: {g.order()}",
            f"maximal ideal certified: {_yn(verdict)}",
        ],
        [("order", g.order()), ("verdict", _b(verdict))],
    )
    return EXIT_OK if verdict else EXIT_FALSE


def _cmd_rees_stability(args):
    g = polyalg.parse_polynomial(args.poly, names=("x", "y", "z"))
    bound = args.D if args.D is not None else g.order() + 2
    verdict = polyalg.double_point_stability(g, bound)
    _emit(
        args.format,
        [f"degree bound: {bound}", f"m^2 = (y,z)m: {_yn(verdict)}"],
        [("bound", bound), ("verdict", _b(verdict))],
    )
    return EXIT_OK if verdict else EXIT_FALSE


# ---------------------------------------------------------------------------
# parser


def build_parser():
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument(
        "--format",
        choices=["table", "lines"],
        default="table",
        help="table (human) or lines (key=value per line)",
    )

    parser = argparse.ArgumentParser(
        prog="pgideals",
        description="Exact lattice, Hilbert-coefficient and Rees-algebra "
        "computations for normal surface singularities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    graph = sub.add_parser("graph", parents=[fmt], help="dual graph operations")
    graph.add_argument(
        "action",
        choices=["check", "fundamental", "canonical", "antinef", "zperp", "rational"],
    )
    graph.add_argument("file", help="graph file")
    graph.add_argument("--cycle", metavar="NAME", help="named cycle from the file")
    graph.set_defaults(func=_cmd_graph)

    hil = sub.add_parser("hilbert", parents=[fmt], help="numerical datum operations")
    hil.add_argument(
        "action",
        choices=[
            "coeffs",
            "pgtest",
            "colength",
            "n0",
            "epsilon",
            "additivity",
            "multirees",
        ],
    )
    hil.add_argument("file", help="datum file")
    hil.add_argument("--n", type=int, default=1, help="power index (default 1)")
    hil.add_argument("--m", type=int, default=1, help="second power for epsilon")
    hil.add_argument("--name", help="operate on one named datum only")
    hil.add_argument("--names", help="two comma-separated names for multirees")
    hil.add_argument(
        "--component-pgs",
        default="",
        dest="component_pgs",
        help="comma-separated component genera for additivity",
    )
    hil.set_defaults(func=_cmd_hilbert)

    brk = sub.add_parser("brieskorn", help="hypersurface family oracles")
    brksub = brk.add_subparsers(dest="action", required=True)
    bf = brksub.add_parser("fermat", parents=[fmt], help="colength table for x^e+y^e+z^e")
    bf.add_argument("e", type=int)
    bf.add_argument("--nmax", type=int, default=None)
    bf.set_defaults(func=_cmd_brieskorn_fermat)
    bp = brksub.add_parser("pg", parents=[fmt], help="weighted-homogeneous genus")
    bp.add_argument("p", type=int)
    bp.add_argument("q", type=int)
    bp.add_argument("r", type=int)
    bp.set_defaults(func=_cmd_brieskorn_pg)
    bd = brksub.add_parser("datum", parents=[fmt], help="full Fermat datum")
    bd.add_argument("e", type=int)
    bd.set_defaults(func=_cmd_brieskorn_datum)

    rees = sub.add_parser("rees", help="extended Rees algebra checks")
    reessub = rees.add_subparsers(dest="action", required=True)
    rp = reessub.add_parser("presentF", parents=[fmt], help="extended Rees presentation")
    rp.add_argument("poly", help="polynomial in x, y, z")
    rp.set_defaults(func=_cmd_rees_presentf)
    rr = reessub.add_parser("r1", parents=[fmt], help="R1 via the Jacobian ideal")
    rr.add_argument("poly", help="polynomial in X, Y, Z, U")
    rr.add_argument("--max-basis", type=int, default=None)
    rr.add_argument("--max-coeff-bits", type=int, default=None)
    rr.set_defaults(func=_cmd_rees_r1)
    rd = reessub.add_parser("doublepoint", parents=[fmt], help="order criterion for x^2+g")
    rd.add_argument("poly", help="polynomial g in y, z")
    rd.set_defaults(func=_cmd_rees_doublepoint)
    rs = reessub.add_parser("stability", parents=[fmt], help="m^2 = (y,z)m for x^2+g")
    rs.add_argument("poly", help="polynomial g in y, z")
    rs.add_argument("--D", type=int, default=None, help="degree bound (default order+2)")
    rs.set_defaults(func=_cmd_rees_stability)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (
        ParseError,
        SupportError,
        DomainError,
        InconsistentDataError,
        ClosureGuardError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
