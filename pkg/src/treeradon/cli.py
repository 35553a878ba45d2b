"""Command-line interface.

Subcommands: gen-tree, radon, invert, w2, plan, interpolate, reconstruct,
verify. Outputs are pure functions of (inputs, flags, seed): repeated runs
produce byte-identical files. Exit codes: 0 success, 1 domain/validation
failure, 2 usage error or malformed input file.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .errors import DomainError, FileFormatError
from .generate import SuiteConfig, gen_tree
from .radon import radon_forward, radon_invert, radon_oracle, reconstruct_measure
from .rationals import format_rational, parse_rational
from .transport import interpolate, optimal_plan
from .verify import run_suite

USAGE_ERROR = 2
DOMAIN_ERROR = 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeradon",
        description="Exact optimal transport and perpendicular Radon "
                    "transforms on metric trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-tree", help="generate a random tree file")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--max-vertices", type=int, default=8)
    p.add_argument("--mode", choices=("finite", "complete"), default="complete")
    p.add_argument("--min-valency", type=int, default=3)
    p.add_argument("--max-valency", type=int, default=5)
    p.add_argument("--max-denominator", type=int, default=12)
    p.add_argument("--out", required=True)

    p = sub.add_parser("radon", help="forward transform of a vertex function")
    p.add_argument("tree")
    p.add_argument("h")
    p.add_argument("--out", required=True)

    p = sub.add_parser("invert", help="invert a flag table")
    p.add_argument("tree")
    p.add_argument("table")
    p.add_argument("--total", required=True, help="the function total, as p/q")
    p.add_argument("--out", required=True)

    p = sub.add_parser("w2", help="squared transport distance and a plan")
    p.add_argument("tree")
    p.add_argument("mu")
    p.add_argument("nu")
    p.add_argument("--out", help="optional plan file")

    p = sub.add_parser("plan", help="optimal plan between two measures")
    p.add_argument("tree")
    p.add_argument("mu")
    p.add_argument("nu")
    p.add_argument("--out", required=True)

    p = sub.add_parser("interpolate", help="displacement interpolation")
    p.add_argument("tree")
    p.add_argument("mu")
    p.add_argument("nu")
    p.add_argument("--t", required=True, help="parameter in [0,1], as p/q")
    p.add_argument("--out", required=True)

    p = sub.add_parser("reconstruct",
                       help="recover a measure from its projection oracle")
    p.add_argument("tree")
    p.add_argument("hidden", help="measure file served through the oracle")
    p.add_argument("--skeleton", help="comma-separated edge ids (default: all)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="run the property suite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--max-vertices", type=int, default=8)
    p.add_argument("--min-valency", type=int, default=3)
    p.add_argument("--max-valency", type=int, default=5)
    p.add_argument("--max-atoms", type=int, default=4)
    p.add_argument("--max-denominator", type=int, default=12)
    p.add_argument("--inject-fault", action="store_true",
                   help="self-test: mutate one check so the suite must fail")
    p.add_argument("--out", help="report file")

    return parser


def _cmd_gen_tree(args) -> int:
    config = SuiteConfig(
        seed=args.seed,
        max_vertices=args.max_vertices,
        min_valency=args.min_valency,
        max_valency=args.max_valency,
        max_denominator=args.max_denominator,
    )
    tree = gen_tree(config, mode=args.mode)
    io.save_tree(tree, args.out)
    complete = "complete" if tree.geodesically_complete else "has leaves"
    valencies = ",".join(str(k) for k in sorted(tree.valency_profile.values()))
    print(f"wrote {args.out}: {len(tree.vertices)} vertices, "
          f"{len(tree.edges)} edges, valencies [{valencies}], {complete}")
    return 0


def _cmd_radon(args) -> int:
    tree = io.load_tree(args.tree)
    h = io.load_vertex_function(tree, args.h)
    io.save_flag_table(radon_forward(tree, h), args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_invert(args) -> int:
    tree = io.load_tree(args.tree)
    table = io.load_flag_table(tree, args.table)
    total = parse_rational(args.total)
    io.save_vertex_function(radon_invert(tree, table, total), args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_w2(args) -> int:
    tree = io.load_tree(args.tree)
    mu = io.load_measure(tree, args.mu)
    nu = io.load_measure(tree, args.nu)
    plan = optimal_plan(tree, mu, nu)
    print(format_rational(plan.squared_cost))
    if args.out:
        io.save_plan(tree, plan, args.out)
    return 0


def _cmd_plan(args) -> int:
    tree = io.load_tree(args.tree)
    mu = io.load_measure(tree, args.mu)
    nu = io.load_measure(tree, args.nu)
    io.save_plan(tree, optimal_plan(tree, mu, nu), args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_interpolate(args) -> int:
    tree = io.load_tree(args.tree)
    mu = io.load_measure(tree, args.mu)
    nu = io.load_measure(tree, args.nu)
    t = parse_rational(args.t)
    if not 0 <= t <= 1:
        raise DomainError(f"interpolation parameter {t} outside [0, 1]")
    plan = optimal_plan(tree, mu, nu)
    io.save_measure(tree, interpolate(tree, plan, t), args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_reconstruct(args) -> int:
    tree = io.load_tree(args.tree)
    hidden = io.load_measure(tree, args.hidden)
    skeleton = None
    if args.skeleton:
        try:
            skeleton = [int(x) for x in args.skeleton.split(",") if x.strip()]
        except ValueError:
            raise FileFormatError(f"bad skeleton list {args.skeleton!r}") from None
    result = reconstruct_measure(tree, radon_oracle(tree, hidden), skeleton)
    payload = {
        "measure": io.measure_to_dict(tree, result.measure),
        "provenance": {
            "interior_total": format_rational(result.interior_total),
            "interior_reads": [
                {
                    "edge": read.edge,
                    "atoms": [
                        {"offset": format_rational(o), "mass": format_rational(m)}
                        for o, m in read.atoms
                    ],
                }
                for read in result.edge_reads
            ],
            "flag_subtractions": [
                {
                    "x": row.flag.vertex,
                    "e": row.flag.edges[0],
                    "f": row.flag.edges[1],
                    "raw": format_rational(row.raw_mass),
                    "interior": format_rational(row.interior_subtracted),
                    "vertex_value": format_rational(row.vertex_value),
                }
                for row in result.flag_rows
            ],
            "vertex_values": {
                str(v): format_rational(x)
                for v, x in sorted(result.vertex_part.values.items(),
                                   key=lambda item: str(item[0]))
            },
        },
    }
    io.save_json(payload, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_verify(args) -> int:
    config = SuiteConfig(
        seed=args.seed,
        max_vertices=args.max_vertices,
        min_valency=args.min_valency,
        max_valency=args.max_valency,
        max_atoms=args.max_atoms,
        max_denominator=args.max_denominator,
        trials=args.trials,
        inject_fault=args.inject_fault,
    )
    report = run_suite(config)
    if args.out:
        io.save_json(report.to_dict(), args.out)
    for result in report.properties:
        status = "ok" if result.failures == 0 else "FAIL"
        print(f"{status:4s} {result.name}: {result.passes}/{result.trials}")
    print(f"suite {'passed' if report.ok else 'FAILED'} "
          f"in {report.duration_seconds:.2f}s", file=sys.stderr)
    return 0 if report.ok else 1


_HANDLERS = {
    "gen-tree": _cmd_gen_tree,
    "radon": _cmd_radon,
    "invert": _cmd_invert,
    "w2": _cmd_w2,
    "plan": _cmd_plan,
    "interpolate": _cmd_interpolate,
    "reconstruct": _cmd_reconstruct,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return _HANDLERS[args.command](args)
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN_ERROR


if __name__ == "__main__":
    sys.exit(main())
