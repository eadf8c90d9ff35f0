"""Command-line front end.

Mutation indices given with --k are 1-based on the command line and
converted to the 0-based indices used by the library.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .completion import census_tsv, cluster_scatter_rank2, wall_census
from .diagram import check_consistency, equivalent
from .errors import ScatError
from .fans import check_refinement, mutation_fan, scat_fan
from .lattice import InitialData
from .theta import clear_frozen, default_basepoint, theta_broken, theta_pop
from .transport import apply_M_k, chamber_fan, cluster_subdiagram, transport_order, verify_mutation_equiv

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CHECKS = ("consistency", "equivalence", "refinement", "mutation-equiv", "theta-oracle")
THETA_ORDER_CAP = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--matrix", type=Path, help="exchange matrix JSON")
    common.add_argument("--diagram", type=Path, help="diagram JSON")
    common.add_argument("--order", type=int, default=8, help="truncation order k")
    common.add_argument("--depth", type=int, default=12, help="mutation search depth")
    common.add_argument("--k", type=_csv_ints, help="1-based mutation index (or sequence for mutate)")
    common.add_argument("--m0", type=_csv_ints, help="theta exponent, comma separated")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", type=Path, help="output file (default: stdout)")
    common.add_argument("--format", choices=("json", "tsv", "svg"), default="json")

    parser = _Parser(prog="scatlab", description="Exact scattering diagrams and cluster scattering fans.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    helps = {
        "scatter": "consistent diagram (rank 2) or chamber subdiagram (rank 3+)",
        "mutate": "mutate the exchange matrix along --k",
        "transport": "transport a diagram across mutation at --k",
        "chambers": "chamber fan by mutation search",
        "fan": "scattering fan of a diagram",
        "mutation-fan": "mutation fan, iterated until stable",
        "pop": "theta function as a path-ordered product image",
        "theta": "theta function from broken lines (rank 2)",
        "render": "SVG picture of a rank-2 diagram or fan",
    }
    for verb, text in helps.items():
        sp = sub.add_parser(verb, parents=[common], help=text)
        if verb == "render":
            sp.add_argument("--fan", type=Path, help="fan JSON")
    sp = sub.add_parser("check", parents=[common], help="verification report, exit 1 on FAIL")
    sp.add_argument("what", choices=CHECKS)
    sp.add_argument("--other", type=Path, help="second diagram for equivalence")
    sp.add_argument("--box", type=int, default=3, help="g-vector box for theta-oracle")
    return parser


def _threads() -> int:
    raw = os.environ.get("SCATLAB_THREADS", "")
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise UsageError(f"SCATLAB_THREADS must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise UsageError("SCATLAB_THREADS must be a positive integer")
    return n


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for {args.verb}")
    return value


def _matrix(args):
    return io.read_matrix(_need(args, "matrix"))


def _index(args, data) -> int:
    ks = _need(args, "k")
    if len(ks) != 1:
        raise UsageError("--k takes a single index here")
    k = ks[0]
    if not 1 <= k <= data.n_uf:
        raise UsageError(f"--k must lie in 1..{data.n_uf}")
    return k - 1


def _diagram_for(args):
    """--diagram if given, otherwise computed from --matrix."""
    if args.diagram is not None:
        return io.read_diagram(args.diagram)
    B = _matrix(args)
    if B.n_uf == 2:
        return cluster_scatter_rank2(B, args.order)
    return cluster_subdiagram(B, args.depth, args.order)


def _emit(args, text: str):
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)


def _report(args, ok: bool, detail: str = "") -> int:
    line = f"{args.what}: {'PASS' if ok else 'FAIL'}" + (f" {detail}" if detail else "") + "\n"
    _emit(args, line)
    return EXIT_OK if ok else EXIT_FAIL


# verbs -------------------------------------------------------------------------------


def cmd_scatter(args):
    B = _matrix(args)
    if args.format == "tsv":
        _emit(args, census_tsv(wall_census(B, args.order)))
        return EXIT_OK
    D = _diagram_for(args)
    _emit(args, _svg(D) if args.format == "svg" else io.serialize("diagram", D))
    return EXIT_OK


def cmd_mutate(args):
    B = _matrix(args)
    seq = []
    for k in _need(args, "k"):
        if not 1 <= k <= B.n_uf:
            raise UsageError(f"--k entries must lie in 1..{B.n_uf}")
        seq.append(k - 1)
    _emit(args, io.serialize("matrix", B.mutate(seq)))
    return EXIT_OK


def cmd_transport(args):
    if args.diagram is not None:
        D = io.read_diagram(args.diagram)
        k = _index(args, D.data)
        out = apply_M_k(D, k)
    else:
        B = _matrix(args)
        data = InitialData.of(B)
        if data.n_uf != 2:
            raise UsageError("transport from --matrix needs rank 2; pass --diagram otherwise")
        k = _index(args, data)
        big = cluster_scatter_rank2(B, transport_order(data.b, k, args.order))
        out = apply_M_k(big, k).truncate(args.order)
    _emit(args, io.serialize("diagram", out))
    return EXIT_OK


def cmd_chambers(args):
    fan = chamber_fan(_matrix(args), args.depth)
    _emit(args, io.dumps(io.chamber_fan_to_doc(fan)))
    return EXIT_OK


def cmd_fan(args):
    fan = scat_fan(_diagram_for(args))
    _emit(args, _svg(fan) if args.format == "svg" else io.serialize("fan", fan))
    return EXIT_OK


def cmd_mutation_fan(args):
    fan = mutation_fan(_matrix(args))
    _emit(args, io.serialize("fan", fan))
    return EXIT_OK


def cmd_pop(args):
    t = theta_pop(_matrix(args), _need(args, "m0"), depth=args.depth, k=args.order)
    _emit(args, io.serialize("laurent", t.to_laurent()))
    return EXIT_OK


def _random_basepoint(n: int, seed: int):
    rng = random.Random(seed)
    return tuple(Fraction(rng.randint(1, 997), rng.randint(1, 997)) for _ in range(n))


def cmd_theta(args):
    B = _matrix(args)
    data = InitialData.of(B)
    if data.n_uf != 2:
        raise UsageError("broken lines are implemented in rank 2 only")
    D = cluster_scatter_rank2(B, args.order)
    Q = default_basepoint(2) if args.seed == 0 else _random_basepoint(2, args.seed)
    t = theta_broken(D, _need(args, "m0"), Q, args.order)
    _emit(args, io.serialize("laurent", t.to_laurent()))
    return EXIT_OK


def _svg(obj) -> str:
    from .plotting import render  # matplotlib is only loaded when a picture is asked for

    return render(obj)


def cmd_render(args):
    if args.fan is not None:
        obj = io.fan_from_doc(io.loads(args.fan.read_text()))
    else:
        obj = io.read_diagram(_need(args, "diagram"))
    _emit(args, _svg(obj))
    return EXIT_OK


def cmd_check(args):
    what = args.what
    if what == "consistency":
        report = check_consistency(_diagram_for(args), args.order)
        detail = f"({report.joints_checked} joints)" if report.passed else str(report)
        return _report(args, report.passed, detail)
    if what == "equivalence":
        D = io.read_diagram(_need(args, "diagram"))
        D2 = io.read_diagram(_need(args, "other"))
        if D.data != D2.data:
            raise UsageError("the two diagrams have different initial data")
        return _report(args, equivalent(D, D2, min(D.order, D2.order, args.order)))
    if what == "refinement":
        B = _matrix(args)
        D = cluster_scatter_rank2(B, args.order) if B.n_uf == 2 else cluster_subdiagram(B, args.depth, args.order)
        result = check_refinement(scat_fan(D), mutation_fan(B))
        return _report(args, result.ok, "" if result.ok else f"witness {list(result.witness.generators)}")
    if what == "mutation-equiv":
        B = _matrix(args)
        k = _index(args, InitialData.of(B))
        return _report(args, verify_mutation_equiv(B, k, args.order))
    if what == "theta-oracle":
        return _check_theta_oracle(args)
    raise UsageError(f"unknown check {what}")


def _check_theta_oracle(args):
    from .cluster_oracle import ClusterOracle

    B = _matrix(args)
    P = InitialData.of(B).exchange
    P = type(P).from_rows([list(r) for r in P.square]).principal()
    oracle = ClusterOracle(P)
    monomials = oracle.cluster_monomials(args.box)
    fan = chamber_fan(P, args.depth)
    bad = []
    for g, expected in sorted(monomials.items()):
        # cluster monomials are polynomials in zeta: raise k until nothing is truncated
        k = args.order
        theta = theta_pop(P, g, depth=args.depth, k=k, fan=fan)
        while theta.series.max_degree() >= k and k < THETA_ORDER_CAP:
            k *= 2
            theta = theta_pop(P, g, depth=args.depth, k=k, fan=fan)
        if clear_frozen(theta).to_laurent() != expected:
            bad.append(g)
    detail = f"({len(monomials)} monomials)" if not bad else f"mismatch at {[list(g) for g in bad]}"
    return _report(args, not bad, detail)


COMMANDS = {
    "scatter": cmd_scatter, "mutate": cmd_mutate, "transport": cmd_transport,
    "chambers": cmd_chambers, "fan": cmd_fan, "mutation-fan": cmd_mutation_fan,
    "pop": cmd_pop, "theta": cmd_theta, "render": cmd_render, "check": cmd_check,
}


def _glue_negative_values(argv):
    """Let ``--m0 -1,0`` through: argparse would read -1,0 as an option."""
    out, it = [], iter(argv)
    for a in it:
        if a in ("--m0", "--k"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parser.parse_args(_glue_negative_values(argv))
        _threads()
        return COMMANDS[args.verb](args)
    except UsageError as exc:
        print(f"scatlab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ScatError, OSError, ValueError) as exc:
        print(f"scatlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
