"""Command-line front end: ``killtensors {dim,table,series,oracle,geom}``.

Exit status is 0 when every requested check passes, 1 when a check fails
or an oracle disagrees with the closed form, and 2 for usage errors and
over-budget oracle instances.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .exactnum import series_coeffs
from .repdim import cpn_killing_dim, sphere_killing_dim
from .series import g_numerator, h_numerator, verify_poincare

DIM_FUNCS = {"sphere": sphere_killing_dim, "cpn": cpn_killing_dim}


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=False)


def cmd_dim(args) -> int:
    dim = DIM_FUNCS[args.space](args.n, args.k)
    if args.format == "json":
        _emit(_json({"space": args.space, "n": args.n, "k": args.k, "dim": str(dim)}))
    else:
        _emit(str(dim))
    return 0


def _table_ks(max_k: int) -> list[int]:
    # k = 0 is the trivial all-ones column; shown only when asked for explicitly
    return [0] if max_k == 0 else list(range(1, max_k + 1))


def cmd_table(args) -> int:
    ks = _table_ks(args.max_k)
    rows = [(n, k, cpn_killing_dim(n, k)) for n in range(1, args.max_n + 1) for k in ks]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "dim"])
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    elif args.format == "json":
        _emit(_json([{"n": n, "k": k, "dim": str(d)} for n, k, d in rows]))
    else:
        width = max(len(str(d)) for _, _, d in rows) + 2
        _emit("n\\k" + "".join(f"{k:>{width}}" for k in ks))
        for n in range(1, args.max_n + 1):
            _emit(f"{n:<3}" + "".join(f"{cpn_killing_dim(n, k):>{width}}" for k in ks))
    return 0


def cmd_series(args) -> int:
    if args.space == "cpn":
        num, exponent = h_numerator(args.n), 4 * args.n - 1
    else:
        num, exponent = g_numerator(args.n), 2 * args.n - 1
    out = {"space": args.space, "n": args.n, "numerator": num.format("t"), "den_exponent": exponent}
    ok = True
    if args.check:
        if args.space == "cpn":
            report = verify_poincare(args.n, args.terms)
            ok, out["check"] = report.ok, report.summary()
        else:
            from .exactnum import RatFunc
            from .series import ONE_MINUS_T

            coeffs = series_coeffs(RatFunc(num, ONE_MINUS_T**exponent), args.terms)
            bad = next((k for k, c in enumerate(coeffs) if c != sphere_killing_dim(args.n, k)), None)
            ok = bad is None
            out["check"] = f"verified to {args.terms} terms" if ok else f"mismatch at coefficient {bad}"
    if args.format == "json":
        _emit(_json(out))
    else:
        _emit(f"numerator: {out['numerator']}")
        _emit(f"denominator: (1-t)^{exponent}")
        if "check" in out:
            _emit(out["check"])
    return 0 if ok else 1


def cmd_oracle(args) -> int:
    from . import tensorlab

    try:
        if args.kind == "generate":
            g = tensorlab.generation_rank(args.n, args.k)
            verdict = "SURJECTIVE" if g.surjective else "NOT SURJECTIVE"
            out = {
                "kind": "generate",
                "n": args.n,
                "k": args.k,
                "source": g.source_dim,
                "target": g.target_dim,
                "rank": g.rank,
                "kernel": g.kernel_dim,
                "verdict": verdict,
            }
            text = f"source={g.source_dim} target={g.target_dim} rank={g.rank} {verdict} (kernel {g.kernel_dim})"
            ok = g.surjective
        else:
            if args.kind == "cpn":
                dim, closed = tensorlab.oracle_cpn_dim(args.n, args.k), cpn_killing_dim(args.n, args.k)
            else:
                dim, closed = tensorlab.oracle_sphere_dim(args.n, args.k), sphere_killing_dim(args.n, args.k)
            ok = dim == closed
            verdict = "AGREE" if ok else "DISAGREE"
            out = {"kind": args.kind, "n": args.n, "k": args.k, "dim": str(dim), "closed_form": str(closed), "verdict": verdict}
            text = f"dim={dim} (closed form {closed}: {verdict})"
    except tensorlab.OracleTooLarge as exc:
        sys.stderr.write(f"error: {exc} (set {tensorlab.BUDGET_ENV} to raise it)\n")
        return 2
    _emit(_json(out) if args.format == "json" else text)
    return 0 if ok else 1


def cmd_geom(args) -> int:
    from .geomlab import run_battery

    try:
        results = run_battery(args.space, args.n, samples=args.samples, tol=args.tol, seed=args.seed)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    if args.format == "json":
        _emit(_json([{"check": r.name, "deviation": r.deviation, "tol": r.tol, "passed": r.passed} for r in results]))
    else:
        for r in results:
            _emit(f"{r.name}: {'PASS' if r.passed else 'FAIL'} (max deviation {r.deviation:.3e})")
    return 0 if all(r.passed for r in results) else 1


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="killtensors", description="Killing-tensor dimensions and identity checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=["text", "json", "csv"], default="text")
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", parents=[common], help="closed-form dimension")
    p.add_argument("space", choices=sorted(DIM_FUNCS))
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_nonneg, required=True)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("table", parents=[common], help="CP_n dimension table")
    p.add_argument("--max-n", type=_positive, default=7)
    p.add_argument("--max-k", type=_nonneg, default=5)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("series", parents=[common], help="Poincare series numerators")
    p.add_argument("--space", choices=["cpn", "sphere"], default="cpn")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--terms", type=_positive, default=100)
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("oracle", parents=[common], help="brute-force tensor oracle")
    p.add_argument("--kind", choices=["cpn", "sphere", "generate"], default="cpn")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_nonneg, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("geom", parents=[common], help="curvature and connection identity battery")
    p.add_argument("--space", choices=["sphere", "cpn"], required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--samples", type=_positive, default=5)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_geom)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv" and args.command != "table":
        parser.error("--format csv is only available for 'table'")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
