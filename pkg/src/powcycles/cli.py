"""Command-line entry point.

Exit codes: 0 pass, 1 usage or parameter error, 2 a checked claim failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import census as cen
from .graph import PerturbParams, build, out_neighbors_closed_form, out_neighbors_oracle
from .ntheory import GraphParams, ParameterError, is_primitive_root, multiplicative_order
from .verify import (
    theorem2_stated_bound,
    verify_corollary,
    verify_lemma1_suite,
    verify_lemma2,
    verify_theorem1,
    verify_theorem2,
)

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2

SWEEP_COLUMNS = ["p", "n", "q", "r", "k", "count", "thm1_bound", "ord_pow", "thm2_bound", "thm1_ok", "thm2_ok"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fmt_set(values) -> str:
    return "{" + ", ".join(map(str, values)) + "}"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ParameterError(f"cannot write {out}: {exc}") from exc


def _params(args, n=None) -> GraphParams:
    return GraphParams(args.p, args.n if n is None else n, args.q)


def cmd_neighbors(args) -> int:
    params = _params(args)
    closed = out_neighbors_closed_form(params, args.x)
    oracle = out_neighbors_oracle(params, args.x)
    if closed == oracle:
        print(f"{_fmt_set(closed)} (oracle agrees)")
        return EXIT_OK
    print(f"{_fmt_set(closed)} (oracle disagrees: {_fmt_set(oracle)})")
    return EXIT_VIOLATION


def cmd_census(args) -> int:
    base = _params(args)
    params = PerturbParams(base, args.r) if args.r else base
    if args.method in ("reduced", "both") and args.r:
        raise ParameterError("the reduced method is only valid for r = 0")
    results = []
    if args.method in ("brute", "both"):
        graph = build(params)
        results.append(cen.closed_walk_trace_all(graph, args.k_max, args.max_vertices))
    if args.method in ("reduced", "both"):
        results.append(cen.reduced_census(params, args.k_max))
    if len(results) == 1:
        _emit(results[0].dumps(), args.out)
        return EXIT_OK
    agree = results[0].counts == results[1].counts
    doc = {"agree": agree, "censuses": [c.to_json() for c in results]}
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    if not agree:
        print("brute and reduced counts disagree", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_periodic(args) -> int:
    params = _params(args)
    counts = {k: cen.periodic_points(params, k, args.max_vertices) for k in range(1, args.k_max + 1)}
    if args.format == "json":
        doc = {
            "params": params.as_dict(),
            "method": "periodic",
            "counts": {str(k): str(v) for k, v in counts.items()},
        }
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    else:
        _emit("".join(f"{k} {v}\n" for k, v in counts.items()), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    claim = args.claim
    if claim == "thm1":
        report = verify_theorem1(_params(args), args.k_max, args.max_vertices)
    elif claim == "corollary":
        report = verify_corollary(_params(args), args.k_max, args.max_vertices)
    elif claim == "lemma2":
        report = verify_lemma2(_params(args))
    elif claim == "thm2":
        params = PerturbParams(_params(args, n=1), args.r)
        report = verify_theorem2(params, args.n_max, args.k_max, args.max_vertices)
    else:
        report = verify_lemma1_suite(args.trials, args.seed)
    _emit(report.dumps(), args.out)
    print(f"{claim}: {report.verdict}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VIOLATION


@dataclass(frozen=True)
class SweepSpec:
    p_list: tuple[int, ...]
    q_list: tuple[int, ...]
    n_range: tuple[int, ...]
    k_max: int
    r: int = 0
    method: str = "brute"
    fmt: str = "csv"
    out: str | None = None
    max_vertices: int = cen.CENSUS_LIMIT

    def tuples(self) -> list[tuple[int, int, int]]:
        """(p, n, q) combinations with gcd(q, p) = 1, sorted."""
        return sorted(
            (p, n, q)
            for p in self.p_list
            for q in self.q_list
            for n in self.n_range
            if q % p
        )


def _sweep_one(spec: SweepSpec, p: int, n: int, q: int) -> list[dict]:
    base = GraphParams(p, n, q)
    params = PerturbParams(base, spec.r) if spec.r else base
    counts = None
    if spec.method in ("brute", "both"):
        counts = cen.closed_walk_trace_all(build(params), spec.k_max, spec.max_vertices).counts
    if spec.method in ("reduced", "both"):
        reduced = cen.reduced_census(params, spec.k_max).counts
        if counts is not None and counts != reduced:
            raise RuntimeError(f"brute and reduced counts disagree at p={p} n={n} q={q}")
        counts = reduced
    ord_p = multiplicative_order(q, p, 1)
    primitive = is_primitive_root(q, p, 1)
    rows = []
    for k in range(1, spec.k_max + 1):
        count, thm1 = counts[k], (p - 1) ** k
        thm2 = theorem2_stated_bound(p, spec.r, n, k)
        thm1_ok = count == thm1 if (primitive and spec.r == 0) else count <= thm1
        rows.append(
            dict(p=p, n=n, q=q, r=spec.r, k=k, count=count, thm1_bound=thm1,
                 ord_pow=ord_p**k, thm2_bound=thm2, thm1_ok=thm1_ok, thm2_ok=count <= thm2)
        )
    return rows


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[dict]:
    if spec.method in ("reduced", "both") and spec.r:
        raise ParameterError("the reduced method is only valid for r = 0")
    jobs = spec.tuples()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(_sweep_one, [spec] * len(jobs), *zip(*jobs)))
    else:
        chunks = [_sweep_one(spec, *job) for job in jobs]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda row: (row["p"], row["n"], row["q"], row["r"], row["k"]))
    return rows


def render_sweep(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        doc = {
            "columns": SWEEP_COLUMNS,
            "rows": [
                {col: (str(v) if isinstance(v, int) and not isinstance(v, bool) else v)
                 for col, v in row.items()}
                for row in rows
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({**row, "thm1_ok": int(row["thm1_ok"]), "thm2_ok": int(row["thm2_ok"])})
    return buf.getvalue()


def cmd_sweep(args) -> int:
    spec = SweepSpec(
        tuple(args.p), tuple(args.q), tuple(args.n), args.k_max, args.r,
        args.method, args.format, args.out, args.max_vertices,
    )
    try:
        rows = run_sweep(spec, args.workers)
    except RuntimeError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_VIOLATION
    _emit(render_sweep(rows, spec.fmt), spec.out)
    return EXIT_OK


def _add_common(parser, *, n=True, k=True, r=False):
    parser.add_argument("--p", type=int, required=True)
    if n:
        parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--q", type=int, required=True)
    if k:
        parser.add_argument("--k-max", type=int, default=3)
    if r:
        parser.add_argument("--r", type=int, default=0)
    parser.add_argument("--out", default=None)
    parser.add_argument("--max-vertices", type=int, default=cen.CENSUS_LIMIT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="powcycles", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    nb = sub.add_parser("neighbors", help="out-neighbours of one vertex")
    nb.add_argument("--p", type=int, required=True)
    nb.add_argument("--n", type=int, required=True)
    nb.add_argument("--q", type=int, required=True)
    nb.add_argument("--x", type=int, required=True)
    nb.set_defaults(func=cmd_neighbors)

    cs = sub.add_parser("census", help="closed-walk counts for k = 1..k-max")
    _add_common(cs, r=True)
    cs.add_argument("--method", choices=["brute", "reduced", "both"], default="brute")
    cs.set_defaults(func=cmd_census)

    pe = sub.add_parser("periodic", help="k-periodic points of x -> q^x mod p^n")
    _add_common(pe)
    pe.add_argument("--format", choices=["text", "json"], default="text")
    pe.set_defaults(func=cmd_periodic)

    ve = sub.add_parser("verify", help="check one claim, write a JSON report")
    ve.add_argument("claim", choices=["thm1", "thm2", "corollary", "lemma1", "lemma2"])
    ve.add_argument("--p", type=int)
    ve.add_argument("--n", type=int)
    ve.add_argument("--q", type=int)
    ve.add_argument("--r", type=int, default=1)
    ve.add_argument("--k-max", type=int, default=3)
    ve.add_argument("--n-max", type=int, default=3)
    ve.add_argument("--trials", type=int, default=100)
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--out", default=None)
    ve.add_argument("--max-vertices", type=int, default=cen.CENSUS_LIMIT)
    ve.set_defaults(func=cmd_verify)

    sw = sub.add_parser("sweep", help="tabulate counts and bounds over a grid")
    sw.add_argument("--p", type=int, nargs="+", required=True)
    sw.add_argument("--q", type=int, nargs="+", required=True)
    sw.add_argument("--n", type=int, nargs="*", default=[])
    sw.add_argument("--k-max", type=int, default=3)
    sw.add_argument("--r", type=int, default=0)
    sw.add_argument("--method", choices=["brute", "reduced", "both"], default="brute")
    sw.add_argument("--format", choices=["csv", "json"], default="csv")
    sw.add_argument("--out", default=None)
    sw.add_argument("--workers", type=int, default=1)
    sw.add_argument("--max-vertices", type=int, default=cen.CENSUS_LIMIT)
    sw.set_defaults(func=cmd_sweep)
    return parser


_REQUIRED = {
    "thm1": ("p", "n", "q"),
    "corollary": ("p", "n", "q"),
    "lemma2": ("p", "n", "q"),
    "thm2": ("p", "q"),
    "lemma1": (),
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify":
            missing = [f"--{name}" for name in _REQUIRED[args.claim] if getattr(args, name) is None]
            if missing:
                raise UsageError(f"verify {args.claim} needs {' '.join(missing)}")
        return args.func(args)
    except (UsageError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
