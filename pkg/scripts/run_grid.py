"""Run every verifier over the default desk grid and write one JSON report each.

    python scripts/run_grid.py --out-dir reports/
"""

import argparse
import json
from math import gcd
from pathlib import Path

from powcycles.graph import PerturbParams
from powcycles.ntheory import GraphParams
from powcycles.verify import (
    verify_corollary,
    verify_lemma1_suite,
    verify_lemma2,
    verify_theorem1,
    verify_theorem2,
)

P_LIST, N_LIST, Q_LIST, K_MAX = (3, 5, 7), (1, 2, 3), (2, 3, 5), 5


def grid_reports():
    for p in P_LIST:
        for n in N_LIST:
            for q in Q_LIST:
                if gcd(p, q) != 1:
                    continue
                params = GraphParams(p, n, q)
                yield f"thm1_p{p}_n{n}_q{q}", verify_theorem1(params, K_MAX)
                yield f"corollary_p{p}_n{n}_q{q}", verify_corollary(params, K_MAX)
                if n >= 2:
                    yield f"lemma2_p{p}_n{n}_q{q}", verify_lemma2(params)
    for r in (1, 2):
        yield f"thm2_p3_q2_r{r}", verify_theorem2(PerturbParams(GraphParams(3, 1, 2), r), 3, 3)
    yield "lemma1_seed1", verify_lemma1_suite(100, 1)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="reports")
    args = parser.parse_args()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = {}
    for name, report in grid_reports():
        (out_dir / f"{name}.json").write_text(report.dumps())
        summary[name] = report.verdict
        if report.claim == "thm2":
            for family in ("thm2_stated", "thm2_recurrence"):
                summary[f"{name}:{family}"] = report.subset(family).verdict
    (out_dir / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    for name, verdict in sorted(summary.items()):
        print(f"{verdict:<10} {name}")


if __name__ == "__main__":
    main()
