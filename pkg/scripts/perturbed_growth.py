"""Tabulate perturbed closed-walk counts against n, with per-level increments.

Counts should grow at most linearly in n while the vertex count grows as p**n.

    python scripts/perturbed_growth.py --p 3 --q 2 --r 1 --n-max 5 --k-max 3
"""

import argparse

from powcycles.census import closed_walk_trace_all
from powcycles.graph import PerturbParams, build_perturbed_graph
from powcycles.ntheory import GraphParams
from powcycles.verify import theorem2_increment


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=int, default=3)
    parser.add_argument("--q", type=int, default=2)
    parser.add_argument("--r", type=int, default=1)
    parser.add_argument("--n-max", type=int, default=5)
    parser.add_argument("--k-max", type=int, default=3)
    args = parser.parse_args()

    previous = None
    print("n,vertices,k,count,increment,increment_bound")
    for n in range(1, args.n_max + 1):
        params = PerturbParams(GraphParams(args.p, n, args.q), args.r)
        graph = build_perturbed_graph(params)
        counts = closed_walk_trace_all(graph, args.k_max).counts
        for k, c in counts.items():
            inc = "" if previous is None else c - previous[k]
            print(f"{n},{graph.vertex_count},{k},{c},{inc},{theorem2_increment(args.p, args.r, k)}")
        previous = counts


if __name__ == "__main__":
    main()
