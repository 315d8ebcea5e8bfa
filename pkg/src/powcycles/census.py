"""Exact closed-walk and periodic-point counts.

A "k-cycle with marked initial vertex" is a closed walk of length k, so
the count is trace(A**k). All arithmetic is on Python ints.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .blockalg import Matrix, mat_pow, trace
from .graph import AnyParams, ExpGraph, PerturbParams, radius
from .ntheory import GraphParams, ParameterError, mod_pow

CENSUS_LIMIT = 100_000


@dataclass
class Census:
    params: dict
    method: str
    counts: dict[int, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "params": self.params,
            "method": self.method,
            "counts": {str(k): str(v) for k, v in sorted(self.counts.items())},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> Census:
        counts = {int(k): int(v) for k, v in data["counts"].items()}
        return cls(data["params"], data["method"], counts)


def _census_guard(vertices: int, limit: int) -> None:
    if vertices > limit:
        raise ParameterError(
            f"{vertices} vertices exceeds the census limit {limit} (use --max-vertices)"
        )


def _returns_from(out, start: int, k_max: int) -> list[int]:
    """Walks of length 1..k_max from start that end back at start."""
    frontier = {start: 1}
    returns = []
    for _ in range(k_max):
        nxt: dict[int, int] = {}
        for v, ways in frontier.items():
            for t in out[v]:
                nxt[t] = nxt.get(t, 0) + ways
        frontier = nxt
        returns.append(frontier.get(start, 0))
    return returns


def closed_walk_trace_all(
    graph: ExpGraph, k_max: int, limit: int = CENSUS_LIMIT, workers: int = 1
) -> Census:
    if k_max < 1:
        raise ParameterError("k_max must be >= 1")
    _census_guard(graph.vertex_count, limit)
    starts = range(graph.vertex_count)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            per_start = list(pool.map(lambda s: _returns_from(graph.out, s, k_max), starts))
    else:
        per_start = [_returns_from(graph.out, s, k_max) for s in starts]
    totals = [sum(col) for col in zip(*per_start)]
    counts = {k: totals[k - 1] for k in range(1, k_max + 1)}
    return Census(_params_dict(graph.params), "brute", counts)


def closed_walk_trace(graph: ExpGraph, k: int, limit: int = CENSUS_LIMIT) -> int:
    if k < 1:
        raise ParameterError("k must be >= 1")
    return closed_walk_trace_all(graph, k, limit).counts[k]


def subgroup(q: int, p: int) -> list[int]:
    """Residues generated by q mod p."""
    seen, value = [], 1
    while True:
        seen.append(value)
        value = value * q % p
        if value == 1:
            return sorted(seen)


def level_one_matrix(params: GraphParams) -> Matrix:
    """p x p adjacency at n = 1: every row is the indicator of <q mod p>."""
    row = [0] * params.p
    for t in subgroup(params.q % params.p, params.p):
        row[t] = 1
    return [row[:] for _ in range(params.p)]


def reduced_trace(params: AnyParams, k: int) -> int:
    """trace(A_1**k), which equals the level-n count for every n."""
    if isinstance(params, PerturbParams) and params.r > 0:
        raise ParameterError("the level reduction is only valid for r = 0")
    if k < 1:
        raise ParameterError("k must be >= 1")
    base = params.base if isinstance(params, PerturbParams) else params
    return trace(mat_pow(level_one_matrix(base), k))


def reduced_census(params: AnyParams, k_max: int) -> Census:
    counts = {k: reduced_trace(params, k) for k in range(1, k_max + 1)}
    return Census(_params_dict(params), "reduced", counts)


def f_map(params: GraphParams, x: int) -> int:
    if not 0 <= x < params.modulus:
        raise ParameterError(f"vertex {x} outside [0, {params.modulus})")
    return mod_pow(params.q, x, params.modulus)


def periodic_points(params: GraphParams, k: int, limit: int = CENSUS_LIMIT) -> int:
    """Number of x with f^k(x) = x, where f(x) = q**x mod p**n."""
    if k < 1:
        raise ParameterError("k must be >= 1")
    _census_guard(params.modulus, limit)
    table = [f_map(params, x) for x in range(params.modulus)]
    count = 0
    for x in range(params.modulus):
        v = x
        for _ in range(k):
            v = table[v]
        count += v == x
    return count


def _params_dict(params: AnyParams) -> dict:
    return {**params.as_dict(), "r": radius(params)}
