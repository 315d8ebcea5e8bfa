"""Claim-level verifiers producing VerificationReport records."""

from __future__ import annotations

import itertools
import random

from .blockalg import (
    BlockFamily,
    assemble_block_constant,
    block_trace,
    mat_mul,
    identity,
    random_block_family,
)
from .census import (
    CENSUS_LIMIT,
    closed_walk_trace_all,
    level_one_matrix,
    periodic_points,
    subgroup,
)
from .graph import (
    PerturbParams,
    build_graph,
    build_perturbed_graph,
    check_fact_i,
    check_fact_ii,
    extract_blocks,
)
from .ntheory import GraphParams, ParameterError, is_primitive_root, multiplicative_order
from .report import VerificationReport

LEMMA1_R = (1, 2, 3, 5)
LEMMA1_D = (1, 2, 3)
LEMMA1_BOUNDS = (1, 5)
LEMMA1_K_MAX = 6


def verify_theorem1(params: GraphParams, k_max: int, limit: int = CENSUS_LIMIT) -> VerificationReport:
    p, n = params.p, params.n
    census = closed_walk_trace_all(build_graph(params), k_max, limit)
    primitive = is_primitive_root(params.q, p, 1)
    ord_p = multiplicative_order(params.q, p, 1)
    report = VerificationReport("thm1", params.as_dict())
    predicted_ok = True
    for k in range(1, k_max + 1):
        observed, bound = census.counts[k], (p - 1) ** k
        report.add(k, observed, bound, observed == bound if primitive else observed <= bound)
        predicted_ok &= observed == ord_p**k
    report.notes.append(f"q primitive mod p: {primitive}; branch: {'equality' if primitive else 'bound'}")
    report.notes.append(f"ord_p(q) = {ord_p}; prediction C(k) = ord_p(q)^k matched: {predicted_ok}")
    ord_pn = multiplicative_order(params.q, p, n)
    report.notes.append(f"ord_(p^n)(q) = {ord_pn}")
    if primitive and not is_primitive_root(params.q, p, n):
        report.notes.append("finding: q is primitive mod p but not mod p^n")
    return report


def verify_corollary(params: GraphParams, k_max: int, limit: int = CENSUS_LIMIT) -> VerificationReport:
    report = VerificationReport("corollary", params.as_dict())
    for k in range(1, k_max + 1):
        observed, bound = periodic_points(params, k, limit), (params.p - 1) ** k
        report.add(k, observed, bound, observed <= bound)
        if observed == bound:
            report.notes.append(f"k={k}: equality, strict 'less than' fails")
    return report


def _a1_shape_failures(params: GraphParams) -> int:
    """Rows of the built level-1 matrix differing from the subgroup indicator."""
    level1 = build_graph(GraphParams(params.p, 1, params.raw_q)).dense()
    expected = level_one_matrix(params)
    bad = sum(row != want for row, want in zip(level1, expected))
    bad += sum(row[0] != 0 for row in level1)
    return bad


def verify_lemma2(params: GraphParams) -> VerificationReport:
    if params.n < 2:
        raise ParameterError("Lemma 2 compares levels n and n-1; needs n >= 2")
    report = VerificationReport("lemma2", params.as_dict())
    for check in (check_fact_i, check_fact_ii):
        sub = check(params)
        failures = sum(not row.satisfied for row in sub.rows)
        report.add(sub.claim, failures, 0, failures == 0)
        report.notes.extend(f"{sub.claim}: {note}" for note in sub.notes)
    blocks = extract_blocks(build_graph(params))
    lower = build_graph(params.lower())
    mismatched = len(blocks.residual_rows) + (not blocks.block_sum_matches(lower))
    report.add("block_sum", mismatched, 0, mismatched == 0)
    shape = _a1_shape_failures(params)
    report.add("a1_shape", shape, 0, shape == 0)
    members = subgroup(params.q % params.p, params.p)
    report.notes.append(f"A_1 row indicator: {members}")
    return report


def theorem2_stated_bound(p: int, r: int, n: int, k: int) -> int:
    return p + r * p * (2 * p * (2 * r + 1)) ** k * (n - 1)


def theorem2_increment(p: int, r: int, k: int) -> int:
    return r * p * (2 * (2 * r + 1) * p) ** k


def verify_theorem2(
    params: PerturbParams, n_max: int, k_max: int, limit: int = CENSUS_LIMIT
) -> VerificationReport:
    """Audit the stated closed-form bound and the proof's per-level recurrence.

    Both families go into one report, told apart by Row.family; use
    report.subset(...) for a per-family verdict.
    """
    p, r, q = params.p, params.r, params.base.raw_q
    report = VerificationReport("thm2", {"p": p, "q": q, "r": r, "n_max": n_max, "k_max": k_max})
    counts: dict[int, dict[int, int]] = {}
    for n in range(1, n_max + 1):
        level = PerturbParams(GraphParams(p, n, q), r)
        counts[n] = closed_walk_trace_all(build_perturbed_graph(level), k_max, limit).counts
        if n >= 2:
            blocks = extract_blocks(build_perturbed_graph(level))
            report.notes.append(
                f"n={n}: block decomposition residual rows = {len(blocks.residual_rows)}"
                f" (claimed < 2rp = {2 * r * p})"
            )
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            c = counts[n][k]
            bound = theorem2_stated_bound(p, r, n, k)
            report.add([n, k], c, bound, c <= bound, family="thm2_stated")
            if c > bound:
                report.notes.append(
                    f"stated bound fails at n={n}, k={k}: c={c} > {bound};"
                    " first term may have been meant as p^k or ((2r+1)p)^k"
                )
    for n in range(2, n_max + 1):
        for k in range(1, k_max + 1):
            bound = counts[n - 1][k] + theorem2_increment(p, r, k)
            report.add([n, k], counts[n][k], bound, counts[n][k] <= bound, family="thm2_recurrence")
    return report


def _noncommuting_family() -> BlockFamily:
    return BlockFamily.of([[[0, 1], [0, 0]], [[0, 0], [1, 0]]])


def _lemma1_upto(family: BlockFamily, k_max: int) -> list[bool]:
    """verify_lemma1 for k = 1..k_max, sharing the running powers."""
    m = assemble_block_constant(family)
    s = family.block_sum()
    m_pow, s_pow = identity(len(m)), identity(family.d)
    results = []
    for _ in range(k_max):
        m_pow, s_pow = mat_mul(m_pow, m), mat_mul(s_pow, s)
        results.append(block_trace(m_pow, family.d) == s_pow)
    return results


def verify_lemma1_suite(
    trials: int,
    seed: int,
    rs=LEMMA1_R,
    ds=LEMMA1_D,
    bounds=LEMMA1_BOUNDS,
    k_max: int = LEMMA1_K_MAX,
) -> VerificationReport:
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    report = VerificationReport(
        "lemma1",
        {"trials": trials, "seed": seed, "r": list(rs), "d": list(ds), "bound": list(bounds), "k_max": k_max},
    )
    master = random.Random(seed)
    noncommuting = 0
    for r, d, bound in itertools.product(rs, ds, bounds):
        held = total = 0
        for _ in range(trials):
            family = random_block_family(master.getrandbits(64), r, d, bound)
            noncommuting += family.has_noncommuting_pair()
            outcomes = _lemma1_upto(family, k_max)
            held += sum(outcomes)
            total += len(outcomes)
        report.add(f"r={r},d={d},bound={bound}", held, total, held == total)
    forced = _lemma1_upto(_noncommuting_family(), k_max)
    report.add("forced_noncommuting", sum(forced), len(forced), all(forced))
    report.notes.append(f"random families with a noncommuting pair: {noncommuting}")
    return report
