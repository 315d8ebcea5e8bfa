"""Exit criteria. Each test records one PASS/FAIL line shown in the summary."""

import contextlib
import io
import json
import time

import pytest

from conftest import ACCEPTANCE_LINES, grid_triples, nonprimitive_triples, primitive_triples
from powcycles.census import closed_walk_trace_all, periodic_points, reduced_census
from powcycles.cli import main
from powcycles.graph import (
    PerturbParams,
    build_graph,
    check_fact_i,
    check_fact_ii,
    extract_blocks,
    out_neighbors_closed_form,
    out_neighbors_oracle,
)
from powcycles.ntheory import GraphParams, multiplicative_order
from powcycles.verify import theorem2_increment, verify_lemma1_suite, verify_theorem2


@contextlib.contextmanager
def criterion(number, title):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        ACCEPTANCE_LINES.append(f"FAIL  {number:>2}. {title}: {exc}")
        raise
    ACCEPTANCE_LINES.append(f"PASS  {number:>2}. {title} ({time.perf_counter() - start:.2f} s)")


def test_01_theorem1_equality():
    with criterion(1, "Theorem 1 equality for primitive q"):
        start = time.perf_counter()
        triples = primitive_triples()
        assert triples
        for p, n, q in triples:
            counts = closed_walk_trace_all(build_graph(GraphParams(p, n, q)), 5).counts
            for k in range(1, 6):
                assert counts[k] == (p - 1) ** k, (p, n, q, k, counts[k])
        assert time.perf_counter() - start < 60


def test_02_theorem1_bound_nonprimitive():
    findings = []
    with criterion(2, "Theorem 1 bound for non-primitive q"):
        triples = nonprimitive_triples()
        assert triples
        for p, n, q in triples:
            ord_p = multiplicative_order(q, p, 1)
            counts = closed_walk_trace_all(build_graph(GraphParams(p, n, q)), 5).counts
            for k in range(1, 6):
                assert counts[k] <= (p - 1) ** k, (p, n, q, k)
                if counts[k] != ord_p**k:
                    findings.append((p, n, q, k, counts[k], ord_p**k))
    if findings:
        ACCEPTANCE_LINES.append(f"      finding: count != ord_p(q)^k at {findings}")


def test_03_reduction_equivalence():
    with criterion(3, "reduced trace equals brute force"):
        start = time.perf_counter()
        cases = [(t, 5) for t in grid_triples()] + [((3, 5, 2), 4)]
        for (p, n, q), k_max in cases:
            params = GraphParams(p, n, q)
            brute = closed_walk_trace_all(build_graph(params), k_max).counts
            assert reduced_census(params, k_max).counts == brute, (p, n, q)
        assert build_graph(GraphParams(3, 5, 2)).vertex_count == 243
        assert time.perf_counter() - start < 60


def test_04_neighborhood_oracle():
    with criterion(4, "closed-form and coset-oracle neighbourhoods agree"):
        for triple in grid_triples():
            params = GraphParams(*triple)
            for x in range(params.modulus):
                assert out_neighbors_closed_form(params, x) == out_neighbors_oracle(params, x), (triple, x)


def test_05_lemma2_structure():
    with criterion(5, "Lemma 2 facts i, ii and block sum"):
        for triple in grid_triples((2, 3)):
            params = GraphParams(*triple)
            assert check_fact_i(params).passed, triple
            assert check_fact_ii(params).passed, triple
            blocks = extract_blocks(build_graph(params))
            assert blocks.residual_rows == (), triple
            assert blocks.block_sum_matches(build_graph(params.lower())), triple


def test_06_lemma1_suite():
    with criterion(6, "Lemma 1 trace identity, 100 families per configuration"):
        start = time.perf_counter()
        report = verify_lemma1_suite(100, 1)
        assert report.passed
        config_rows = [r for r in report.rows if r.index != "forced_noncommuting"]
        assert len(config_rows) == 4 * 3 * 2
        assert all(r.bound == 100 * 6 for r in config_rows)
        forced = next(r for r in report.rows if r.index == "forced_noncommuting")
        assert forced.satisfied
        assert int(report.notes[0].rsplit(":", 1)[1]) >= 1
        assert time.perf_counter() - start < 30


def test_07_corollary():
    with criterion(7, "periodic points bounded by (p-1)^k"):
        for p, n, q in grid_triples():
            params = GraphParams(p, n, q)
            for k in range(1, 6):
                assert periodic_points(params, k) <= (p - 1) ** k, (p, n, q, k)


def test_08_theorem2_recurrence():
    with criterion(8, "Theorem 2 per-level recurrence"):
        start = time.perf_counter()
        for r in (1, 2):
            report = verify_theorem2(PerturbParams(GraphParams(3, 1, 2), r), 3, 3)
            rec = report.subset("thm2_recurrence")
            assert len(rec.rows) == 2 * 3
            assert rec.passed, rec.first_failure()
            counts = {tuple(row.index): row.observed for row in report.rows if row.family == "thm2_stated"}
            for n in (2, 3):
                for k in (1, 2, 3):
                    assert counts[n, k] <= counts[n - 1, k] + theorem2_increment(3, r, k)
        assert time.perf_counter() - start < 120


def _run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue()


def test_09_theorem2_stated_bound_audit():
    with criterion(9, "Theorem 2 stated bound violation reproduced, exit 2"):
        code, text = _run_cli(["verify", "thm2", "--p", "3", "--q", "2", "--r", "1", "--n-max", "3", "--k-max", "2"])
        assert code == 2
        doc = json.loads(text)
        assert doc["verdict"] == "violation"
        stated = [r for r in doc["rows"] if r["family"] == "thm2_stated"]
        recurrence = [r for r in doc["rows"] if r["family"] == "thm2_recurrence"]
        assert len(stated) == 3 * 2 and len(recurrence) == 2 * 2
        bad = next(r for r in stated if r["index"] == [1, 2])
        assert (bad["observed"], bad["bound"], bad["satisfied"]) == ("9", "3", False)
        assert all(r["satisfied"] for r in recurrence)


COMMANDS = [
    ["neighbors", "--p", "7", "--n", "2", "--q", "3", "--x", "11"],
    ["census", "--p", "3", "--n", "3", "--q", "2", "--k-max", "4", "--method", "both"],
    ["census", "--p", "3", "--n", "2", "--q", "2", "--r", "2", "--k-max", "3"],
    ["census", "--p", "7", "--n", "2", "--q", "2", "--k-max", "3", "--method", "reduced"],
    ["periodic", "--p", "5", "--n", "2", "--q", "2", "--k-max", "3"],
    ["periodic", "--p", "5", "--n", "2", "--q", "2", "--k-max", "3", "--format", "json"],
    ["verify", "thm1", "--p", "5", "--n", "2", "--q", "3", "--k-max", "4"],
    ["verify", "thm2", "--p", "3", "--q", "2", "--r", "1", "--n-max", "3", "--k-max", "2"],
    ["verify", "corollary", "--p", "7", "--n", "2", "--q", "3", "--k-max", "3"],
    ["verify", "lemma1", "--trials", "10", "--seed", "7"],
    ["verify", "lemma2", "--p", "7", "--n", "2", "--q", "2"],
    ["sweep", "--p", "3", "5", "--q", "2", "3", "--n", "1", "2", "--k-max", "3", "--method", "both"],
    ["sweep", "--p", "3", "--q", "2", "--n", "1", "2", "3", "--r", "1", "--k-max", "2", "--format", "json", "--workers", "2"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: "-".join(a[:2]))
def test_10_determinism(argv, tmp_path):
    with criterion(10, "byte-identical output: " + " ".join(argv)):
        outputs = []
        for attempt in range(2):
            if argv[0] == "neighbors":
                outputs.append(_run_cli(argv)[1].encode())
                continue
            path = tmp_path / f"out{attempt}"
            code, _ = _run_cli(argv + ["--out", str(path)])
            assert code in (0, 2)
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1] and outputs[0]
