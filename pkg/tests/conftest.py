from math import gcd

import pytest

from powcycles.ntheory import GraphParams, is_primitive_root

GRID_P = (3, 5, 7)
GRID_N = (1, 2, 3)
GRID_Q = (2, 3, 5)


def grid_triples(n_values=GRID_N):
    return [(p, n, q) for p in GRID_P for n in n_values for q in GRID_Q if gcd(p, q) == 1]


def primitive_triples():
    return [t for t in grid_triples() if is_primitive_root(t[2], t[0], 1)]


def nonprimitive_triples():
    return [t for t in grid_triples() if not is_primitive_root(t[2], t[0], 1)]


@pytest.fixture(params=grid_triples(), ids=lambda t: "p%d-n%d-q%d" % t)
def grid_params(request):
    return GraphParams(*request.param)


@pytest.fixture(params=grid_triples((2, 3)), ids=lambda t: "p%d-n%d-q%d" % t)
def lifted_params(request):
    return GraphParams(*request.param)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
