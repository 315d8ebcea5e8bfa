"""Exponentiation graphs over Z_{p^n} and the structural facts behind them.

Vertex x has an edge to every residue q**y mod p**n with y = x mod p**n.
The perturbed variant also links x to every such target shifted by
c in [-r, r].
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Union

from .ntheory import GraphParams, ParameterError, mod_pow
from .report import VerificationReport

BUILD_LIMIT = 2**24


@dataclass(frozen=True)
class PerturbParams:
    base: GraphParams
    r: int

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 0:
            raise ParameterError(f"perturbation radius must be >= 0, got {self.r}")

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def modulus(self) -> int:
        return self.base.modulus

    def lower(self) -> PerturbParams:
        return PerturbParams(self.base.lower(), self.r)

    def as_dict(self) -> dict:
        return {**self.base.as_dict(), "r": self.r}


AnyParams = Union[GraphParams, PerturbParams]


def _base(params: AnyParams) -> GraphParams:
    return params.base if isinstance(params, PerturbParams) else params


def radius(params: AnyParams) -> int:
    return params.r if isinstance(params, PerturbParams) else 0


@dataclass(frozen=True)
class ExpGraph:
    vertex_count: int
    out: tuple[tuple[int, ...], ...]
    params: AnyParams

    @property
    def p(self) -> int:
        return self.params.p

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def edge_count(self) -> int:
        return sum(len(row) for row in self.out)

    def has_edge(self, x: int, t: int) -> bool:
        return t in set(self.out[x])

    def dense(self) -> list[list[int]]:
        """0/1 adjacency matrix. Only sensible for tiny graphs."""
        n = self.vertex_count
        rows = []
        for targets in self.out:
            row = [0] * n
            for t in targets:
                row[t] = 1
            rows.append(row)
        return rows

    def dump(self) -> str:
        lines = []
        for x, targets in enumerate(self.out):
            lines.append(f"{x}: " + " ".join(map(str, targets)))
        return "\n".join(lines) + "\n"


def parse_dump(text: str) -> list[tuple[int, ...]]:
    out = []
    for expected, line in enumerate(text.strip("\n").splitlines()):
        head, _, tail = line.partition(":")
        if int(head) != expected:
            raise ValueError(f"vertices out of order at line {expected + 1}")
        out.append(tuple(int(tok) for tok in tail.split()))
    return out


def _check_vertex(params: AnyParams, x: int) -> None:
    if not 0 <= x < params.modulus:
        raise ParameterError(f"vertex {x} outside [0, {params.modulus})")


def out_neighbors_closed_form(params: GraphParams, x: int) -> list[int]:
    """{q**(x + b*p**(n-1)) mod p**n : b = 0..p-2}, sorted and deduplicated."""
    _check_vertex(params, x)
    p, n, q = params.p, params.n, params.q
    modulus = params.modulus
    step = mod_pow(q, p ** (n - 1), modulus)
    value = mod_pow(q, x, modulus)
    targets = set()
    for _ in range(p - 1):
        targets.add(value)
        value = value * step % modulus
    return sorted(targets)


def out_neighbors_oracle(params: GraphParams, x: int) -> list[int]:
    """Enumerate q**y over y = x + j*p**n directly, j = 0, 1, ... until repeat."""
    _check_vertex(params, x)
    modulus = params.modulus
    start = mod_pow(params.q, x, modulus)
    mult = mod_pow(params.q, modulus, modulus)
    targets = [start]
    value = start * mult % modulus
    while value != start:
        targets.append(value)
        value = value * mult % modulus
    return sorted(set(targets))


def _guard(modulus: int, limit: int) -> None:
    if modulus > limit:
        raise ParameterError(f"{modulus} vertices exceeds the build limit {limit}")


def build_graph(params: GraphParams, limit: int = BUILD_LIMIT) -> ExpGraph:
    _guard(params.modulus, limit)
    p, q, modulus = params.p, params.q, params.modulus
    step = mod_pow(q, modulus // p, modulus)
    out = []
    power = 1  # q**x, advanced incrementally
    for _ in range(modulus):
        value, targets = power, set()
        for _ in range(p - 1):
            targets.add(value)
            value = value * step % modulus
        out.append(tuple(sorted(targets)))
        power = power * q % modulus
    return ExpGraph(modulus, tuple(out), params)


def build_perturbed_graph(params: PerturbParams, limit: int = BUILD_LIMIT) -> ExpGraph:
    base = build_graph(params.base, limit)
    modulus = params.modulus
    shifts = range(-params.r, params.r + 1)
    cache: dict[tuple[int, ...], tuple[int, ...]] = {}
    out = []
    for targets in base.out:
        row = cache.get(targets)
        if row is None:
            row = tuple(sorted({(t + c) % modulus for t in targets for c in shifts}))
            cache[targets] = row
        out.append(row)
    return ExpGraph(modulus, tuple(out), params)


def build(params: AnyParams, limit: int = BUILD_LIMIT) -> ExpGraph:
    if isinstance(params, PerturbParams):
        return build_perturbed_graph(params, limit)
    return build_graph(params, limit)


def project(params: AnyParams, x: int) -> int:
    if params.n < 2:
        raise ParameterError("projection needs n >= 2")
    _check_vertex(params, x)
    return x % (params.modulus // params.p)


def _require_lifted(params: AnyParams) -> None:
    if params.n < 2:
        raise ParameterError("this check compares levels n and n-1; needs n >= 2")


def check_fact_i(params: GraphParams) -> VerificationReport:
    """All p lifts of each y < p**(n-1) share one out-list.

    Rows compare the lifts against the closed-form rows independently of
    build_graph, which already assumes the fact to save work.
    """
    _require_lifted(params)
    side = params.modulus // params.p
    report = VerificationReport("fact_i", params.as_dict())
    for y in range(side):
        lists = {tuple(out_neighbors_oracle(params, y + b * side)) for b in range(params.p)}
        report.add(y, len(lists), 1, len(lists) == 1)
    bad = report.first_failure()
    if bad is not None:
        report.notes.append(f"first counterexample at y = {bad.index}")
    return report


def check_fact_ii(params: GraphParams) -> VerificationReport:
    """Reduction mod p**(n-1) maps O^n(y) bijectively onto O^{n-1}(y)."""
    _require_lifted(params)
    lower = params.lower()
    side = lower.modulus
    report = VerificationReport("fact_ii", params.as_dict())
    for y in range(side):
        upper = out_neighbors_oracle(params, y)
        image = [project(params, t) for t in upper]
        target = out_neighbors_oracle(lower, y)
        ok = len(set(image)) == len(upper) and sorted(set(image)) == target
        report.add(y, len(set(image)), len(target), ok)
    bad = report.first_failure()
    if bad is not None:
        report.notes.append(f"first counterexample at y = {bad.index}")
    return report


@dataclass(frozen=True)
class BlockDecomposition:
    """Lemma-style split of a level-n adjacency into p column blocks.

    blocks[j][y] lists the columns y' with B_j[y, y'] = 1, for
    0 <= y < block_side. residual maps each row not reproduced by the
    block-constant matrix to the targets it leaves uncovered (the rows
    of X).
    """

    block_side: int
    p: int
    blocks: tuple[tuple[tuple[int, ...], ...], ...]
    residual: dict[int, tuple[int, ...]] = field(default_factory=dict)

    @property
    def residual_rows(self) -> tuple[int, ...]:
        return tuple(sorted(self.residual))

    def block_constant_row(self, x: int) -> list[int]:
        y = x % self.block_side
        return sorted(yy + j * self.block_side for j in range(self.p) for yy in self.blocks[j][y])

    def block_sum(self) -> list[Counter]:
        sums = []
        for y in range(self.block_side):
            acc: Counter = Counter()
            for j in range(self.p):
                acc.update(self.blocks[j][y])
            sums.append(acc)
        return sums

    def block_sum_matches(self, lower: ExpGraph) -> bool:
        """Entrywise B_1 + ... + B_p == adjacency of the level-(n-1) graph."""
        if lower.vertex_count != self.block_side:
            return False
        for acc, targets in zip(self.block_sum(), lower.out):
            if acc != Counter(targets):
                return False
        return True

    def dense_block(self, j: int) -> list[list[int]]:
        side = self.block_side
        rows = []
        for cols in self.blocks[j]:
            row = [0] * side
            for c in cols:
                row[c] = 1
            rows.append(row)
        return rows


def extract_blocks(graph: ExpGraph) -> BlockDecomposition:
    """Split graph rows x = y + b*p**(n-1) into block columns.

    B_j row y keeps, for each column y', the first target of row y that
    reduces to y' (landing in block j). Targets that collide after
    reduction cannot be carried by a 0/1 block sum and are left to the
    residual, as are rows that differ from their y-representative.
    """
    if graph.n < 2:
        raise ParameterError("block extraction needs n >= 2")
    p = graph.p
    side = graph.vertex_count // p
    blocks = [[() for _ in range(side)] for _ in range(p)]
    for y in range(side):
        seen = set()
        per_block: list[list[int]] = [[] for _ in range(p)]
        for t in graph.out[y]:
            yy, j = t % side, t // side
            if yy in seen:
                continue
            seen.add(yy)
            per_block[j].append(yy)
        for j in range(p):
            blocks[j][y] = tuple(sorted(per_block[j]))
    decomposition = BlockDecomposition(side, p, tuple(tuple(b) for b in blocks))
    for x in range(graph.vertex_count):
        covered = set(decomposition.block_constant_row(x))
        actual = graph.out[x]
        if covered != set(actual):
            decomposition.residual[x] = tuple(t for t in actual if t not in covered)
    return decomposition
