"""Exact integer matrices and the block-constant trace identity.

For blocks A_1..A_r of side d, the matrix M whose every block-row is
(A_1 ... A_r) satisfies: sum of the diagonal blocks of M**k equals
(A_1 + ... + A_r)**k, even when the blocks do not commute.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

Matrix = list[list[int]]


def identity(d: int) -> Matrix:
    return [[int(i == j) for j in range(d)] for i in range(d)]


def zeros(d: int) -> Matrix:
    return [[0] * d for _ in range(d)]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def mat_pow(a: Matrix, k: int) -> Matrix:
    """Right-to-left binary powering."""
    if k < 0:
        raise ValueError("negative matrix power")
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def mat_pow_naive(a: Matrix, k: int) -> Matrix:
    result = identity(len(a))
    for _ in range(k):
        result = mat_mul(result, a)
    return result


def trace(a: Matrix) -> int:
    return sum(a[i][i] for i in range(len(a)))


@dataclass(frozen=True)
class BlockFamily:
    blocks: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("a block family needs at least one block")
        d = len(self.blocks[0])
        for block in self.blocks:
            if len(block) != d or any(len(row) != d for row in block):
                raise ValueError("all blocks must be square with the same side")

    @classmethod
    def of(cls, blocks) -> BlockFamily:
        return cls(tuple(tuple(tuple(int(v) for v in row) for row in b) for b in blocks))

    @property
    def r(self) -> int:
        return len(self.blocks)

    @property
    def d(self) -> int:
        return len(self.blocks[0])

    def matrices(self) -> list[Matrix]:
        return [[list(row) for row in b] for b in self.blocks]

    def block_sum(self) -> Matrix:
        total = zeros(self.d)
        for b in self.matrices():
            total = mat_add(total, b)
        return total

    def has_noncommuting_pair(self) -> bool:
        mats = self.matrices()
        return any(
            mat_mul(a, b) != mat_mul(b, a)
            for i, a in enumerate(mats)
            for b in mats[i + 1 :]
        )


def assemble_block_constant(family: BlockFamily) -> Matrix:
    block_row = [
        [v for b in family.blocks for v in b[i]]
        for i in range(family.d)
    ]
    return [list(row) for _ in range(family.r) for row in block_row]


def block_trace(matrix: Matrix, d: int) -> Matrix:
    """Entrywise sum of the diagonal d x d blocks."""
    side = len(matrix)
    if d < 1 or side % d:
        raise ValueError(f"matrix side {side} is not divisible by block side {d}")
    out = zeros(d)
    for start in range(0, side, d):
        for i in range(d):
            for j in range(d):
                out[i][j] += matrix[start + i][start + j]
    return out


def verify_lemma1(family: BlockFamily, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be >= 1")
    lhs = block_trace(mat_pow(assemble_block_constant(family), k), family.d)
    rhs = mat_pow(family.block_sum(), k)
    return lhs == rhs


def random_block_family(seed: int, r: int, d: int, bound: int) -> BlockFamily:
    if r < 1 or d < 1 or bound < 0:
        raise ValueError("need r >= 1, d >= 1, bound >= 0")
    rng = random.Random(seed)
    blocks = [
        [[rng.randint(-bound, bound) for _ in range(d)] for _ in range(d)]
        for _ in range(r)
    ]
    return BlockFamily.of(blocks)
