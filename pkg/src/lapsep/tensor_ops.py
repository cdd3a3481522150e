"""Block structure of a pq x pq matrix under the C^p (x) C^q factorization.

Vertex (0-based) k belongs to group k // q; the 1-based group V_i holds
vertices (i-1)q+1 .. iq.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph_core import LabeledGraph, SymIntMatrix
from .matrix_core import is_line_sum_symmetric


@dataclass(frozen=True)
class FactorShape:
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 2 or self.q < 2:
            raise ValueError(f"factor dimensions must both be >= 2, got ({self.p}, {self.q})")

    @property
    def n(self) -> int:
        return self.p * self.q

    def swapped(self) -> "FactorShape":
        return FactorShape(self.q, self.p)

    def check(self, n: int) -> None:
        if n != self.n:
            raise ValueError(f"matrix dimension {n} does not match shape {self.p}x{self.q} = {self.n}")

    def index(self, i: int, j: int) -> int:
        """0-based flat index of the 1-based pair (i, j): f(i, j) - 1 = (i-1)q + j - 1."""
        return (i - 1) * self.q + (j - 1)

    def group(self, i: int) -> range:
        """0-based vertices of the 1-based group V_i."""
        return range((i - 1) * self.q, i * self.q)


@dataclass(frozen=True)
class BlockPattern:
    """p x p flags; ``bits[i][j]`` is True iff block (i+1, j+1) is not line sum symmetric."""

    p: int
    bits: tuple[tuple[bool, ...], ...]

    def row_counts(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.bits)

    def has_single_row(self) -> bool:
        """Some block row contains exactly one non-LSS block."""
        return 1 in self.row_counts()

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.bits)


def _as_rows(a) -> tuple[tuple[int, ...], ...]:
    return a.rows if isinstance(a, SymIntMatrix) else tuple(tuple(r) for r in a)


def block(a, shape: FactorShape, i: int, j: int) -> tuple[tuple[int, ...], ...]:
    """The q x q block A^{i,j}, with 1-based block indices."""
    rows = _as_rows(a)
    shape.check(len(rows))
    if not (1 <= i <= shape.p and 1 <= j <= shape.p):
        raise IndexError(f"block index ({i}, {j}) outside 1..{shape.p}")
    q = shape.q
    r0, c0 = (i - 1) * q, (j - 1) * q
    return tuple(tuple(rows[r0 + a_][c0 : c0 + q]) for a_ in range(q))


def partial_transpose(a, shape: FactorShape) -> SymIntMatrix:
    """Transpose every q x q block in place: PT[(i,j),(k,l)] = A[(i,l),(k,j)]."""
    rows = _as_rows(a)
    shape.check(len(rows))
    n, q = shape.n, shape.q
    out = [[0] * n for _ in range(n)]
    for r in range(n):
        bi, ri = divmod(r, q)
        row = rows[r]
        for c in range(n):
            bj, cj = divmod(c, q)
            out[bi * q + cj][bj * q + ri] = row[c]
    result = tuple(tuple(r) for r in out)
    if isinstance(a, SymIntMatrix):
        # PT of a symmetric matrix is symmetric
        return SymIntMatrix._trusted(result)
    return SymIntMatrix(result)


def block_pattern(a, shape: FactorShape) -> BlockPattern:
    """Flag each off-diagonal block that fails line-sum symmetry.

    Only blocks with i < j are examined; the lower triangle is mirrored.
    """
    rows = _as_rows(a)
    shape.check(len(rows))
    p = shape.p
    bits = [[False] * p for _ in range(p)]
    for i in range(1, p + 1):
        for j in range(i + 1, p + 1):
            bad = not is_line_sum_symmetric(block(rows, shape, i, j))
            bits[i - 1][j - 1] = bits[j - 1][i - 1] = bad
    return BlockPattern(p, tuple(tuple(r) for r in bits))


def edge_count_between(g: LabeledGraph, v: int, group: Iterable[int]) -> int:
    """Number of neighbours of 0-based vertex ``v`` inside ``group``."""
    group = set(group)
    if v in group:
        raise ValueError(f"vertex {v} lies inside the group")
    return sum(1 for w in group if g.has_edge(v, w))
