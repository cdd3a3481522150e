"""Separability decisions for graph Laplacians viewed as density matrices.

Each criterion is invariant under positive scaling, so the integer
Laplacian is used directly in place of L / tr(L).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .graph_core import LabeledGraph, SymIntMatrix, laplacian
from .matrix_core import is_line_sum_symmetric, is_psd, row_sums
from .tensor_ops import FactorShape, block, partial_transpose


class Kind(enum.Enum):
    SEPARABLE = "Separable"
    ENTANGLED = "Entangled"
    UNDETERMINED = "Undetermined"


class Certificate(enum.Enum):
    LINE_SUM_SYMMETRIC_BLOCKS = "LineSumSymmetricBlocks"
    EXACT_TWO_BY_Q = "ExactTwoByQ"
    PT_ROW_SUM_NONZERO = "PtRowSumNonzero"
    PT_NOT_PSD = "PtNotPsd"
    PPT_BUT_UNKNOWN = "PptButUnknown"


_ALLOWED = {
    Kind.SEPARABLE: {Certificate.LINE_SUM_SYMMETRIC_BLOCKS, Certificate.EXACT_TWO_BY_Q},
    Kind.ENTANGLED: {Certificate.PT_ROW_SUM_NONZERO, Certificate.PT_NOT_PSD},
    Kind.UNDETERMINED: {Certificate.PPT_BUT_UNKNOWN},
}


@dataclass(frozen=True)
class Verdict:
    kind: Kind
    certificate: Certificate

    def __post_init__(self) -> None:
        if self.certificate not in _ALLOWED[self.kind]:
            raise ValueError(f"certificate {self.certificate.value} cannot support a {self.kind.value} verdict")

    def __str__(self) -> str:
        return f"{self.kind.value} ({self.certificate.value})"


class EmptyGraphError(ValueError):
    """The empty graph has zero trace and is not a density matrix."""


def _require_trace(a: SymIntMatrix) -> None:
    if a.trace <= 0:
        raise EmptyGraphError("the empty graph has trace 0 and cannot be normalized to a density matrix")


def sufficient_separable(a: SymIntMatrix, shape: FactorShape) -> bool:
    """Every off-diagonal block A^{i,j}, i < j, is line sum symmetric.

    Diagonal blocks are symmetric and A^{j,i} is the transpose of A^{i,j},
    so the upper blocks decide the whole condition.
    """
    _require_trace(a)
    shape.check(a.n)
    p = shape.p
    return all(
        is_line_sum_symmetric(block(a, shape, i, j)) for i in range(1, p + 1) for j in range(i + 1, p + 1)
    )


def pt_has_zero_row_sums(a: SymIntMatrix, shape: FactorShape) -> bool:
    if any(row_sums(a)):
        raise ValueError("input must have zero row sums")
    return not any(row_sums(partial_transpose(a, shape)))


def ppt(a: SymIntMatrix, shape: FactorShape) -> bool:
    """Whether the partial transpose is positive semidefinite."""
    _require_trace(a)
    return is_psd(partial_transpose(a, shape))


def swap_permutation(shape: FactorShape) -> list[int]:
    """perm[old] = new for the index map (i-1)q + j -> (j-1)p + i."""
    p, q = shape.p, shape.q
    return [b * p + a for a in range(p) for b in range(q)]


def factor_swap(a: SymIntMatrix, shape: FactorShape) -> SymIntMatrix:
    """P a P^T, to be read under shape (q, p)."""
    shape.check(a.n)
    perm = swap_permutation(shape)
    n = a.n
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    rows = a.rows
    return SymIntMatrix._trusted(tuple(tuple(rows[inv[r]][inv[c]] for c in range(n)) for r in range(n)))


def classify_laplacian(a: SymIntMatrix, shape: FactorShape) -> Verdict:
    _require_trace(a)
    shape.check(a.n)
    if shape.p == 2 or shape.q == 2:
        if shape.p != 2:
            a, shape = factor_swap(a, shape), shape.swapped()
        if pt_has_zero_row_sums(a, shape):
            return Verdict(Kind.SEPARABLE, Certificate.EXACT_TWO_BY_Q)
        return Verdict(Kind.ENTANGLED, Certificate.PT_ROW_SUM_NONZERO)
    if sufficient_separable(a, shape):
        return Verdict(Kind.SEPARABLE, Certificate.LINE_SUM_SYMMETRIC_BLOCKS)
    if not pt_has_zero_row_sums(a, shape):
        return Verdict(Kind.ENTANGLED, Certificate.PT_ROW_SUM_NONZERO)
    if not ppt(a, shape):
        return Verdict(Kind.ENTANGLED, Certificate.PT_NOT_PSD)
    return Verdict(Kind.UNDETERMINED, Certificate.PPT_BUT_UNKNOWN)


def classify(g: LabeledGraph, shape: FactorShape) -> Verdict:
    """Decide separability of the normalized Laplacian of ``g`` in C^p (x) C^q.

    For p = 2 or q = 2 the zero-row-sum test on the partial transpose is
    exact. Otherwise the block line-sum test certifies separability, the
    row-sum and PPT tests certify entanglement, and anything left over is
    reported as undetermined.
    """
    if g.edges == 0:
        raise EmptyGraphError("the empty graph has trace 0 and cannot be normalized to a density matrix")
    shape.check(g.n)
    return classify_laplacian(laplacian(g), shape)
