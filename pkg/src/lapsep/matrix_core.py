"""Exact integer predicates: line sums, characteristic polynomial, PSD."""

from __future__ import annotations

from dataclasses import dataclass
from operator import mul
from typing import Sequence

from .graph_core import SymIntMatrix

Matrix = Sequence[Sequence[int]]


def _rows(m) -> Sequence[Sequence[int]]:
    return m.rows if isinstance(m, SymIntMatrix) else m


def _check_square(rows: Matrix) -> int:
    n = len(rows)
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ValueError(f"matrix is not square: row {i} has length {len(r)}, expected {n}")
    return n


def row_sums(m) -> tuple[int, ...]:
    rows = _rows(m)
    _check_square(rows)
    return tuple(sum(r) for r in rows)


def column_sums(m) -> tuple[int, ...]:
    rows = _rows(m)
    _check_square(rows)
    return tuple(sum(c) for c in zip(*rows))


def is_line_sum_symmetric(m) -> bool:
    """True iff the i-th row sum equals the i-th column sum for every i.

    The matrix need not be symmetric.
    """
    rows = _rows(m)
    _check_square(rows)
    return all(sum(r) == sum(c) for r, c in zip(rows, zip(*rows)))


def transpose(m) -> tuple[tuple[int, ...], ...]:
    return tuple(zip(*_rows(m)))


@dataclass(frozen=True)
class CharPolyCoeffs:
    """det(xI - M) = x^n - e[1] x^(n-1) + e[2] x^(n-2) - ... + (-1)^n e[n].

    ``e`` is stored 0-indexed, so ``e[0]`` is e_1 (the trace) and ``e[-1]`` is e_n (the determinant).
    """

    n: int
    e: tuple[int, ...]

    def coefficient(self, k: int) -> int:
        """e_k for 1 <= k <= n; e_0 is 1."""
        if k == 0:
            return 1
        return self.e[k - 1]

    def monic(self) -> tuple[int, ...]:
        """Coefficients of det(xI - M) from x^n down to x^0."""
        return (1,) + tuple((-1) ** k * e for k, e in enumerate(self.e, start=1))


def char_poly(m) -> CharPolyCoeffs:
    """Faddeev-LeVerrier recurrence on Python ints.

    N_1 = I, c_k = -tr(M N_k) / k, N_(k+1) = M N_k + c_k I, giving
    det(xI - M) = x^n + c_1 x^(n-1) + ... + c_n. Every division is exact
    for integer M.
    """
    rows = [list(r) for r in _rows(m)]
    n = _check_square(rows)
    if n == 0:
        return CharPolyCoeffs(0, ())
    # c holds the monic coefficients c_1..c_n of x^n + c_1 x^(n-1) + ... + c_n
    prod = [r[:] for r in rows]  # M * N_1 with N_1 = I
    c_prev = -sum(prod[i][i] for i in range(n))
    cs = [c_prev]
    for k in range(2, n + 1):
        for i in range(n):
            prod[i][i] += c_prev  # N_k = M N_(k-1) + c_(k-1) I
        cols = list(zip(*prod))
        if k < n:
            prod = [[sum(map(mul, r, col)) for col in cols] for r in rows]
            tr = sum(prod[i][i] for i in range(n))
        else:
            tr = sum(sum(map(mul, rows[i], cols[i])) for i in range(n))
        q, rem = divmod(-tr, k)
        if rem:
            raise ArithmeticError("non-exact division in Faddeev-LeVerrier; input is not an integer matrix")
        c_prev = q
        cs.append(c_prev)
    e = tuple((-1) ** k * c for k, c in enumerate(cs, start=1))
    return CharPolyCoeffs(n, e)


def is_psd(m) -> bool:
    """Exact PSD test for a symmetric integer matrix.

    The characteristic polynomial of a real symmetric matrix is real-rooted,
    and such a polynomial has only nonnegative roots iff every elementary
    symmetric function e_k of the roots is nonnegative.
    """
    if not isinstance(m, SymIntMatrix):
        m = SymIntMatrix(tuple(tuple(r) for r in m))
    return all(e >= 0 for e in char_poly(m).e)
