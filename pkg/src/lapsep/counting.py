"""Counting formulas, bounds and exhaustive censuses of labeled graphs.

Notation follows the usual one for this problem:

* ``L(n)``        nonempty labeled graphs on n vertices, 2^(n(n-1)/2) - 1
* ``N_s(n)``      n x n 0-1 matrices that are line sum symmetric (``N_e`` the rest)
* ``M_n(i)``      labeled graphs with n vertices, i edges and a vertex of degree 1
* ``L_s, L_e``    graphs whose normalized Laplacian is separable / entangled
"""

from __future__ import annotations

import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

import numpy as np

from .criteria import classify_laplacian, sufficient_separable
from .graph_core import SymIntMatrix, num_pairs, split_range
from .matrix_core import is_psd
from .tensor_ops import FactorShape, block_pattern, partial_transpose

log = logging.getLogger(__name__)

NS_MAX_N = 5
MNI_MAX_N = 12
BOUNDS_MAX_P = 7
CENSUS_MAX_N = 9
CENSUS_PPT_MAX_N = 8

# Values of M_n(i) for n = 2..8, i = 1..8 as published.
TABLE1: dict[tuple[int, int], int] = {
    (2, 1): 1,
    (3, 1): 3, (3, 2): 3,
    (4, 1): 6, (4, 2): 15, (4, 3): 16, (4, 4): 12,
    (5, 1): 10, (5, 2): 45, (5, 3): 110, (5, 4): 195, (5, 5): 210, (5, 6): 120, (5, 7): 20,
    (6, 1): 15, (6, 2): 105, (6, 3): 435, (6, 4): 1320, (6, 5): 2841, (6, 6): 4410, (6, 7): 4845,
    (6, 8): 3360,
    (7, 1): 21, (7, 2): 210, (7, 3): 1295, (7, 4): 5880, (7, 5): 19887, (7, 6): 51954,
    (7, 7): 106785, (7, 8): 171360,
    (8, 1): 28, (8, 2): 378, (8, 3): 3220, (8, 4): 20265, (8, 5): 97188, (8, 6): 369950,
    (8, 7): 1147000, (8, 8): 2931138,
}  # fmt: skip


class CapExceeded(ValueError):
    """A requested enumeration is larger than the configured cap."""


def count_L(n: int) -> int:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return (1 << num_pairs(n)) - 1


# -- line sum symmetric 0-1 matrices ------------------------------------------


def _line_sum_defects(n: int, cells: list[tuple[int, int]]) -> np.ndarray:
    """Row-minus-column sum vector, packed in balanced base 2n+1, for every 0-1 filling of ``cells``."""
    base = 2 * n + 1
    weights = np.zeros(len(cells), dtype=np.int64)
    for b, (i, j) in enumerate(cells):
        weights[b] = base**i - base**j
    masks = np.arange(1 << len(cells), dtype=np.int64)
    packed = np.zeros(masks.shape, dtype=np.int64)
    for b, w in enumerate(weights):
        packed += ((masks >> b) & 1) * w
    return packed


def count_ns(n: int) -> tuple[int, int]:
    """(N_s(n), N_e(n)) by visiting all 2^(n^2) 0-1 matrices.

    The cells are split into a low and a high half. For each filling of the
    high half, every low filling is checked against it in one vectorised
    comparison of packed defect vectors; a matrix is line sum symmetric iff
    its packed defect is zero (the balanced base-(2n+1) packing is injective
    because every defect entry lies in [-(n-1), n-1]).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > NS_MAX_N:
        raise CapExceeded(f"N_s enumeration is capped at n={NS_MAX_N} (2^{NS_MAX_N ** 2} matrices); got n={n}")
    cells = [(i, j) for i in range(n) for j in range(n)]
    half = len(cells) // 2
    low = _line_sum_defects(n, cells[:half])
    high = _line_sum_defects(n, cells[half:])
    ns = 0
    for h in high.tolist():
        ns += int(np.count_nonzero(low == -h))
    return ns, (1 << (n * n)) - ns


# -- graphs with a degree-1 vertex ---------------------------------------------


def mni_max_edges(n: int) -> int:
    """Largest edge count admitting a degree-1 vertex: a pendant edge on K_(n-1)."""
    return (n - 1) * (n - 2) // 2 + 1


def count_mni(n: int, i: int) -> int:
    """M_n(i) by enumerating every i-subset of the C(n,2) vertex pairs.

    Each pair contributes a packed degree increment; a subset qualifies when
    some packed degree field equals 1, detected with the zero-field trick on
    ``deg ^ ones``.
    """
    if n < 2 or i < 1:
        raise ValueError(f"need n >= 2 and i >= 1, got n={n}, i={i}")
    if n > MNI_MAX_N:
        raise CapExceeded(f"M_n(i) enumeration is capped at n={MNI_MAX_N}; got n={n}")
    if i > mni_max_edges(n):
        return 0
    width = max(2, (n - 1).bit_length() + 1)
    ones = sum(1 << (width * v) for v in range(n))
    highs = ones << (width - 1)
    incs = [(1 << (width * u)) + (1 << (width * v)) for u in range(n) for v in range(u + 1, n)]
    count = 0
    for deg in map(sum, combinations(incs, i)):
        x = deg ^ ones
        if (x - ones) & ~x & highs:
            count += 1
    return count


def mni_closed_forms(n: int, i: int) -> Optional[int]:
    """Closed-form M_n(i) where one is known, else None.

    Covers i <= 3 (labeled bipartite graphs) and the near-maximal edge
    counts i = (n-1)(n-2)/2 - j + 1 with n >= 4 + j.
    """
    if n < 2 or i < 1:
        return None
    if i == 1:
        return n * (n - 1) // 2
    if i == 2:
        return (n + 1) * n * (n - 1) * (n - 2) // 8
    if i == 3:
        return ((n + 1) * (n + 2) + 2) * n * (n - 1) * (n - 2) * (n - 3) // 48
    top = (n - 1) * (n - 2) // 2
    j = top + 1 - i
    if j >= 0 and n >= 4 + j:
        return n * (n - 1) * comb(top, j)
    return None


# -- bounds --------------------------------------------------------------------


@dataclass(frozen=True)
class BoundsReport:
    p: int
    q: int
    total: int
    ls_lower: int
    le_lower: int
    ls_upper: int
    le_upper: int
    ns_q: int
    ne_q: int
    mp: tuple[int, ...]

    def as_dict(self) -> dict[str, int]:
        d = {k: getattr(self, k) for k in ("p", "q", "total", "ls_lower", "le_lower", "ls_upper", "le_upper", "ns_q", "ne_q")}
        for i, m in enumerate(self.mp, start=1):
            d[f"M_{self.p}({i})"] = m
        return d


def bounds(p: int, q: int) -> BoundsReport:
    """Lower and upper bounds on L_s(p, q) and L_e(p, q)."""
    if p < 2 or q < 2:
        raise ValueError(f"p and q must be >= 2, got ({p}, {q})")
    if p > BOUNDS_MAX_P:
        raise CapExceeded(f"bounds need M_p(i) by enumeration, capped at p={BOUNDS_MAX_P}; got p={p}")
    ns, ne = count_ns(q)
    blocks = p * (p - 1) // 2
    free = 1 << (p * q * (q - 1) // 2)
    total = count_L(p * q)
    mp = tuple(count_mni(p, i) for i in range(1, mni_max_edges(p) + 1))
    ls_lower = free * ns**blocks - 1
    le_lower = sum(m * ne**i * ns ** (blocks - i) * free for i, m in enumerate(mp, start=1))
    return BoundsReport(
        p=p,
        q=q,
        total=total,
        ls_lower=ls_lower,
        le_lower=le_lower,
        ls_upper=total - le_lower,
        le_upper=total - free * ns**blocks + 1,
        ns_q=ns,
        ne_q=ne,
        mp=mp,
    )


def exact_ls_2q(q: int) -> tuple[int, int]:
    """(L_s(2, q), L_e(2, q)), exact because the 2 x q bounds coincide."""
    ns, ne = count_ns(q)
    free = 1 << (q * (q - 1))
    return free * ns - 1, free * ne


# -- census --------------------------------------------------------------------


@dataclass(frozen=True)
class CensusReport:
    """Tallies over every nonempty graph with mask in ``mask_range``.

    ``ppt_count`` is None when skipped. ``separable_exact`` is set only for
    shapes with p == 2 or q == 2, where the verdicts are exact.
    """

    p: int
    q: int
    total: int
    thm3_count: int
    ptzero_count: int
    ppt_count: Optional[int]
    pattern_deg1_count: int
    pattern_deg1_ptzero: int
    separable_count: int
    entangled_count: int
    undetermined_count: int
    separable_exact: Optional[int]
    mask_range: tuple[int, int]
    complete: bool

    @property
    def entangled_exact(self) -> Optional[int]:
        return None if self.separable_exact is None else self.total - self.separable_exact

    def as_dict(self) -> dict:
        d = {
            "p": self.p,
            "q": self.q,
            "total": self.total,
            "thm3_count": self.thm3_count,
            "ptzero_count": self.ptzero_count,
            "ppt_count": self.ppt_count,
            "pattern_deg1_count": self.pattern_deg1_count,
            "pattern_deg1_ptzero": self.pattern_deg1_ptzero,
            "separable_count": self.separable_count,
            "entangled_count": self.entangled_count,
            "undetermined_count": self.undetermined_count,
            "separable_exact": self.separable_exact,
            "entangled_exact": self.entangled_exact,
            "mask_lo": self.mask_range[0],
            "mask_hi": self.mask_range[1],
            "complete": self.complete,
        }
        return d


_COUNT_KEYS = (
    "total",
    "thm3",
    "ptzero",
    "ppt",
    "pattern_deg1",
    "pattern_deg1_ptzero",
    "Separable",
    "Entangled",
    "Undetermined",
)


def _laplacian_rows(n: int, mask: int, pairs: list[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
    rows = [[0] * n for _ in range(n)]
    k = 0
    while mask:
        if mask & 1:
            u, v = pairs[k]
            rows[u][v] = rows[v][u] = -1
            rows[u][u] += 1
            rows[v][v] += 1
        mask >>= 1
        k += 1
    return tuple(map(tuple, rows))


def _census_chunk(p: int, q: int, lo: int, hi: int, with_ppt: bool) -> dict[str, int]:
    shape = FactorShape(p, q)
    n = shape.n
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    tally = Counter()
    for mask in range(max(lo, 1), hi):
        a = SymIntMatrix._trusted(_laplacian_rows(n, mask, pairs))
        pt = partial_transpose(a, shape)
        ptzero = not any(map(sum, pt.rows))
        thm3 = sufficient_separable(a, shape)
        deg1 = block_pattern(a, shape).has_single_row()
        tally["total"] += 1
        tally["thm3"] += thm3
        tally["ptzero"] += ptzero
        tally["pattern_deg1"] += deg1
        tally["pattern_deg1_ptzero"] += deg1 and ptzero
        if with_ppt:
            # A PSD partial transpose with 1^T PT 1 = 0 must annihilate 1, so
            # nonzero row sums already rule PSD out.
            tally["ppt"] += ptzero and is_psd(pt)
        tally[classify_laplacian(a, shape).kind.value] += 1
    return {k: tally[k] for k in _COUNT_KEYS}


def resolve_workers(requested: Optional[int] = None) -> int:
    """Requested worker count (default: CPU count), capped by $LAPSEP_MAX_WORKERS."""
    workers = requested if requested is not None else os.cpu_count() or 1
    cap = os.environ.get("LAPSEP_MAX_WORKERS")
    if cap:
        workers = min(workers, int(cap))
    return max(1, workers)


def census(
    p: int,
    q: int,
    workers: int = 1,
    skip_ppt: bool = False,
    mask_range: Optional[tuple[int, int]] = None,
) -> CensusReport:
    """Classify every nonempty labeled graph on pq vertices.

    The mask interval is cut into contiguous chunks that are processed
    independently (in worker processes when ``workers > 1``) and summed in
    chunk order, so the report does not depend on ``workers``.
    """
    shape = FactorShape(p, q)
    n = shape.n
    if n > CENSUS_MAX_N:
        raise CapExceeded(f"census is capped at pq={CENSUS_MAX_N}; got pq={n}")
    if n > CENSUS_PPT_MAX_N and not skip_ppt:
        raise CapExceeded(f"the PPT column is capped at pq={CENSUS_PPT_MAX_N}; got pq={n} (use skip_ppt)")
    full = 1 << num_pairs(n)
    lo, hi = (0, full) if mask_range is None else mask_range
    if not 0 <= lo <= hi <= full:
        raise ValueError(f"mask range [{lo}, {hi}) is outside [0, {full})")
    lo = max(lo, 1)
    hi = max(hi, lo)
    workers = max(1, workers)
    chunks = split_range(lo, hi, workers * 8) if hi > lo else []
    args = [(p, q, a, b, not skip_ppt) for a, b in chunks]
    log.info("census %dx%d over [%d, %d) in %d chunks, %d workers", p, q, lo, hi, len(chunks), workers)
    if workers == 1 or len(chunks) <= 1:
        parts = [_census_chunk(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_census_chunk, *zip(*args)))
    totals = Counter({k: 0 for k in _COUNT_KEYS})
    for part in parts:
        totals.update(part)
    exact = p == 2 or q == 2
    return CensusReport(
        p=p,
        q=q,
        total=totals["total"],
        thm3_count=totals["thm3"],
        ptzero_count=totals["ptzero"],
        ppt_count=None if skip_ppt else totals["ppt"],
        pattern_deg1_count=totals["pattern_deg1"],
        pattern_deg1_ptzero=totals["pattern_deg1_ptzero"],
        separable_count=totals["Separable"],
        entangled_count=totals["Entangled"],
        undetermined_count=totals["Undetermined"],
        separable_exact=totals["Separable"] if exact else None,
        mask_range=(lo, hi),
        complete=(lo, hi) == (1, full),
    )
