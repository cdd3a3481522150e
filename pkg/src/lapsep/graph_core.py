"""Labeled graphs on a bitmask encoding and their integer Laplacians."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 12


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(n: int, u: int, v: int) -> int:
    """Bit position of the pair (u, v), u < v, in row-major pair order."""
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"vertex count must be an integer >= 2, got {n!r}")
    if n > MAX_VERTICES:
        raise ValueError(f"vertex count {n} exceeds the hard cap of {MAX_VERTICES}")


@dataclass(frozen=True)
class LabeledGraph:
    """A simple labeled graph on vertices 0..n-1.

    ``edges`` is a bitmask over the n(n-1)/2 vertex pairs; see :func:`pair_index`.
    """

    n: int
    edges: int

    def __post_init__(self) -> None:
        _check_n(self.n)
        if self.edges < 0 or self.edges >> num_pairs(self.n):
            raise ValueError(f"edge mask {self.edges:#x} has bits outside the {num_pairs(self.n)} pair slots")

    @property
    def edge_count(self) -> int:
        return self.edges.bit_count()

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges as 0-based pairs (u, v) with u < v, in bit order."""
        out = []
        k = 0
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if self.edges >> k & 1:
                    out.append((u, v))
                k += 1
        return out

    def adjacency(self) -> list[list[int]]:
        adj = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edge_list():
            adj[u][v] = adj[v][u] = 1
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        if u > v:
            u, v = v, u
        return bool(self.edges >> pair_index(self.n, u, v) & 1)


@dataclass(frozen=True)
class SymIntMatrix:
    """Dense symmetric matrix of Python ints. Symmetry is checked on construction."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ValueError(f"matrix is not square: row {i} has length {len(r)}, expected {n}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i}, {j}): {rows[i][j]} != {rows[j][i]}")

    @classmethod
    def _trusted(cls, rows: tuple[tuple[int, ...], ...]) -> "SymIntMatrix":
        # Skips validation; callers must guarantee a square symmetric tuple of int tuples.
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", rows)
        return obj

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def graph_from_edges(n: int, edge_list: Iterable[Sequence[int]]) -> LabeledGraph:
    """Build a graph from 0-based vertex pairs ``(u, v)`` with ``u < v``."""
    _check_n(n)
    mask = 0
    for pair in edge_list:
        if len(pair) != 2:
            raise ValueError(f"edge {pair!r} is not a vertex pair")
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u} is not allowed")
        if u > v:
            raise ValueError(f"edge ({u}, {v}) must be given with u < v")
        bit = 1 << pair_index(n, u, v)
        if mask & bit:
            raise ValueError(f"duplicate edge ({u}, {v})")
        mask |= bit
    return LabeledGraph(n, mask)


def relabel(g: LabeledGraph, perm: Sequence[int]) -> LabeledGraph:
    """Graph with vertex v renamed to perm[v]."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm is not a permutation of the vertex set")
    edges = sorted(tuple(sorted((perm[u], perm[v]))) for u, v in g.edge_list())
    return graph_from_edges(g.n, edges)


def laplacian(g: LabeledGraph) -> SymIntMatrix:
    """Unnormalized Laplacian D - Adj."""
    n = g.n
    rows = [[0] * n for _ in range(n)]
    for u, v in g.edge_list():
        rows[u][v] = rows[v][u] = -1
        rows[u][u] += 1
        rows[v][v] += 1
    return SymIntMatrix._trusted(tuple(tuple(r) for r in rows))


def enumerate_graphs(n: int, mask_range: tuple[int, int] | None = None) -> Iterator[LabeledGraph]:
    """Yield every graph whose mask lies in ``mask_range`` (half-open), ascending.

    The default range covers all 2^(n(n-1)/2) masks, the empty graph included.
    """
    _check_n(n)
    full = 1 << num_pairs(n)
    lo, hi = (0, full) if mask_range is None else mask_range
    if not 0 <= lo <= hi <= full:
        raise ValueError(f"mask range [{lo}, {hi}) is outside [0, {full})")
    for mask in range(lo, hi):
        yield LabeledGraph(n, mask)


def split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Cut [lo, hi) into ``parts`` contiguous, nearly equal, non-empty intervals."""
    if parts < 1:
        raise ValueError("parts must be >= 1")
    size = hi - lo
    parts = max(1, min(parts, size))
    bounds = [lo + size * k // parts for k in range(parts + 1)]
    return [(bounds[k], bounds[k + 1]) for k in range(parts)]


# -- text format ---------------------------------------------------------------


def parse_graph_text(text: str) -> LabeledGraph:
    """Parse ``n <count>`` followed by 1-based ``u v`` lines or one ``mask <hex>`` line.

    Blank lines and ``#`` comments are ignored.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("graph text is empty")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise ValueError(f"first line must be 'n <count>', got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise ValueError(f"bad vertex count {head[1]!r}") from None
    body = lines[1:]
    if body and body[0].split()[0] == "mask":
        if len(body) != 1 or len(body[0].split()) != 2:
            raise ValueError("a 'mask <hex>' line must be the only line after the header")
        return LabeledGraph(n, parse_hex_mask(body[0].split()[1]))
    edges = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"edge line must be 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"non-integer vertex in {ln!r}") from None
        edges.append(normalize_edge(u - 1, v - 1))
    return graph_from_edges(n, edges)


def normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


def parse_hex_mask(s: str) -> int:
    try:
        return int(s, 16)
    except ValueError:
        raise ValueError(f"bad hex mask {s!r}") from None


def format_graph_text(g: LabeledGraph, as_mask: bool = False) -> str:
    if as_mask:
        return f"n {g.n}\nmask {g.edges:x}\n"
    return f"n {g.n}\n" + "".join(f"{u + 1} {v + 1}\n" for u, v in g.edge_list())
