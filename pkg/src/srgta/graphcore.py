"""Undirected simple graphs as packed bit matrices, and the SRG predicate.

The adjacency matrix is stored as n rows of uint64 words so that
common-neighbour counts (the dominant inner loop everywhere in this package)
are popcounts of ANDed rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class VertexOutOfRange(ValueError):
    def __init__(self, msg, line=None):
        super().__init__(msg)
        self.line = line


class ParseError(ValueError):
    def __init__(self, msg, line=None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


class LoopRejected(ParseError):
    pass


class ImprimitiveParams(ValueError):
    """Raised where an operation needs mu > 0 and a connected complement."""


class NotSrgError(ValueError):
    """Raised by operations whose precondition is a strongly regular input."""


@dataclass(frozen=True)
class SrgParams:
    n: int
    k: int
    lam: int
    mu: int

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.lam, self.mu)

    def complement(self) -> "SrgParams":
        n, k, lam, mu = self.astuple()
        return SrgParams(n, n - k - 1, n - 2 * k + mu - 2, n - 2 * k + lam)

    def __repr__(self):
        return f"({self.n},{self.k},{self.lam},{self.mu})"


@dataclass(frozen=True)
class NotSrg:
    """Negative result of is_strongly_regular; falsy, with a witness."""

    reason: str
    pair: tuple[int, int] | None = None

    def __bool__(self):
        return False


@dataclass(frozen=True)
class VertexPartition:
    """Base vertex with its neighbourhood three-way split."""

    omega: int
    delta0: tuple[int, ...]
    delta1: tuple[int, ...]
    delta2: tuple[int, ...]

    @property
    def cells(self):
        return (self.delta0, self.delta1, self.delta2)


class Graph:
    """Immutable simple graph on vertices 0..n-1."""

    __slots__ = ("n", "bits", "_words")

    def __init__(self, n: int, bits: np.ndarray):
        self.n = n
        self._words = (n + 63) // 64
        assert bits.shape == (n, self._words) and bits.dtype == np.uint64
        bits.setflags(write=False)
        self.bits = bits

    # -- constructors ----------------------------------------------------
    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        words = (n + 63) // 64
        bits = np.zeros((n, words), dtype=np.uint64)
        for u, v in edges:
            if u == v:
                raise LoopRejected(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge ({u},{v}) outside 0..{n - 1}")
            bits[u, v >> 6] |= np.uint64(1 << (v & 63))
            bits[v, u >> 6] |= np.uint64(1 << (u & 63))
        return Graph(n, bits)

    @staticmethod
    def from_dense(a: np.ndarray) -> "Graph":
        a = np.asarray(a)
        n = a.shape[0]
        assert a.shape == (n, n)
        mask = a != 0
        np.fill_diagonal(mask, False)
        if not np.array_equal(mask, mask.T):
            raise ValueError("adjacency matrix must be symmetric")
        words = (n + 63) // 64
        padded = np.zeros((n, words * 64), dtype=np.uint8)
        padded[:, :n] = mask
        bits = np.packbits(padded, axis=1, bitorder="little").view(np.uint64)
        return Graph(n, bits.copy())

    # -- queries -----------------------------------------------------------
    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.bits[u, v >> 6] >> np.uint64(v & 63)) & np.uint64(1))

    def dense_row(self, v: int) -> np.ndarray:
        row = np.unpackbits(self.bits[v].view(np.uint8), bitorder="little")
        return row[: self.n]

    def neighbours(self, v: int) -> list[int]:
        return np.nonzero(self.dense_row(v))[0].tolist()

    def degrees(self) -> np.ndarray:
        return np.bitwise_count(self.bits).sum(axis=1).astype(np.int64)

    def adjacency_dense(self) -> np.ndarray:
        rows = np.unpackbits(self.bits.view(np.uint8), axis=1, bitorder="little")
        return rows[:, : self.n].astype(np.int8)

    def edges(self) -> list[tuple[int, int]]:
        a = self.adjacency_dense()
        us, vs = np.nonzero(np.triu(a, 1))
        return list(zip(us.tolist(), vs.tolist()))

    @property
    def n_edges(self) -> int:
        return int(self.degrees().sum()) // 2

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self.bits, other.bits)
        )

    def __hash__(self):
        return hash((self.n, self.bits.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.n_edges})"


def complement(g: Graph) -> Graph:
    a = g.adjacency_dense()
    c = 1 - a
    np.fill_diagonal(c, 0)
    return Graph.from_dense(c)


def common_neighbour_counts(g: Graph) -> tuple[set[int], set[int]]:
    """Distinct common-neighbour counts over (adjacent, non-adjacent) pairs."""
    a = g.adjacency_dense().astype(np.float64)
    c = (a @ a).astype(np.int64)
    adj = g.adjacency_dense().astype(bool)
    off = ~np.eye(g.n, dtype=bool)
    return (
        set(np.unique(c[adj]).tolist()) if adj.any() else set(),
        set(np.unique(c[~adj & off]).tolist()) if (~adj & off).any() else set(),
    )


def is_strongly_regular(g: Graph):
    """SrgParams if g is strongly regular, else a falsy NotSrg witness.

    Complete and empty graphs are rejected: the decompositions downstream
    need all three of {base vertex} / neighbours / non-neighbours nonempty.
    """
    n = g.n
    if n < 2:
        raise ValueError("need at least 2 vertices")
    deg = g.degrees()
    k = int(deg[0])
    if not np.all(deg == k):
        bad = int(np.nonzero(deg != k)[0][0])
        return NotSrg("not regular", (0, bad))
    if k == 0:
        return NotSrg("empty graph")
    if k == n - 1:
        return NotSrg("complete graph")
    a = g.adjacency_dense()
    cf = a.astype(np.float64)
    c = (cf @ cf).astype(np.int64)
    adj = a.astype(bool)
    nonadj = ~adj
    np.fill_diagonal(nonadj, False)
    lam = int(c[adj][0])
    mu_vals = c[nonadj]
    mu = int(mu_vals[0])
    bad_lam = adj & (c != lam)
    if bad_lam.any():
        u, v = np.argwhere(bad_lam)[0]
        return NotSrg("adjacent common-neighbour count not constant", (int(u), int(v)))
    bad_mu = nonadj & (c != mu)
    if bad_mu.any():
        u, v = np.argwhere(bad_mu)[0]
        return NotSrg("non-adjacent common-neighbour count not constant", (int(u), int(v)))
    return SrgParams(n, k, lam, mu)


def require_srg(g: Graph) -> SrgParams:
    p = is_strongly_regular(g)
    if not p:
        raise NotSrgError(p.reason)
    return p


def is_primitive(params: SrgParams) -> bool:
    """Both the graph and its complement connected (mu > 0 and p_22^1 > 0)."""
    n, k, lam, mu = params.astuple()
    return mu > 0 and (n - 2 * k + lam) > 0


def subconstituents(g: Graph, omega: int = 0):
    """Induced subgraphs on the neighbours and non-neighbours of omega."""
    if not (0 <= omega < g.n):
        raise VertexOutOfRange(f"vertex {omega} outside 0..{g.n - 1}")
    row = g.dense_row(omega).astype(bool)
    d1 = tuple(np.nonzero(row)[0].tolist())
    rest = ~row
    rest[omega] = False
    d2 = tuple(np.nonzero(rest)[0].tolist())
    part = VertexPartition(omega, (omega,), d1, d2)
    return induced_subgraph(g, d1), induced_subgraph(g, d2), part


def induced_subgraph(g: Graph, vertices) -> Graph:
    idx = np.asarray(vertices, dtype=np.int64)
    a = g.adjacency_dense()[np.ix_(idx, idx)]
    return Graph.from_dense(a)


def clique_extension(g: Graph, m: int) -> Graph:
    """Blow each vertex up into an m-clique; copy (i,u) becomes index i*n+u."""
    if m < 1:
        raise ValueError("m must be >= 1")
    n = g.n
    a = g.adjacency_dense().astype(np.int8)
    jm = np.ones((m, m), dtype=np.int8)
    big = np.kron(jm, a) + np.kron(jm - np.eye(m, dtype=np.int8), np.eye(n, dtype=np.int8))
    return Graph.from_dense(big)


# -- file round trip -------------------------------------------------------

def read_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    header = None
    edges = []
    expected = None
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        parts = text.split()
        try:
            nums = [int(t) for t in parts]
        except ValueError:
            raise ParseError(f"non-integer token in {parts!r}", lineno)
        if header is None:
            if len(nums) != 2:
                raise ParseError("header must be 'n m'", lineno)
            header = nums
            expected = nums[1]
            if header[0] < 0 or header[1] < 0:
                raise ParseError("negative header field", lineno)
            continue
        if len(nums) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        u, v = nums
        if u == v:
            raise LoopRejected(f"loop at vertex {u}", lineno)
        if not (0 <= u < header[0] and 0 <= v < header[0]):
            raise VertexOutOfRange(f"edge ({u},{v}) outside 0..{header[0] - 1}", lineno)
        if u > v:
            raise ParseError(f"edges must satisfy u < v, got ({u},{v})", lineno)
        edges.append((u, v))
    if header is None:
        raise ParseError("missing 'n m' header", len(lines) or 1)
    if len(edges) != expected:
        # header counts edge lines; duplicates are tolerated but still counted
        raise ParseError(
            f"header announced {expected} edges, found {len(edges)} edge lines",
            len(lines),
        )
    return Graph.from_edges(header[0], sorted(set(edges)))


def write_graph(g: Graph, path) -> None:
    edges = sorted(g.edges())
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{g.n} {len(edges)}\n")
        for u, v in edges:
            fh.write(f"{u} {v}\n")
