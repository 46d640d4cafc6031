"""Immutable undirected simple graphs in CSR form, plus edge-list loaders."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

import numpy as np

MAX_LABEL = 2**63 - 1


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, lineno: int, line: str, reason: str):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {reason}: {line.rstrip()!r}")


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph with dense vertex ids ``0..n-1``.

    ``indptr``/``indices`` hold the compressed adjacency; each neighbor list is
    strictly ascending. ``labels[v]`` is the original input label of vertex ``v``.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: np.ndarray

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as ``(u, v)`` with ``u < v``."""
        for u in range(self.n):
            for v in self.neighbors(u):
                if v > u:
                    yield u, int(v)

    def edge_array(self) -> np.ndarray:
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = src < self.indices
        return np.stack([src[keep], self.indices[keep].astype(np.int64)], axis=1)

    def label_of(self, v: int) -> int:
        return int(self.labels[v])

    def id_of(self, label: int) -> int:
        i = int(np.searchsorted(self.labels, label))
        if i >= self.n or self.labels[i] != label:
            raise KeyError(label)
        return i

    def density(self) -> float:
        if self.n < 2:
            return 1.0
        return self.m / (self.n * (self.n - 1) / 2)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, max_degree={self.max_degree})"


def _as_pair_array(edges) -> np.ndarray:
    if not isinstance(edges, np.ndarray):
        edges = list(edges)
        if not edges:
            return np.empty((0, 2), dtype=np.int64)
    try:
        out = np.asarray(edges, dtype=np.int64)
    except OverflowError:
        raise GraphError(f"vertex label outside [0, {MAX_LABEL}]") from None
    except (TypeError, ValueError) as exc:
        raise GraphError(f"unsupported vertex label: {exc}") from None
    if out.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    if out.ndim != 2 or out.shape[1] != 2:
        raise GraphError("edges must be pairs of vertex labels")
    if (out < 0).any():
        raise GraphError("vertex labels must be non-negative")
    return out


def build_graph(edges: Iterable[tuple[int, int]] | np.ndarray,
                vertices: Iterable[int] | None = None) -> Graph:
    """Canonicalize a list of unordered label pairs into a :class:`Graph`.

    Self-loops are dropped and duplicate edges collapsed. Every label that
    appears in ``edges`` (including in a dropped self-loop) or in ``vertices``
    becomes a vertex; labels are mapped to dense ids in ascending label order.
    """
    pairs = _as_pair_array(edges)
    extra = (np.empty(0, dtype=np.int64) if vertices is None
             else _as_pair_array([(v, v) for v in vertices])[:, 0])
    labels = np.unique(np.concatenate([pairs.ravel(), extra]))
    n = len(labels)
    if n >= 2**31:
        raise GraphError("too many vertices")

    ids = np.searchsorted(labels, pairs)
    ids = ids[ids[:, 0] != ids[:, 1]]
    lo = np.minimum(ids[:, 0], ids[:, 1])
    hi = np.maximum(ids[:, 0], ids[:, 1])
    key = np.unique(lo * n + hi)
    lo, hi = key // n, key % n

    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    indices = dst.astype(np.int32)
    for a in (indptr, indices, labels):
        a.setflags(write=False)
    return Graph(indptr=indptr, indices=indices, labels=labels)


def _parse_pairs(lines: Iterable[str], start_lineno: int = 1):
    pairs = []
    for lineno, line in enumerate(lines, start_lineno):
        s = line.strip()
        if not s or s[0] in "#%":
            continue
        tok = s.split()
        if len(tok) < 2:
            raise ParseError(lineno, line, "expected two vertex labels")
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise ParseError(lineno, line, "non-integer vertex label") from None
        if u < 0 or v < 0 or u > MAX_LABEL or v > MAX_LABEL:
            raise ParseError(lineno, line, "vertex label out of range")
        pairs.append((u, v))
    return pairs


def load_edge_list(stream: TextIO) -> Graph:
    """Read a SNAP-style whitespace edge list.

    Lines starting with ``#`` or ``%`` are comments; columns past the second
    (weights, timestamps) are ignored. A file whose first line is a
    MatrixMarket banner is handed to :func:`load_matrix_market`.
    """
    first = stream.readline()
    if first.startswith("%%MatrixMarket"):
        return _read_matrix_market_body(first, stream)
    pairs = _parse_pairs([first], 1) + _parse_pairs(stream, 2)
    return build_graph(pairs)


def load_matrix_market(stream: TextIO) -> Graph:
    first = stream.readline()
    if not first.startswith("%%MatrixMarket"):
        raise ParseError(1, first, "missing %%MatrixMarket banner")
    return _read_matrix_market_body(first, stream)


def _read_matrix_market_body(banner: str, stream: TextIO) -> Graph:
    fields = banner.lower().split()
    if len(fields) < 3 or fields[2] != "coordinate":
        raise ParseError(1, banner, "only coordinate MatrixMarket files are supported")
    lineno = 1
    rows = None
    for line in stream:
        lineno += 1
        s = line.strip()
        if not s or s.startswith("%"):
            continue
        tok = s.split()
        try:
            rows, cols = int(tok[0]), int(tok[1])
        except (ValueError, IndexError):
            raise ParseError(lineno, line, "bad size line") from None
        break
    if rows is None:
        return build_graph([])
    pairs = _parse_pairs(stream, lineno + 1)
    # every index in the declared range is a vertex, isolated or not
    return build_graph(pairs, vertices=range(1, max(rows, cols) + 1))


def read_graph(path) -> Graph:
    with open(path, "r") as fh:
        return load_edge_list(fh)


def write_edge_list(G: Graph, stream: TextIO) -> None:
    """Write ``G`` using its original labels.

    Isolated vertices are written as self-loop lines so that reloading keeps
    them (the loader drops the loop but keeps the label).
    """
    stream.write(f"# n={G.n} m={G.m}\n")
    for u, v in G.edges():
        stream.write(f"{G.labels[u]} {G.labels[v]}\n")
    for v in np.flatnonzero(G.degrees == 0):
        stream.write(f"{G.labels[v]} {G.labels[v]}\n")
