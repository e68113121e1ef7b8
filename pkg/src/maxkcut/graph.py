"""Weighted undirected graphs and edge-list file I/O.

External file format (biqmac/rudy convention): first line ``n m``, then m
lines ``u v w`` with 1-based vertex ids and nonnegative decimal weights.
Lines starting with ``#`` are comments.  Vertex ids are 0-based internally.
"""

from __future__ import annotations

import math

import numpy as np


class GraphFormatError(ValueError):
    """Raised for malformed edge-list input; carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class WeightedGraph:
    """Immutable undirected graph with nonnegative edge weights.

    Vertices are 0..n-1; no self-loops, no duplicate (unordered) edges.
    """

    __slots__ = ("n", "edge_u", "edge_v", "edge_w")

    def __init__(self, n, edges):
        if n < 1:
            raise ValueError("vertex count must be positive")
        seen = set()
        us, vs, ws = [], [], []
        for u, v, w in edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if w < 0 or not math.isfinite(w):
                raise ValueError(f"edge ({u}, {v}) has invalid weight {w}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            us.append(u)
            vs.append(v)
            ws.append(w)
        self.n = int(n)
        self.edge_u = np.asarray(us, dtype=np.int64)
        self.edge_v = np.asarray(vs, dtype=np.int64)
        self.edge_w = np.asarray(ws, dtype=np.float64)

    @property
    def m(self):
        return len(self.edge_u)

    @property
    def total_weight(self):
        return float(self.edge_w.sum())

    def edges(self):
        """Edges as a list of (u, v, w) tuples, in input order."""
        return [
            (int(u), int(v), float(w))
            for u, v, w in zip(self.edge_u, self.edge_v, self.edge_w)
        ]

    def max_weighted_degree(self):
        deg = np.zeros(self.n)
        np.add.at(deg, self.edge_u, self.edge_w)
        np.add.at(deg, self.edge_v, self.edge_w)
        return float(deg.max()) if self.n else 0.0

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.edge_u, other.edge_u)
            and np.array_equal(self.edge_v, other.edge_v)
            and np.array_equal(self.edge_w, other.edge_w)
        )

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={self.m}, total_weight={self.total_weight})"


def parse_graph(source) -> WeightedGraph:
    """Parse the edge-list format ("n m" header, then "u v w" lines, 1-based).

    Accepts str, bytes, or a file-like object.  UTF-8; LF or CRLF.  Raises
    GraphFormatError with the offending line number on malformed input.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")

    header = None
    rows = []  # (line_number, u, v, w)
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphFormatError("header must be 'n m'", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError("header must contain two integers", lineno)
            if n < 1 or m < 0:
                raise GraphFormatError("header requires n >= 1 and m >= 0", lineno)
            header = (n, m)
            continue
        if len(parts) != 3:
            raise GraphFormatError("edge line must be 'u v w'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise GraphFormatError("edge line must be two integers and a decimal", lineno)
        rows.append((lineno, u, v, w))

    if header is None:
        raise GraphFormatError("empty input: missing 'n m' header")
    n, m = header
    if len(rows) != m:
        raise GraphFormatError(f"header declares {m} edges but {len(rows)} were given")

    seen = set()
    edges = []
    for lineno, u, v, w in rows:
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"vertex id out of range 1..{n}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if w < 0:
            raise GraphFormatError(f"negative weight {w}", lineno)
        if not math.isfinite(w):
            raise GraphFormatError(f"non-finite weight {w}", lineno)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
        seen.add(key)
        edges.append((u - 1, v - 1, w))
    return WeightedGraph(n, edges)


def serialize_graph(g: WeightedGraph) -> str:
    """Inverse of parse_graph (1-based ids; weights in round-trip repr)."""
    lines = [f"{g.n} {g.m}"]
    for u, v, w in g.edges():
        lines.append(f"{u + 1} {v + 1} {w!r}")
    return "\n".join(lines) + "\n"


def complete_graph(k: int, w: float = 1.0) -> WeightedGraph:
    """K_k with uniform edge weight w."""
    if k < 2:
        raise ValueError("complete graph needs k >= 2")
    edges = [(i, j, w) for i in range(k) for j in range(i + 1, k)]
    return WeightedGraph(k, edges)


def cut_value(g: WeightedGraph, labels) -> float:
    """Total weight of edges whose endpoints get different labels."""
    labels = np.asarray(labels)
    if labels.shape != (g.n,):
        raise ValueError(f"expected {g.n} labels, got shape {labels.shape}")
    if g.m == 0:
        return 0.0
    return float(g.edge_w @ (labels[g.edge_u] != labels[g.edge_v]))
