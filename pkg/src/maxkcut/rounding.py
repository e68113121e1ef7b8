"""Randomized rounding of a vector relaxation solution into k parts.

Four schemes:

* ``uniform``  - independent uniform labels (the 1-1/k baseline).
* ``fj``       - Frieze-Jerrum: k Gaussian vectors, each vertex takes the
                 index of the maximizing dot product.
* ``disc``     - lift each v_i to the 2-dimensional disc spanned by (v_i, 0)
                 and (0, v_i), project one Gaussian g onto every disc to get
                 an angle theta_i, then cut the circle into k equal sectors
                 at a uniform random offset psi.
* ``simplex``  - project each v_i onto k-1 shared Gaussians and snap the
                 resulting (k-1)-vector to the nearest vertex of the
                 equilateral simplex (for k=2 this is hyperplane rounding).

Multi-trial drivers run in RNG blocks (see ``maxkcut.rng``): results are
deterministic for a fixed (solution, scheme, k, seed) and independent of how
many trials are requested.  A single rounding call is exactly trial 0 of the
corresponding driver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .graph import WeightedGraph, cut_value
from .rng import TRIAL_BLOCK, block_layout, stream
from .sdp import SdpSolution
from .simplex import build_simplex

TWO_PI = 2.0 * np.pi

SCHEMES = ("uniform", "fj", "disc", "simplex")

_PURPOSE = {
    "uniform": "uniform",
    "fj": "frieze-jerrum",
    "disc": "disc",
    "simplex": "simplex",
}


@dataclass(frozen=True)
class Partition:
    """Assignment of each vertex to one of k parts, with its cut weight."""

    labels: np.ndarray
    k: int
    value: float
    scheme: str
    seed: int | None

    def __post_init__(self):
        labels = np.asarray(self.labels)
        if labels.size and (labels.min() < 0 or labels.max() >= self.k):
            raise ValueError("labels out of range [0, k)")

    def to_dict(self):
        return {
            "k": self.k,
            "scheme": self.scheme,
            "seed": self.seed,
            "labels": [int(x) for x in self.labels],
            "value": self.value,
        }


@dataclass(frozen=True)
class AngleAssignment:
    """Per-vertex disc angles plus the sector offset of one disc-rounding draw."""

    thetas: np.ndarray  # (n,), in [0, 2pi)
    psi: float
    degenerate: np.ndarray  # (n,) bool, True where g was orthogonal to the disc

    def labels(self, k: int) -> np.ndarray:
        theta = np.ascontiguousarray(self.thetas[None, :], dtype=np.float64)
        psi = np.asarray([self.psi], dtype=np.float64)
        return kernels.sector_labels(theta, psi, k)[0]


class DiscEmbedding:
    """Per-vertex discs v_i(phi) = (v_i, 0) cos(phi) + (0, v_i) sin(phi).

    The two spanning vectors have disjoint supports, so they are exactly
    orthogonal and every v_i(phi) is unit.  For two vertices the correlation
    identity v_i(p1) . v_j(p2) = (v_i . v_j) cos(p1 - p2) holds, which is the
    property the rounding analysis relies on.
    """

    def __init__(self, vectors):
        V = np.ascontiguousarray(vectors, dtype=np.float64)
        norms = np.linalg.norm(V, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-6:
            raise ValueError("disc embedding requires unit vectors")
        self.vectors = V

    @property
    def n(self):
        return self.vectors.shape[0]

    @property
    def dim(self):
        """Ambient dimension 2d of the lifted vectors."""
        return 2 * self.vectors.shape[1]

    def base(self):
        """The (v_i, 0) vectors, shape (n, 2d)."""
        d = self.vectors.shape[1]
        out = np.zeros((self.n, 2 * d))
        out[:, :d] = self.vectors
        return out

    def perp(self):
        """The (0, v_i) vectors, shape (n, 2d)."""
        d = self.vectors.shape[1]
        out = np.zeros((self.n, 2 * d))
        out[:, d:] = self.vectors
        return out

    def at_angle(self, i: int, phi: float):
        """The disc vector v_i(phi)."""
        d = self.vectors.shape[1]
        out = np.zeros(2 * d)
        out[:d] = self.vectors[i] * np.cos(phi)
        out[d:] = self.vectors[i] * np.sin(phi)
        return out

    def project_angle(self, i: int, g):
        """Angle maximizing g . v_i(phi), via atan2 of the two disc dots.

        Returns (theta, degenerate); a g orthogonal to the whole disc
        (probability zero) yields theta = 0 with the flag set.
        """
        g = np.asarray(g, dtype=np.float64)
        if g.shape != (self.dim,):
            raise ValueError(f"expected dimension {self.dim}, got shape {g.shape}")
        d = self.vectors.shape[1]
        a = float(g[:d] @ self.vectors[i])
        b = float(g[d:] @ self.vectors[i])
        if a == 0.0 and b == 0.0:
            return 0.0, True
        return float(np.mod(np.arctan2(b, a), TWO_PI)), False

    def project_all(self, g):
        """Vectorized project_angle over all vertices."""
        g = np.asarray(g, dtype=np.float64)
        if g.shape != (self.dim,):
            raise ValueError(f"expected dimension {self.dim}, got shape {g.shape}")
        d = self.vectors.shape[1]
        a = self.vectors @ g[:d]
        b = self.vectors @ g[d:]
        degenerate = (a == 0.0) & (b == 0.0)
        thetas = np.mod(np.arctan2(b, a), TWO_PI)
        thetas[degenerate] = 0.0
        return thetas, degenerate


def build_discs(solution: SdpSolution) -> DiscEmbedding:
    return DiscEmbedding(solution.vectors)


def _block_labels(scheme, k, seed, block, V, n, simplex_vertices):
    """Labels for one full RNG block; callers slice off the rows they use."""
    rng = stream(seed, _PURPOSE[scheme], block)
    B = TRIAL_BLOCK
    if scheme == "uniform":
        return rng.integers(0, k, size=(B, n), dtype=np.int32)
    d = V.shape[1]
    if scheme == "fj":
        G = rng.standard_normal((B, k, d))
        scores = np.einsum("bhd,nd->bnh", G, V)
        return np.ascontiguousarray(np.argmax(scores, axis=2), dtype=np.int32)
    if scheme == "disc":
        G = rng.standard_normal((B, 2 * d))
        psi = rng.uniform(0.0, TWO_PI, B)
        theta = np.arctan2(G[:, d:] @ V.T, G[:, :d] @ V.T)
        return kernels.sector_labels(np.ascontiguousarray(theta), psi, k)
    if scheme == "simplex":
        G = rng.standard_normal((B, k - 1, d))
        Z = np.einsum("bjd,nd->bnj", G, V)
        scores = Z @ simplex_vertices.T
        return np.ascontiguousarray(np.argmax(scores, axis=2), dtype=np.int32)
    raise ValueError(f"unknown scheme {scheme!r}; choose from {SCHEMES}")


def iter_label_blocks(solution, scheme, k, trials, seed, n=None):
    """Yield (rows_used, n) int32 label blocks for a trial run.

    ``solution`` may be None for the uniform scheme if ``n`` is given.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; choose from {SCHEMES}")
    V = None
    if scheme != "uniform":
        if solution is None:
            raise ValueError(f"scheme {scheme!r} requires a solution")
        V = np.ascontiguousarray(solution.vectors, dtype=np.float64)
        n = V.shape[0]
    elif n is None:
        if solution is None:
            raise ValueError("uniform scheme needs a solution or explicit n")
        n = solution.n
    W = build_simplex(k).vertices if scheme == "simplex" else None
    for block, used in block_layout(trials):
        labels = _block_labels(scheme, k, seed, block, V, n, W)
        yield labels[:used] if used < TRIAL_BLOCK else labels


@dataclass
class TrialResult:
    """Cut values of every trial plus the best partition found."""

    values: np.ndarray
    best: Partition
    scheme: str
    seed: int

    @property
    def trials(self):
        return len(self.values)

    @property
    def mean(self):
        return float(self.values.mean())

    @property
    def stderr(self):
        if len(self.values) < 2:
            return 0.0
        return float(self.values.std(ddof=1) / np.sqrt(len(self.values)))

    def write_csv(self, f):
        f.write("trial,value\n")
        for t, val in enumerate(self.values):
            f.write(f"{t},{val!r}\n")


@dataclass
class EdgeCutStats:
    """Per-edge cut counts over a trial run."""

    counts: np.ndarray  # (m,) int64
    trials: int

    @property
    def frequencies(self):
        return self.counts / self.trials

    @property
    def stderr(self):
        f = self.frequencies
        return np.sqrt(f * (1.0 - f) / self.trials)


def run_trials(solution, graph: WeightedGraph, scheme, k, trials, seed=0) -> TrialResult:
    """Round ``trials`` times and keep every cut value plus the best labels.

    Ties on the best value resolve to the earliest trial, so the result is
    deterministic and independent of block iteration order.
    """
    _check_sizes(solution, graph, scheme)
    values = np.empty(trials)
    best_value = -1.0
    best_labels = None
    offset = 0
    for labels in iter_label_blocks(solution, scheme, k, trials, seed, n=graph.n):
        vals = kernels.cut_values(labels, graph.edge_u, graph.edge_v, graph.edge_w)
        values[offset : offset + len(vals)] = vals
        top = int(np.argmax(vals))
        if vals[top] > best_value:
            best_value = float(vals[top])
            best_labels = labels[top].copy()
        offset += len(vals)
    best = Partition(
        labels=best_labels, k=k, value=best_value, scheme=scheme, seed=seed
    )
    return TrialResult(values=values, best=best, scheme=scheme, seed=seed)


def edge_cut_frequencies(
    solution, graph: WeightedGraph, scheme, k, trials, seed=0
) -> EdgeCutStats:
    """Per-edge cut frequencies over a trial run (binomial counts)."""
    _check_sizes(solution, graph, scheme)
    counts = np.zeros(graph.m, dtype=np.int64)
    for labels in iter_label_blocks(solution, scheme, k, trials, seed, n=graph.n):
        counts += kernels.diff_counts(labels, graph.edge_u, graph.edge_v)
    return EdgeCutStats(counts=counts, trials=trials)


def label_histogram(solution, scheme, k, trials, seed=0, n=None) -> np.ndarray:
    """(n, k) counts of how often each vertex received each label."""
    hist = None
    for labels in iter_label_blocks(solution, scheme, k, trials, seed, n=n):
        block_hist = np.stack([(labels == c).sum(axis=0) for c in range(k)], axis=1)
        hist = block_hist if hist is None else hist + block_hist
    return hist


def _check_sizes(solution, graph, scheme):
    if scheme != "uniform" and solution is not None and solution.n != graph.n:
        raise ValueError("solution and graph disagree on vertex count")


def _single(solution, graph, scheme, k, seed) -> Partition:
    return run_trials(solution, graph, scheme, k, trials=1, seed=seed).best


def round_uniform(graph: WeightedGraph, k: int, seed: int = 0) -> Partition:
    """Independent uniform labels; expected cut (1 - 1/k) * total weight."""
    return _single(None, graph, "uniform", k, seed)


def round_frieze_jerrum(
    solution: SdpSolution, graph: WeightedGraph, k: int, seed: int = 0
) -> Partition:
    """Label each vertex by its maximizing Gaussian among k independent ones."""
    return _single(solution, graph, "fj", k, seed)


def round_disc(
    solution: SdpSolution, graph: WeightedGraph, k: int, seed: int = 0
) -> Partition:
    """One Gaussian in dimension 2d, one uniform sector offset, k sectors."""
    return _single(solution, graph, "disc", k, seed)


def round_simplex(
    solution: SdpSolution, graph: WeightedGraph, k: int, seed: int = 0
) -> Partition:
    """k-1 Gaussian projections snapped to the nearest simplex vertex."""
    return _single(solution, graph, "simplex", k, seed)


def disc_rounding_angles(solution: SdpSolution, seed: int = 0) -> AngleAssignment:
    """The (thetas, psi) of disc-rounding trial 0 for the given seed.

    Mirrors the draw layout of the disc trial driver: the Gaussian block
    comes first, then the sector offsets, so labels(k) of the result equal
    the labels of round_disc(solution, graph, k, seed).
    """
    V = np.ascontiguousarray(solution.vectors, dtype=np.float64)
    d = V.shape[1]
    rng = stream(seed, "disc", 0)
    G = rng.standard_normal((TRIAL_BLOCK, 2 * d))
    psi = rng.uniform(0.0, TWO_PI, TRIAL_BLOCK)
    emb = DiscEmbedding(V)
    thetas, degenerate = emb.project_all(G[0])
    return AngleAssignment(thetas=thetas, psi=float(psi[0]), degenerate=degenerate)
