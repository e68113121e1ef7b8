"""Exact cut-probability formulas for disc rounding, with Monte Carlo oracles.

Everything here is driven by the distribution of the angle difference
gamma = (theta_j - theta_i) mod 2pi obtained when one Gaussian vector is
projected onto two unit discs whose correlation is r = v_i . v_j:

    angle_cdf(r, delta) = Pr[gamma < delta]
        = (1/2pi) * (delta + r sin(delta) / sqrt(1 - r^2 cos^2(delta))
                             * arccos(-r cos(delta)))

Integrating the sector geometry against this law gives, for the k-sector
rounding with a uniform random offset,

    modk_probability(r, k, c) = Pr[label_i - label_j = c (mod k)]
        = 1/k + (k / 8 pi^2) * (2 A(c) - A(c+1) - A(c-1)),
          A(x) = arccos^2(-r cos(2 pi x / k))

    cut_probability(r, k) = 1 - modk_probability(r, k, 0)
        = (k-1)/k + (k / 4 pi^2) * (A(1) - A(0))

and the worst case over the feasible correlation range r >= -1/(k-1) is
attained at the left endpoint, giving the scheme's approximation guarantee
approximation_guarantee(k) = cut_probability(-1/(k-1), k).

The Monte Carlo oracles (mc_angle_cdf, mc_cut_probability) sample the four
relevant Gaussian coordinates of the canonical disc pair directly and are
the independent check on the formulas above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .graph import WeightedGraph
from .rng import TRIAL_BLOCK, block_layout, stream
from .sdp import SdpSolution

TWO_PI = 2.0 * math.pi

# Published guarantees of the Frieze-Jerrum and De Klerk-Pasechnik-Warners
# algorithms, used as comparison columns only (their analyses are not
# reproduced here).
PUBLISHED_FJ = {3: 0.832718, 4: 0.850304, 5: 0.874243, 10: 0.926642}
PUBLISHED_DKPW = {3: 0.836008, 4: 0.857487, 5: 0.876610, 10: 0.926788}


def _check_r(r):
    r = float(r)
    if math.isnan(r):
        raise ValueError("r must not be NaN")
    if not -1.0 <= r <= 1.0:
        raise ValueError(f"correlation r must lie in [-1, 1], got {r}")
    return r


def angle_cdf(r, delta):
    """Pr[gamma < delta] for the angle difference of two discs at correlation r.

    Exact for |r| < 1; at |r| = 1 the angle distribution carries atoms and
    this expression is its everywhere-nondecreasing version with
    angle_cdf(r, 0) = 0 and angle_cdf(r, 2pi) = 1 exactly.  ``delta`` may be
    a scalar or an array.
    """
    r = _check_r(r)
    delta_in = np.asarray(delta, dtype=np.float64)
    if np.any(np.isnan(delta_in)):
        raise ValueError("delta must not be NaN")
    if np.any((delta_in < 0.0) | (delta_in > TWO_PI + 1e-12)):
        raise ValueError("delta must lie in [0, 2pi]")
    d = np.minimum(delta_in, TWO_PI)
    cos_d = np.cos(d)
    den_sq = 1.0 - r * r * cos_d * cos_d
    # den_sq ~ 0 only for |r| = 1 with delta in {0, pi, 2pi}, where the
    # sin(delta) numerator vanishes too; define the ratio as 0 there.
    singular = den_sq < 1e-14
    den = np.sqrt(np.where(singular, 1.0, den_sq))
    ratio = np.where(singular, 0.0, r * np.sin(d) / den)
    val = (d + ratio * np.arccos(np.clip(-r * cos_d, -1.0, 1.0))) / TWO_PI
    val = np.clip(val, 0.0, 1.0)
    # exact endpoints: analytically sin(0) = sin(2pi) = 0, so only the d/2pi
    # term survives; float sin(2pi) is not quite 0, so pin the boundary values
    val = np.where(d == 0.0, 0.0, np.where(d == TWO_PI, 1.0, val))
    return float(val) if np.isscalar(delta) or delta_in.ndim == 0 else val


@dataclass(frozen=True)
class MonteCarloEstimate:
    value: float
    stderr: float
    samples: int


def gamma_samples(r, samples: int, seed: int = 0) -> np.ndarray:
    """Sample the angle difference gamma on the canonical disc pair.

    Draws the four relevant Gaussian coordinates per sample: disc i spans
    coordinates (1, 2); disc j mixes them with the orthogonal pair (3, 4) at
    correlation r.
    """
    r = _check_r(r)
    s = math.sqrt(max(0.0, 1.0 - r * r))
    out = np.empty(samples)
    offset = 0
    for block, used in block_layout(samples):
        g = stream(seed, "gamma", block).standard_normal((TRIAL_BLOCK, 4))
        out[offset : offset + used] = kernels.gamma_angles(g, r, s)[:used]
        offset += used
    return out


def mc_angle_cdf(r, delta, samples: int, seed: int = 0) -> MonteCarloEstimate:
    """Monte Carlo estimate of angle_cdf(r, delta) with binomial stderr."""
    delta = float(delta)
    gam = gamma_samples(r, samples, seed)
    p = float(np.mean(gam < delta))
    return MonteCarloEstimate(
        value=p, stderr=math.sqrt(p * (1.0 - p) / samples), samples=samples
    )


def empirical_cdf_gap(r, samples: int, seed: int = 0, grid_points: int = 64):
    """sup |empirical - closed form| of the gamma CDF over a delta grid.

    The grid is ``grid_points`` evenly spaced interior points of (0, 2pi).
    Returns (sup_gap, deltas, gaps).
    """
    gam = np.sort(gamma_samples(r, samples, seed))
    deltas = np.linspace(0.0, TWO_PI, grid_points + 2)[1:-1]
    ecdf = np.searchsorted(gam, deltas, side="left") / samples
    gaps = np.abs(ecdf - angle_cdf(r, deltas))
    return float(gaps.max()), deltas, gaps


def _acos_sq(x):
    return math.acos(min(1.0, max(-1.0, x))) ** 2


def modk_probability(r, k: int, c: int) -> float:
    """Probability that the two sector labels differ by exactly c (mod k)."""
    r = _check_r(r)
    if k < 2:
        raise ValueError("k must be >= 2")
    if not 0 <= c < k:
        raise ValueError(f"offset c must lie in [0, k), got {c}")
    a0 = _acos_sq(-r * math.cos(TWO_PI * c / k))
    ap = _acos_sq(-r * math.cos(TWO_PI * (c + 1) / k))
    am = _acos_sq(-r * math.cos(TWO_PI * (c - 1) / k))
    val = 1.0 / k + (k / (8.0 * math.pi**2)) * (2.0 * a0 - ap - am)
    return min(1.0, max(0.0, val))


def cut_probability(r, k: int) -> float:
    """Probability that disc rounding separates an edge with correlation r."""
    r = _check_r(r)
    if k < 2:
        raise ValueError("k must be >= 2")
    a1 = _acos_sq(-r * math.cos(TWO_PI / k))
    a0 = _acos_sq(-r)
    val = (k - 1.0) / k + (k / (4.0 * math.pi**2)) * (a1 - a0)
    return min(1.0, max(0.0, val))


def approximation_guarantee(k: int) -> float:
    """Worst-case ratio of disc rounding: the cut probability at r = -1/(k-1).

    Defined for k >= 3, where the ratio curve is minimized at the left
    endpoint of the feasible correlation range; use worst_case_ratio for a
    descriptive k = 2 number.
    """
    if k < 3:
        raise ValueError("guarantee is stated for k >= 3; use worst_case_ratio for k=2")
    q = 1.0 / (k - 1.0)
    bracket = _acos_sq(q * math.cos(TWO_PI / k)) - _acos_sq(q)
    return (k - 1.0) / k + (k / (4.0 * math.pi**2)) * bracket


def worst_case_ratio(k: int, points: int = 10_000):
    """Grid minimum of cut_probability(r, k) / ((1-r)(k-1)/k) over feasible r.

    The grid covers [-1/(k-1), 1) inclusive of the left endpoint.  Returns
    (minimum, argmin_r).  For k >= 3 the minimum sits at the left endpoint
    (checked numerically in the test suite); for k = 2 the result is
    descriptive only.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if points < 2:
        raise ValueError("need at least 2 grid points")
    lo = -1.0 / (k - 1.0)
    grid = np.linspace(lo, 1.0, points, endpoint=False)
    coeff = (k - 1.0) / k
    ratios = np.array([cut_probability(r, k) / ((1.0 - r) * coeff) for r in grid])
    idx = int(np.argmin(ratios))
    return float(ratios[idx]), float(grid[idx])


def mc_cut_probability(r, k: int, samples: int, seed: int = 0) -> MonteCarloEstimate:
    """Monte Carlo estimate of cut_probability on the canonical disc pair.

    Uses gamma plus one uniform variate per sample: writing
    gamma = (c + f) * 2pi/k, the labels differ by c with probability 1-f and
    by c+1 with probability f (uniformity of the sector offset), so the edge
    is uncut exactly when c = 0 with the 1-f branch or c = k-1 with the f
    branch.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    gam = gamma_samples(r, samples, seed)
    # the uniform within-sector position variate, one per trial
    x = np.empty(samples)
    offset = 0
    for block, used in block_layout(samples):
        rng = stream(seed, "sector", block)
        x[offset : offset + used] = rng.random(TRIAL_BLOCK)[:used]
        offset += used
    scaled = gam * (k / TWO_PI)
    c = np.floor(scaled)
    f = scaled - c
    c = c.astype(np.int64) % k
    step_up = x < f
    uncut = ((c == 0) & ~step_up) | ((c == k - 1) & step_up)
    p = float(1.0 - np.mean(uncut))
    return MonteCarloEstimate(
        value=p, stderr=math.sqrt(p * (1.0 - p) / samples), samples=samples
    )


@dataclass(frozen=True)
class DiscPair:
    """Two correlated unit discs in canonical 4-coordinate position.

    x_i(phi) spans coordinates (1, 2); x_j(phi) equals x_i tilted toward the
    orthogonal pair (3, 4) so that x_i(p1) . x_j(p2) = r cos(p1 - p2).
    """

    r: float

    def __post_init__(self):
        _check_r(self.r)

    @property
    def s(self):
        return math.sqrt(max(0.0, 1.0 - self.r * self.r))

    def x_i(self, phi):
        return np.array([math.cos(phi), math.sin(phi), 0.0, 0.0])

    def x_j(self, phi):
        c, s = math.cos(phi), math.sin(phi)
        return np.array([self.r * c, self.r * s, self.s * c, self.s * s])

    def edge_graph(self, w: float = 1.0) -> WeightedGraph:
        return WeightedGraph(2, [(0, 1, w)])

    def to_solution(self, k: int) -> SdpSolution:
        """Two-vertex solution whose single edge has dot product r."""
        vectors = np.array([[1.0, 0.0], [self.r, self.s]])
        return SdpSolution(
            vectors=vectors,
            objective=(1.0 - self.r) * (k - 1.0) / k,
            max_norm_violation=0.0,
            max_dot_violation=max(0.0, -1.0 / (k - 1.0) - self.r),
            iterations=0,
            k=k,
            seed=None,
            converged=True,
        )


@dataclass
class RatioReport:
    """Closed-form constants and optional simulation evidence for one k."""

    k: int
    guarantee: float
    worst_case_r: float
    r_grid: np.ndarray
    cut_curve: np.ndarray
    uniform_baseline: float
    fj_ref: float | None
    dkpw_ref: float | None
    mc_estimate: MonteCarloEstimate | None


def ratio_table(
    ks, curve_points: int = 257, mc_samples: int = 0, seed: int = 0
) -> list[RatioReport]:
    """Per-k guarantee constants with reference columns and optional MC check.

    Each report carries the cut-probability curve over the feasible
    correlation range and, when mc_samples > 0, a Monte Carlo estimate of the
    cut probability at the worst-case correlation.
    """
    reports = []
    for k in ks:
        k = int(k)
        if k < 3:
            raise ValueError("ratio table is defined for k >= 3")
        lo = -1.0 / (k - 1.0)
        grid = np.linspace(lo, 1.0, curve_points)
        curve = np.array([cut_probability(r, k) for r in grid])
        _, argmin_r = worst_case_ratio(k, points=4096)
        mc = mc_cut_probability(lo, k, mc_samples, seed) if mc_samples else None
        reports.append(
            RatioReport(
                k=k,
                guarantee=approximation_guarantee(k),
                worst_case_r=argmin_r,
                r_grid=grid,
                cut_curve=curve,
                uniform_baseline=1.0 - 1.0 / k,
                fj_ref=PUBLISHED_FJ.get(k),
                dkpw_ref=PUBLISHED_DKPW.get(k),
                mc_estimate=mc,
            )
        )
    return reports


def ratio_table_rows(reports, include_refs=True):
    """The tabular view: one dict per k with the five standard columns."""
    rows = []
    for rep in reports:
        row = {"k": rep.k, "phi_k": rep.guarantee}
        if include_refs:
            row["fj_ref"] = rep.fj_ref
            row["dkpw_ref"] = rep.dkpw_ref
        row["uniform_baseline"] = rep.uniform_baseline
        if rep.mc_estimate is not None:
            row["mc_cut_at_worst_r"] = rep.mc_estimate.value
            row["mc_stderr"] = rep.mc_estimate.stderr
        rows.append(row)
    return rows


def _csv_cell(name, value):
    if value is None:
        return ""
    if name == "k":
        return str(value)
    return f"{value:.6f}"


def ratio_table_csv(reports, include_refs=True) -> str:
    rows = ratio_table_rows(reports, include_refs)
    header = list(rows[0].keys())
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_cell(c, row[c]) for c in header))
    return "\n".join(lines) + "\n"
