"""Low-rank solver for the Max-k-Cut vector relaxation.

The relaxation places one unit vector per vertex and maximizes

    sum_e w_e (1 - v_u . v_v) (k-1)/k    s.t.    v_u . v_v >= -1/(k-1)

over edges.  It is solved through a rank-d factor V (one row per vertex) by
projected gradient ascent: after every step rows are renormalized to the unit
sphere, and the edge inequality constraints enter through an augmented
Lagrangian (multiplier vector plus quadratic penalty on violations).

The dot-product constraint is enforced on edge pairs only.  Dropping the
non-edge pairs enlarges the feasible set, so the optimum still upper-bounds
every cut; ``validate`` reports the all-pairs minimum dot as information.

Because the method maximizes a nonconvex factorization, the reported
objective is a lower bound on the true optimum of the relaxation (no dual
certificate).  For the instances of interest the default rank
min(n, ceil(sqrt(2m)) + 1) makes spurious local maxima rare.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as kernels
from .graph import WeightedGraph
from .rng import stream

_PENALTY_CAP = 1e8


@dataclass
class SdpProblem:
    """Instance plus solver tolerances.

    rank=None selects d = min(n, ceil(sqrt(2m)) + 1); explicit ranks are
    clamped into [2, n].
    """

    graph: WeightedGraph
    k: int
    rank: int | None = None
    rel_tol: float = 1e-7
    feas_tol: float = 1e-6
    max_sweeps: int = 100_000

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be >= 2")

    def dim(self) -> int:
        n = self.graph.n
        if self.rank is None:
            d = math.ceil(math.sqrt(2 * self.graph.m)) + 1
        else:
            d = self.rank
        return max(min(d, n), min(2, n))


@dataclass
class SdpSolution:
    """Row-unit factor with recomputed objective and feasibility metadata."""

    vectors: np.ndarray  # (n, d), unit rows
    objective: float
    max_norm_violation: float
    max_dot_violation: float
    iterations: int
    k: int
    seed: int | None = None
    converged: bool = True

    @property
    def n(self):
        return self.vectors.shape[0]

    @property
    def d(self):
        return self.vectors.shape[1]


@dataclass(frozen=True)
class FeasibilityReport:
    max_norm_violation: float
    max_edge_dot_violation: float
    min_pair_dot: float  # over all vertex pairs, informational
    objective: float  # recomputed from the vectors
    objective_gap: float  # |recorded - recomputed|


def _objective(V, g: WeightedGraph, k: int) -> float:
    if g.m == 0:
        return 0.0
    dots = kernels.edge_dots(V, g.edge_u, g.edge_v)
    return float((k - 1) / k * (g.edge_w @ (1.0 - dots)))


def _max_dot_violation(V, g: WeightedGraph, k: int) -> float:
    if g.m == 0:
        return 0.0
    dots = kernels.edge_dots(V, g.edge_u, g.edge_v)
    return float(max(0.0, np.max(-1.0 / (k - 1) - dots)))


def _normalize_rows(V, rng=None):
    """Project rows onto the unit sphere; re-randomize exact zero rows."""
    norms = np.linalg.norm(V, axis=1)
    zero = norms == 0.0
    if np.any(zero):
        if rng is None:
            raise ValueError("zero row encountered without an RNG to resample it")
        while np.any(zero):
            V[zero] = rng.standard_normal((int(zero.sum()), V.shape[1]))
            norms = np.linalg.norm(V, axis=1)
            zero = norms == 0.0
    return V / norms[:, None]


def solve(problem: SdpProblem, seed: int = 0) -> SdpSolution:
    """Run the augmented-Lagrangian projected gradient ascent.

    Deterministic for a fixed (problem, seed) and kernel backend.  Stops when
    the relative objective change over an outer round falls below rel_tol and
    the worst edge violation is below feas_tol, or after max_sweeps merit
    evaluations; in the latter case the best feasible-effort iterate is
    returned with converged=False.
    """
    g = problem.graph
    n, k, d = g.n, problem.k, problem.dim()
    coeff = (k - 1) / k
    thresh = -1.0 / (k - 1)
    u, v, w = g.edge_u, g.edge_v, g.edge_w

    rng = stream(seed, "sdp-init")
    V = _normalize_rows(rng.standard_normal((n, d)), rng)

    lam = np.zeros(g.m)
    rho = 1.0
    grad = np.empty_like(V)
    cand_grad = np.empty_like(V)

    obj, merit, viol = kernels.sdp_sweep(V, u, v, w, coeff, thresh, lam, rho, grad)
    sweeps = 1

    wdeg = g.max_weighted_degree()
    eta0 = 1.0 / wdeg if wdeg > 0 else 1.0
    eta = eta0
    eta_max = 10.0 * eta0  # growth cap; rejection halving handles the rest

    prev_obj = obj
    ramp_ref = math.inf
    infeasible_rounds = 0
    converged = False
    inner_max = 2000
    # Saddle guard: near a saddle the per-sweep merit gain scales with the
    # squared distance from it, so any gain threshold can fire prematurely;
    # configurations like exactly antipodal or identical rows even pin the
    # gradient radially, where renormalization cancels it.  Before accepting
    # convergence the factor is perturbed and re-ascended; only a
    # perturbation round that fails to improve the objective confirms a
    # maximum.  An infeasible iterate that stops moving is never a valid
    # terminal state, so those are nudged immediately (before the multiplier
    # on a pinned edge can overshoot) from a separate, larger budget.
    confirm_escapes_left = 5
    stagnation_escapes_left = 50
    baseline_V = None
    baseline_obj = -math.inf

    def _perturb(V, scale=1e-3):
        return _normalize_rows(V + scale * rng.standard_normal(V.shape), rng)

    while sweeps < problem.max_sweeps and not converged:
        eta = max(eta, eta0 * 1e-6)
        inner = 0
        stall = 0
        while inner < inner_max and sweeps < problem.max_sweeps:
            cand = _normalize_rows(V + eta * grad, rng)
            c_obj, c_merit, c_viol = kernels.sdp_sweep(
                cand, u, v, w, coeff, thresh, lam, rho, cand_grad
            )
            sweeps += 1
            inner += 1
            if c_merit >= merit:
                gain = c_merit - merit
                V = cand
                grad, cand_grad = cand_grad, grad
                obj, merit, viol = c_obj, c_merit, c_viol
                eta = min(eta * 1.1, eta_max)
                stall = stall + 1 if gain <= 1e-10 * (1.0 + abs(merit)) else 0
                if stall >= 3:
                    break
            else:
                eta *= 0.5
                if eta < 1e-14:
                    break

        # outer round: multiplier update, convergence test, penalty schedule
        if g.m:
            dots = kernels.edge_dots(V, u, v)
            lam = np.maximum(0.0, lam + rho * (thresh - dots))
            viol = float(max(0.0, np.max(thresh - dots)))
        obj_change = abs(obj - prev_obj) / (1.0 + abs(obj))
        if viol <= problem.feas_tol and obj_change <= problem.rel_tol:
            improved = obj > baseline_obj + problem.rel_tol * (1.0 + abs(baseline_obj))
            if baseline_V is not None and not improved:
                if baseline_obj > obj:
                    V = baseline_V
                converged = True
                break
            if confirm_escapes_left == 0:
                converged = True
                break
            confirm_escapes_left -= 1
            baseline_V = V.copy()
            baseline_obj = obj
            V = _perturb(V)
            prev_obj = obj
            obj, merit, viol = kernels.sdp_sweep(
                V, u, v, w, coeff, thresh, lam, rho, grad
            )
            sweeps += 1
            continue
        # infeasible stagnation (e.g. a radially-pinned antipodal pair):
        # nudge instead of letting the multipliers diverge
        if obj_change <= problem.rel_tol and viol > problem.feas_tol:
            if stagnation_escapes_left > 0:
                stagnation_escapes_left -= 1
                V = _perturb(V, scale=min(1e-3, viol))
                prev_obj = obj
                obj, merit, viol = kernels.sdp_sweep(
                    V, u, v, w, coeff, thresh, lam, rho, grad
                )
                sweeps += 1
                continue
        # penalty schedule: the multipliers do most of the feasibility work;
        # raise rho only once violations recur without a 4x improvement over
        # the last reference, so ascent is never frozen by a prematurely
        # stiff penalty.  Recurring, not consecutive: an iterate that
        # alternates between feasible and barely-infeasible must still ramp.
        if viol > problem.feas_tol:
            if viol <= 0.25 * ramp_ref:
                ramp_ref = viol
                infeasible_rounds = 0
            else:
                infeasible_rounds += 1
                if infeasible_rounds >= 5 and rho < _PENALTY_CAP:
                    rho = min(rho * 10.0, _PENALTY_CAP)
                    infeasible_rounds = 0
                    ramp_ref = viol
        prev_obj = obj
        if sweeps < problem.max_sweeps:
            obj, merit, viol = kernels.sdp_sweep(
                V, u, v, w, coeff, thresh, lam, rho, grad
            )
            sweeps += 1

    V = V / np.linalg.norm(V, axis=1, keepdims=True)
    norms = np.linalg.norm(V, axis=1)
    return SdpSolution(
        vectors=V,
        objective=_objective(V, g, k),
        max_norm_violation=float(np.max(np.abs(norms - 1.0))),
        max_dot_violation=_max_dot_violation(V, g, k),
        iterations=sweeps,
        k=k,
        seed=seed,
        converged=converged,
    )


def load_gram(matrix, k: int, graph: WeightedGraph | None = None) -> SdpSolution:
    """Factor a Gram matrix into unit vectors (dimension = numerical rank).

    The matrix must be symmetric with unit diagonal (within 1e-6) and
    positive semidefinite (eigenvalues >= -1e-6).  Edge-dot feasibility is
    reported against ``graph`` when given, never enforced; without a graph
    the objective is 0 (no edges to score).
    """
    M = np.asarray(matrix, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("Gram matrix must be square")
    if not np.allclose(M, M.T, rtol=0.0, atol=1e-8):
        raise ValueError("Gram matrix must be symmetric")
    diag = np.diag(M)
    if np.max(np.abs(diag - 1.0)) > 1e-6:
        raise ValueError("Gram matrix must have unit diagonal (tolerance 1e-6)")
    eigval, eigvec = np.linalg.eigh(M)
    if eigval[0] < -1e-6:
        raise ValueError(f"Gram matrix is not PSD: min eigenvalue {eigval[0]:.3e}")
    keep = eigval > max(1e-12, 1e-12 * eigval[-1])
    if not np.any(keep):
        raise ValueError("Gram matrix has numerical rank 0")
    V = eigvec[:, keep] * np.sqrt(eigval[keep])
    V = np.ascontiguousarray(V / np.linalg.norm(V, axis=1, keepdims=True))
    norms = np.linalg.norm(V, axis=1)

    if graph is not None:
        if graph.n != M.shape[0]:
            raise ValueError("graph size does not match Gram matrix")
        objective = _objective(V, graph, k)
        dot_violation = _max_dot_violation(V, graph, k)
    else:
        objective = 0.0
        dot_violation = 0.0
    return SdpSolution(
        vectors=V,
        objective=objective,
        max_norm_violation=float(np.max(np.abs(norms - 1.0))),
        max_dot_violation=dot_violation,
        iterations=0,
        k=k,
        seed=None,
        converged=True,
    )


def validate(solution: SdpSolution, problem: SdpProblem) -> FeasibilityReport:
    """Recompute feasibility and objective of a solution against its problem."""
    g = problem.graph
    V = solution.vectors
    if V.shape[0] != g.n:
        raise ValueError("solution size does not match graph")
    norms = np.linalg.norm(V, axis=1)
    G = V @ V.T
    off = G[~np.eye(g.n, dtype=bool)]
    objective = _objective(V, g, problem.k)
    return FeasibilityReport(
        max_norm_violation=float(np.max(np.abs(norms - 1.0))),
        max_edge_dot_violation=_max_dot_violation(V, g, problem.k),
        min_pair_dot=float(off.min()) if g.n > 1 else 1.0,
        objective=objective,
        objective_gap=abs(objective - solution.objective),
    )


def parse_gram_text(source) -> np.ndarray:
    """Parse the Gram-matrix text format: first line n, then n rows of n decimals."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    lines = [ln for ln in (raw.strip() for raw in source.splitlines()) if ln]
    if not lines:
        raise ValueError("empty Gram-matrix input")
    n = int(lines[0])
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} matrix rows, got {len(lines) - 1}")
    rows = []
    for i, line in enumerate(lines[1:], start=1):
        row = [float(x) for x in line.split()]
        if len(row) != n:
            raise ValueError(f"row {i} has {len(row)} entries, expected {n}")
        rows.append(row)
    return np.asarray(rows, dtype=np.float64)


def solution_to_dict(s: SdpSolution) -> dict:
    return {
        "n": s.n,
        "d": s.d,
        "k": s.k,
        "objective": s.objective,
        "vectors": s.vectors.tolist(),
        "violations": {
            "norm": s.max_norm_violation,
            "edge_dot": s.max_dot_violation,
        },
        "iterations": s.iterations,
        "seed": s.seed,
        "converged": s.converged,
    }


def solution_from_dict(doc: dict) -> SdpSolution:
    vectors = np.asarray(doc["vectors"], dtype=np.float64)
    if vectors.shape != (doc["n"], doc["d"]):
        raise ValueError("vector array shape disagrees with n, d")
    return SdpSolution(
        vectors=np.ascontiguousarray(vectors),
        objective=float(doc["objective"]),
        max_norm_violation=float(doc["violations"]["norm"]),
        max_dot_violation=float(doc["violations"]["edge_dot"]),
        iterations=int(doc["iterations"]),
        k=int(doc["k"]),
        seed=doc.get("seed"),
        converged=bool(doc.get("converged", True)),
    )


def save_solution(s: SdpSolution, path):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(solution_to_dict(s), f)
        f.write("\n")


def load_solution(path) -> SdpSolution:
    with open(path, "r", encoding="utf-8") as f:
        return solution_from_dict(json.load(f))
