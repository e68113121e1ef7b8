"""Pure-numpy kernels (fallback backend).

Same contracts as the compiled module ``_core``; the active backend is picked
in ``maxkcut._kernels``.  Shapes: ``labels`` is (T, n) int32, edge index
arrays are int64 of length m, ``V`` is the (n, d) row-unit factor.
"""

import numpy as np

TWO_PI = 2.0 * np.pi


def sector_labels(theta, psi, k):
    """Labels floor(((theta - psi) mod 2pi) / (2pi/k)), wrapped into [0, k)."""
    frac = np.mod(theta - psi[:, None], TWO_PI) * (k / TWO_PI)
    labels = np.floor(frac).astype(np.int32)
    # np.mod can round up to exactly 2pi for tiny negative inputs
    labels %= k
    return labels


def cut_values(labels, u, v, w):
    """Per-trial total weight of edges whose endpoint labels differ."""
    return (labels[:, u] != labels[:, v]).astype(np.float64) @ w


def diff_counts(labels, u, v):
    """Per-edge count of trials in which the endpoint labels differ."""
    return np.sum(labels[:, u] != labels[:, v], axis=0, dtype=np.int64)


def gamma_angles(g, r, s):
    """Angle differences (theta_j - theta_i) mod 2pi on the canonical disc pair.

    ``g`` is (T, 4) standard normal; disc i spans coordinates (1, 2), disc j
    is correlated with it by r = cos(theta), s = sin(theta).
    """
    ti = np.arctan2(g[:, 1], g[:, 0])
    tj = np.arctan2(r * g[:, 1] + s * g[:, 3], r * g[:, 0] + s * g[:, 2])
    return np.mod(tj - ti, TWO_PI)


def edge_dots(V, u, v):
    """Dot products v_u . v_v for each edge."""
    return np.einsum("ij,ij->i", V[u], V[v])


def sdp_sweep(V, u, v, w, coeff, thresh, lam, rho, grad):
    """One merit/gradient evaluation of the augmented-Lagrangian ascent.

    Maximizes  coeff * sum_e w_e (1 - dot_e)  subject to  dot_e >= thresh,
    with multipliers ``lam`` and penalty ``rho``.  Fills ``grad`` (same shape
    as V) and returns ``(objective, merit, max_violation)``.
    """
    grad.fill(0.0)
    if len(u) == 0:
        return 0.0, 0.0, 0.0
    du = V[u]
    dv = V[v]
    dots = np.einsum("ij,ij->i", du, dv)
    obj = coeff * float(w @ (1.0 - dots))
    a = lam + rho * (thresh - dots)
    active = a > 0.0
    penalty = float(np.sum(np.where(active, a * a, 0.0) - lam * lam)) / (2.0 * rho)
    merit = obj - penalty
    max_violation = float(max(0.0, np.max(thresh - dots)))
    ce = -coeff * w + np.where(active, a, 0.0)
    np.add.at(grad, u, ce[:, None] * dv)
    np.add.at(grad, v, ce[:, None] * du)
    return obj, merit, max_violation
