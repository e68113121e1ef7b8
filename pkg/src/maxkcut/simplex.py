"""Equilateral simplex geometry.

The k vertices of the equilateral simplex are unit vectors in dimension k-1
with pairwise dot product -1/(k-1); they sum to zero.  Used both as the
target set of the integer formulation and by the simplex rounding scheme.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SimplexVertices:
    k: int
    vertices: np.ndarray  # (k, k-1), unit rows


def build_simplex(k: int) -> SimplexVertices:
    """Deterministic coordinate construction of the equilateral simplex.

    Column j is fixed for vertices 0..j via the shared-prefix recurrence
    (vertex j takes the positive coordinate closing its norm to 1, later
    vertices share the value solving prefix + c*d = -1/(k-1)), followed by a
    single renormalization pass.  No eigensolver, so results are identical
    across platforms.
    """
    if k < 2:
        raise ValueError("simplex needs k >= 2")
    target = -1.0 / (k - 1)
    V = np.zeros((k, k - 1))
    for j in range(k - 1):
        prefix = float(V[j, :j] @ V[j, :j])
        V[j, j] = np.sqrt(max(1.0 - prefix, 0.0))
        V[j + 1 :, j] = (target - prefix) / V[j, j]
    V /= np.linalg.norm(V, axis=1, keepdims=True)
    return SimplexVertices(k=k, vertices=V)


def nearest_vertex(s: SimplexVertices, z) -> int:
    """Index of the simplex vertex with maximal dot product against z.

    For unit vertices this is the Euclidean-nearest vertex.  Ties resolve to
    the lowest index (np.argmax), so z = 0 maps to 0.
    """
    z = np.asarray(z, dtype=np.float64)
    if z.shape != (s.k - 1,):
        raise ValueError(f"expected dimension {s.k - 1}, got shape {z.shape}")
    return int(np.argmax(s.vertices @ z))
