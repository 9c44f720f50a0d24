"""Exterior-algebra and tensor kernels for n-dimensional signal vectors.

Bivectors are represented by their skew-symmetric matrix with entries
``wedge(a, b)[i, j] = a[i]*b[j] - a[j]*b[i]`` and act on vectors by plain
matrix-vector product.  The orientation is fixed so that in three dimensions
the Hodge dual of a wedge is the cross product::

    hodge3(wedge(a, b)) == cross(a, b)

With this convention the curl of a field with Jacobian J (J[i][j] = dv_i/dx_j)
is ``hodge3(J.T - J)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _vector(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 1 or a.size < 1:
        raise ValueError(f"expected a 1-d vector, got shape {a.shape}")
    return a


def wedge(a, b) -> np.ndarray:
    """Outer (wedge) product of two same-length vectors as a skew matrix."""
    a, b = _vector(a), _vector(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return np.outer(a, b) - np.outer(b, a)


def hodge3(bivector) -> np.ndarray:
    """Hodge dual of a 3x3 bivector: the axial vector of the skew matrix."""
    m = np.asarray(bivector, dtype=float)
    if m.shape != (3, 3):
        raise ValueError(f"Hodge dual is only defined here for 3x3 bivectors, got shape {m.shape}")
    return np.array([m[1, 2], m[2, 0], m[0, 1]])


def embed3(axial) -> np.ndarray:
    """Inverse of :func:`hodge3`: embed an axial 3-vector as a skew matrix."""
    w = _vector(axial)
    if w.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {w.shape}")
    return np.array([
        [0.0, w[2], -w[1]],
        [-w[2], 0.0, w[0]],
        [w[1], -w[0], 0.0],
    ])


def bivector_apply(bivector, v) -> np.ndarray:
    """Act with a bivector on a vector (matrix-vector product)."""
    m = np.asarray(bivector, dtype=float)
    v = _vector(v)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"bivector must be a square matrix, got shape {m.shape}")
    if m.shape[1] != v.size:
        raise ValueError(f"dimension mismatch: {m.shape} vs {v.shape}")
    return m @ v


def decompose_matrix(matrix) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split a square matrix J into (S, R, Q).

    S is the isotropic part (tr(J)/n times the identity), R the traceless
    symmetric remainder and Q the skew part, so that S + R + Q == J.
    """
    j = np.asarray(matrix, dtype=float)
    if j.ndim != 2 or j.shape[0] != j.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {j.shape}")
    n = j.shape[0]
    s = (np.trace(j) / n) * np.eye(n)
    sym = 0.5 * (j + j.T)
    r = sym - s
    q = 0.5 * (j - j.T)
    return s, r, q


@dataclass(frozen=True)
class Multivector:
    """Scalar plus bivector pair, the shape of a geometric frequency."""

    scalar: float
    bivector: np.ndarray

    def conjugate(self) -> "Multivector":
        return Multivector(self.scalar, -self.bivector)

    def act(self, v) -> np.ndarray:
        """Apply to a vector: scalar*v + bivector@v."""
        v = _vector(v)
        return self.scalar * v + bivector_apply(self.bivector, v)
