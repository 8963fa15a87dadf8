"""Cyclic Jacobi eigensolver for small dense symmetric matrices."""

from __future__ import annotations

import math

import numpy as np


class EigensolverError(RuntimeError):
    """Iteration cap exceeded or the input is unusable."""


def jacobi_eigh(a, rel_tol: float = 1e-12, max_sweeps: int = 100):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix.

    Sweeps over all off-diagonal pairs, annihilating each with a plane
    rotation, until the off-diagonal Frobenius norm drops below
    ``rel_tol * ||a||_F``.
    """
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise EigensolverError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    scale = np.linalg.norm(a)
    if not np.allclose(a, a.T, rtol=0, atol=1e-12 * max(scale, 1.0)):
        raise EigensolverError("matrix is not symmetric")
    a = (a + a.T) / 2
    v = np.eye(n)
    target = rel_tol * scale
    for sweep in range(max_sweeps + 1):
        off = math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off <= target:
            break
        if sweep == max_sweeps:
            raise EigensolverError(f"Jacobi did not converge in {max_sweeps} sweeps")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                col_p = a[:, p].copy()
                a[:, p] = c * col_p - s * a[:, q]
                a[:, q] = s * col_p + c * a[:, q]
                row_p = a[p, :].copy()
                a[p, :] = c * row_p - s * a[q, :]
                a[q, :] = s * row_p + c * a[q, :]
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
