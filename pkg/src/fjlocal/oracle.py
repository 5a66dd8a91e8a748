"""Dense ground truth for small graphs.

``(I + L) z = s`` is solved directly with an LU factorisation; the synchronous
FJ iteration is kept as a second, independent route to the same vector.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .graph import Graph

DENSE_CAP = 5000


class DenseCapError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    def __init__(self, msg, z, residual, iterations):
        super().__init__(msg)
        self.z = z
        self.residual = residual
        self.iterations = iterations


def _cap(G: Graph, cap):
    cap = DENSE_CAP if cap is None else cap
    if G.n > cap:
        raise DenseCapError(f"n={G.n} exceeds dense oracle cap {cap}")


def adjacency_dense(G: Graph, cap=None) -> np.ndarray:
    _cap(G, cap)
    A = np.zeros((G.n, G.n))
    a = G.arcs()
    A[a[:, 0], a[:, 1]] = 1.0
    return A


def laplacian_dense(G: Graph, cap=None) -> np.ndarray:
    A = adjacency_dense(G, cap)
    return np.diag(G.d.astype(float)) - A


def system_matrix(G: Graph, cap=None) -> np.ndarray:
    """Dense ``I + L``: ``1 + d_i`` on the diagonal, ``-1`` at each out-neighbour."""
    return np.eye(G.n) + laplacian_dense(G, cap)


def fundamental_matrix(G: Graph, cap=None) -> np.ndarray:
    """``(I + L)^{-1}``, obtained by solving against the identity."""
    M = system_matrix(G, cap)
    return scipy.linalg.lu_solve(scipy.linalg.lu_factor(M), np.eye(G.n))


def solve_dense(G: Graph, s, cap=None) -> np.ndarray:
    M = system_matrix(G, cap)
    s = np.asarray(s, dtype=np.float64)
    z = scipy.linalg.lu_solve(scipy.linalg.lu_factor(M), s)
    if not np.all(np.isfinite(z)):
        raise RuntimeError("dense solve produced non-finite values")
    return z


@dataclass
class SyncResult:
    z: np.ndarray
    iterations: int
    last_change: float


def iterate_sync(G: Graph, s, tol: float = 1e-12, t_max: int = 10**6) -> SyncResult:
    """Synchronous FJ updates ``z <- (s + A z) / (1 + d)`` from ``z = s``."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    s = np.asarray(s, dtype=np.float64)
    src = np.repeat(np.arange(G.n), G.d)
    denom = 1.0 + G.d
    z = s.copy()
    change = np.inf
    for t in range(1, t_max + 1):
        agg = np.bincount(src, weights=z[G.out_targets], minlength=G.n)
        z_new = (s + agg) / denom
        change = float(np.max(np.abs(z_new - z), initial=0.0))
        z = z_new
        if change <= tol:
            return SyncResult(z, t, change)
    raise ConvergenceError(
        f"no convergence after {t_max} iterations (last change {change:.3e})", z, change, t_max
    )
