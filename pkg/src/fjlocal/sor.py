"""Over-relaxed local iteration (BLISOR) and choice of the relaxation factor."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graph import Graph
from .oracle import DENSE_CAP, DenseCapError
from .push import (DEFAULT_C, DEFAULT_EPSILON, DEFAULT_MAX_PUSHES, DEFAULT_SIGMA,
                   DIVERGENCE_FACTOR, PushState, _check_eps, _check_shift, run_push,
                   shifted_epsilon)
from .result import DivergenceError, EstimateResult, WatchdogError

DEFAULT_OMEGA = 1.5


def _check_omega(omega):
    if not 0.0 < omega < 2.0:
        raise ValueError("omega must lie in (0, 2)")


def _blowup(s_eff):
    return DIVERGENCE_FACTOR * max(float(np.max(np.abs(s_eff), initial=0.0)), 1e-300)


def bound_local_iter_sor(G: Graph, s, epsilon: float = DEFAULT_EPSILON,
                         omega: float = DEFAULT_OMEGA, *, max_pushes: int = DEFAULT_MAX_PUSHES,
                         record_pops: bool = False, checkpoint=None, every=None, at=None,
                         return_state: bool = False):
    """SOR push: ``z_hat[v] += w r_v/(1+d_v)``, neighbours get the same, ``r_v *= 1 - w``.

    Residuals may change sign for ``omega > 1``, so queue tests compare
    ``|r|``; on exit ``(1 - eps) z <= z_hat <= (1 + eps) z``.
    """
    _check_eps(epsilon)
    _check_omega(omega)
    s = np.asarray(s, dtype=np.float64)
    t0 = time.perf_counter()
    st = PushState.start(s, epsilon * s, record_pops)
    run_push(G, st, omega, max_pushes, _blowup(s), checkpoint, every, at)
    res = EstimateResult(st.z_hat.copy(), "blisor-raw", epsilon=epsilon, omega=omega,
                         pushes=st.pushes, touched_arcs=st.touched_arcs,
                         wall_time=time.perf_counter() - t0)
    return (res, st) if return_state else res


def improved_blisor(G: Graph, s, epsilon: float = DEFAULT_EPSILON, sigma: float = DEFAULT_SIGMA,
                    c: float = DEFAULT_C, omega: float = DEFAULT_OMEGA, *,
                    max_pushes: int = DEFAULT_MAX_PUSHES, record_pops: bool = False,
                    checkpoint=None, every=None, at=None, return_state: bool = False):
    _check_eps(epsilon)
    _check_shift(sigma, c)
    _check_omega(omega)
    s_eff = np.asarray(s, dtype=np.float64) + c
    eps_p = shifted_epsilon(epsilon, sigma, c)
    t0 = time.perf_counter()
    st = PushState.start(s_eff, eps_p * s_eff, record_pops)
    run_push(G, st, omega, max_pushes, _blowup(s_eff), checkpoint, every, at)
    res = EstimateResult(st.z_hat - c, "blisor", epsilon=epsilon, sigma=sigma, c=c, omega=omega,
                         pushes=st.pushes, touched_arcs=st.touched_arcs,
                         wall_time=time.perf_counter() - t0, extra={"epsilon_shifted": eps_p})
    return (res, st) if return_state else res


@dataclass
class OmegaSelection:
    omega: float
    source: str  # "fixed", "formula" or "sweep"
    mu: Optional[float] = None
    sweep_table: list = field(default_factory=list)

    def __post_init__(self):
        _check_omega(self.omega)


def omega_from_mu(mu: float) -> float:
    if not 0.0 <= mu < 1.0:
        raise ValueError("mu must lie in [0, 1)")
    return 1.0 + (mu / (1.0 + math.sqrt(1.0 - mu * mu))) ** 2


def spectral_radius(G: Graph, tol: float = 1e-10, max_iter: int = 200_000, seed=0) -> float:
    """``rho((I + D)^{-1} A)`` for an undirected graph by power iteration.

    Works on the symmetric similar matrix ``B = (I+D)^{-1/2} A (I+D)^{-1/2}``
    and iterates with ``B^2`` so that a ``-mu`` eigenvalue (bipartite graphs)
    cannot stall convergence.
    """
    if G.directed:
        raise ValueError("spectral radius formula needs an undirected graph")
    if G.num_arcs == 0:
        return 0.0
    src = np.repeat(np.arange(G.n), G.d)
    scale = 1.0 / np.sqrt(1.0 + G.d)

    def B(x):
        y = x * scale
        return scale * np.bincount(src, weights=y[G.out_targets], minlength=G.n)

    x = np.random.default_rng(seed).random(G.n) + 0.5
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(max_iter):
        y = B(B(x))
        lam_new = float(x @ y)
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return 0.0
        x = y / norm
        if abs(lam_new - lam) <= tol * max(lam_new, 1e-300):
            lam = lam_new
            break
        lam = lam_new
    return math.sqrt(max(lam, 0.0))


def omega_opt_dense(G: Graph, cap: Optional[int] = None, tol: float = 1e-10) -> OmegaSelection:
    if G.directed:
        raise ValueError("omega formula assumes an undirected graph; use omega_sweep for digraphs")
    cap = DENSE_CAP if cap is None else cap
    if G.n > cap:
        raise DenseCapError(f"n={G.n} exceeds cap {cap}")
    mu = spectral_radius(G, tol=tol)
    return OmegaSelection(omega_from_mu(mu), "formula", mu=mu)


def omega_grid(start: float = 1.0, end: float = 1.95, step: float = 0.05) -> np.ndarray:
    k = int(round((end - start) / step))
    grid = np.round(start + step * np.arange(k + 1), 12)
    if np.any(grid <= 0) or np.any(grid >= 2):
        raise ValueError("omega grid must lie inside (0, 2)")
    return grid


def omega_sweep(G: Graph, s, epsilon: float = DEFAULT_EPSILON, sigma: float = DEFAULT_SIGMA,
                c: float = DEFAULT_C, grid_start: float = 1.0, grid_end: float = 1.95,
                step: float = 0.05, grid=None, max_pushes: int = DEFAULT_MAX_PUSHES) -> OmegaSelection:
    """Run ``improved_blisor`` per grid point and keep the one with fewest pushes.

    Diverging or capped points cost ``inf``; ties go to the smaller omega.
    """
    grid = omega_grid(grid_start, grid_end, step) if grid is None else np.asarray(grid, float)
    table = []
    for w in grid:
        t0 = time.perf_counter()
        try:
            res = improved_blisor(G, s, epsilon, sigma, c, float(w), max_pushes=max_pushes)
            row = (float(w), res.pushes, res.touched_arcs, res.wall_time)
        except (DivergenceError, WatchdogError):
            row = (float(w), math.inf, math.inf, time.perf_counter() - t0)
        table.append(row)
    best = min(table, key=lambda row: (row[1], row[0]))
    if math.isinf(best[1]):
        raise DivergenceError("every omega on the grid diverged or hit the push cap")
    return OmegaSelection(best[0], "sweep", sweep_table=table)
