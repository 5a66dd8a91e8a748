"""Quadratic social-network measures of an equilibrium vector.

Sums go through ``np.sum`` (pairwise summation) so large graphs keep
roughly ``log n`` rather than ``n`` rounding growth.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .graph import Graph


def _pair(z, s):
    z = np.asarray(z, dtype=np.float64)
    s = np.asarray(s, dtype=np.float64)
    if z.shape != s.shape:
        raise ValueError(f"length mismatch: {z.shape} vs {s.shape}")
    return z, s


def _vec(G, z):
    z = np.asarray(z, dtype=np.float64)
    if len(z) != G.n:
        raise ValueError(f"length mismatch: graph has {G.n} nodes, vector has {len(z)}")
    return z


def mean_centered(z) -> np.ndarray:
    z = np.asarray(z, dtype=np.float64)
    # centre around z[0] first; exact for constant vectors, less cancellation otherwise
    dz = z - z[0]
    return dz - dz.mean()


def internal_conflict(z, s) -> float:
    z, s = _pair(z, s)
    return float(np.sum((z - s) ** 2))


def disagreement(G: Graph, z) -> float:
    """Sum of ``(z_i - z_j)^2`` over undirected edges (once each) or arcs."""
    z = _vec(G, z)
    e = G.edges()
    return float(np.sum((z[e[:, 0]] - z[e[:, 1]]) ** 2))


def polarization(z) -> float:
    zc = mean_centered(z)
    return float(np.sum(zc * zc))


def controversy(z) -> float:
    z = np.asarray(z, dtype=np.float64)
    return float(np.sum(z * z))


def node_stress(G: Graph, z, s) -> np.ndarray:
    """Per-node ``(z_i - s_i)^2 + sum_{j in N_i} (z_i - z_j)^2``."""
    z = _vec(G, z)
    z, s = _pair(z, s)
    a = G.arcs()
    edge_part = np.bincount(a[:, 0], weights=(z[a[:, 0]] - z[a[:, 1]]) ** 2, minlength=G.n)
    return (z - s) ** 2 + edge_part


def total_stress(G: Graph, z, s) -> dict:
    """``I + D`` next to the sum of per-node stresses.

    On undirected graphs the per-node sum counts every edge from both ends,
    giving ``I + 2D``.
    """
    return {
        "total_stress": internal_conflict(z, s) + disagreement(G, z),
        "node_stress_sum": float(np.sum(node_stress(G, z, s))),
    }


@dataclass
class MetricsReport:
    internal_conflict: float
    disagreement: float
    polarization: float
    controversy: float
    z_mean: float
    n: int
    m: int

    def as_dict(self) -> dict:
        return asdict(self)


def report(G: Graph, z, s) -> MetricsReport:
    z = _vec(G, z)
    return MetricsReport(
        internal_conflict=internal_conflict(z, s),
        disagreement=disagreement(G, z),
        polarization=polarization(z),
        controversy=controversy(z),
        z_mean=float(z.mean()),
        n=G.n,
        m=G.m,
    )


def relative_errors(approx: MetricsReport, exact: MetricsReport) -> dict:
    out = {}
    for key in ("controversy", "disagreement", "internal_conflict", "polarization"):
        ref, est = getattr(exact, key), getattr(approx, key)
        out[key] = abs(ref - est) / abs(ref) if ref != 0 else abs(est)
    return out
