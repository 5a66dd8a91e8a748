"""Monte Carlo estimates of the equilibrium from discounted random walks.

A walk started at ``u`` stops at ``j`` with probability ``1/(1+d_j)`` and
otherwise moves to a uniform out-neighbour of ``j``.  The end-point law is
row ``u`` of ``(I + L)^{-1}``, so ``z_u = E[s_end]``.  This holds for both
undirected and directed graphs under the listens-to orientation.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .graph import Graph
from .result import EstimateResult

DEFAULT_WALK_LEN = 600
DEFAULT_NUM_WALKS = 4000


def kernel_seed(seed) -> int:
    """Map any numpy-acceptable seed to the 32-bit seed numba's generator wants."""
    return int(np.random.SeedSequence(seed).generate_state(1)[0])


@dataclass(frozen=True)
class WalkConfig:
    walk_len: int = DEFAULT_WALK_LEN
    num_walks: int = DEFAULT_NUM_WALKS
    seed: int = 0

    def __post_init__(self):
        if self.walk_len < 1 or self.num_walks < 1:
            raise ValueError("walk_len and num_walks must be >= 1")


def discounted_walk(G: Graph, start: int, walk_len: int = DEFAULT_WALK_LEN, seed=None):
    """End node of one walk, or ``None`` if it was still moving after ``walk_len`` steps."""
    G._check(start)
    ends = np.empty(1, dtype=np.int64)
    steps = np.empty(1, dtype=np.int64)
    truncated = K.discounted_walks(G.out_offsets, G.out_targets, G.d,
                                   np.array([start], dtype=np.int64), walk_len,
                                   kernel_seed(seed), ends, steps)
    return None if truncated else int(ends[0])


def walk_endpoints(G: Graph, start: int, count: int, walk_len: int = DEFAULT_WALK_LEN, seed=None):
    """End nodes and step counts of ``count`` independent walks from ``start``."""
    G._check(start)
    ends = np.empty(count, dtype=np.int64)
    steps = np.empty(count, dtype=np.int64)
    K.discounted_walks(G.out_offsets, G.out_targets, G.d, np.full(count, start, dtype=np.int64),
                       walk_len, kernel_seed(seed), ends, steps)
    return ends, steps


def _walk_means(G, s, nodes, cfg):
    s = np.asarray(s, dtype=np.float64)
    lo, hi = s.min(), s.max()
    est = np.empty(len(nodes))
    truncated = K.walk_means(G.out_offsets, G.out_targets, G.d, s - lo,
                             np.asarray(nodes, dtype=np.int64), cfg.num_walks, cfg.walk_len,
                             kernel_seed(cfg.seed), est)
    return np.clip(lo + est, lo, hi), truncated


def rwb_estimate(G: Graph, s, u: int, cfg: WalkConfig = WalkConfig()) -> float:
    """Average of ``s`` over the end nodes of ``cfg.num_walks`` walks from ``u``.

    A truncated walk contributes the opinion of the node it stopped moving at.
    """
    G._check(u)
    est, _ = _walk_means(G, s, [u], cfg)
    return float(est[0])


def rwb_all(G: Graph, s, cfg: WalkConfig = WalkConfig()) -> EstimateResult:
    t0 = time.perf_counter()
    est, truncated = _walk_means(G, s, np.arange(G.n), cfg)
    return EstimateResult(est, "rwb", walks=G.n * cfg.num_walks, wall_time=time.perf_counter() - t0,
                          extra={"walk_len": cfg.walk_len, "num_walks": cfg.num_walks,
                                 "seed": cfg.seed, "truncated_walks": int(truncated)})


def hoeffding_walks(epsilon_abs: float, p_fail: float) -> int:
    """Walks needed so a mean of [0, 1] samples is within ``epsilon_abs`` w.p. ``1 - p_fail``."""
    if not 0.0 < epsilon_abs < 1.0 or not 0.0 < p_fail < 1.0:
        raise ValueError("epsilon_abs and p_fail must lie in (0, 1)")
    return math.ceil(math.log(2.0 / p_fail) / (2.0 * epsilon_abs**2))


def truncation_bias_bound(G: Graph, s, walk_len: int) -> float:
    s = np.asarray(s)
    q = G.d_max / (1.0 + G.d_max)
    return q**walk_len * float(s.max() - s.min())
