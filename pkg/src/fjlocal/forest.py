"""Equilibrium estimates from random spanning converging forests.

Wilson's loop-erased construction with an absorbing sink: at ``v`` the walk
jumps to the sink with probability ``1/(1+d_v)``, and a node that does so
becomes a root.  Node ``i`` ends up in the tree of ``u`` with probability
``[(I + L)^{-1}]_{iu}``, so averaging ``s[root[i]]`` over forests is unbiased
for ``z_i``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .graph import Graph
from .result import EstimateResult
from .walks import kernel_seed

DEFAULT_SAMPLES = 2000


@dataclass(frozen=True)
class ForestRoots:
    root: np.ndarray
    parent: np.ndarray  # -1 at roots

    def check(self) -> None:
        """Raise ``AssertionError`` unless roots are fixed points and parent links are acyclic."""
        root, parent = self.root, self.parent
        n = len(root)
        assert np.array_equal(root[root], root)
        assert np.all((parent == -1) == (root == np.arange(n)))
        for i in range(n):
            v, hops = i, 0
            while parent[v] != -1:
                v = parent[v]
                hops += 1
                assert hops <= n, "cycle in parent links"
            assert v == root[i]


def random_forest(G: Graph, seed=None) -> ForestRoots:
    parent = np.empty(G.n, dtype=np.int64)
    root = np.empty(G.n, dtype=np.int64)
    K.wilson_forest(G.out_offsets, G.out_targets, G.d, kernel_seed(seed), parent, root)
    return ForestRoots(root, parent)


def root_frequencies(G: Graph, l: int, seed=None) -> np.ndarray:
    """Empirical ``P(root of i = u)`` over ``l`` forests, as an ``n x n`` matrix."""
    counts = np.zeros((G.n, G.n), dtype=np.int64)
    K.forest_accumulate(G.out_offsets, G.out_targets, G.d, np.zeros(G.n), l, kernel_seed(seed),
                        np.zeros(G.n), counts)
    return counts / l


def forest_sample(G: Graph, s, l: int = DEFAULT_SAMPLES, seed=None) -> EstimateResult:
    if l < 1:
        raise ValueError("need at least one sample")
    s = np.asarray(s, dtype=np.float64)
    t0 = time.perf_counter()
    # accumulate offsets from min(s): constant opinions come back bit-exact
    lo, hi = s.min(), s.max()
    acc = np.zeros(G.n)
    K.forest_accumulate(G.out_offsets, G.out_targets, G.d, s - lo, l, kernel_seed(seed), acc,
                        np.zeros((0, 0), dtype=np.int64))
    z_hat = np.clip(lo + acc / l, lo, hi)
    # dangling nodes are their own root in every forest
    dangling = G.d == 0
    z_hat[dangling] = s[dangling]
    return EstimateResult(z_hat, "forest", samples=l, wall_time=time.perf_counter() - t0,
                          extra={"seed": seed})
