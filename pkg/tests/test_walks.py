import math

import numpy as np
import pytest

from fjlocal import complete_graph, erdos_renyi, path_graph
from fjlocal.oracle import solve_dense
from fjlocal.walks import (WalkConfig, discounted_walk, hoeffding_walks, rwb_all, rwb_estimate,
                           truncation_bias_bound, walk_endpoints)


def test_isolated_and_dangling(isolated, arc01):
    assert discounted_walk(isolated, 0, seed=1) == 0
    assert all(discounted_walk(arc01, 1, seed=k) == 1 for k in range(20))


def test_first_step_stop_probability(p2):
    ends, steps = walk_endpoints(p2, 0, 10**5, seed=3)
    assert abs(np.mean((steps == 1) & (ends == 0)) - 0.5) <= 0.01


def test_truncation(p2):
    # each step on P2 continues with probability 1/2
    ends, steps = walk_endpoints(p2, 0, 20000, walk_len=1, seed=0)
    assert set(np.unique(steps)) == {1}
    outcomes = [discounted_walk(p2, 0, walk_len=1, seed=k) for k in range(200)]
    assert None in outcomes and 0 in outcomes


def test_rwb_exact_cases(isolated, p2):
    assert rwb_estimate(isolated, [0.4], 0, WalkConfig(10, 3, 1)) == 0.4
    G = erdos_renyi(50, 0.1, 2)
    res = rwb_all(G, np.full(50, 0.37), WalkConfig(600, 50, 1))
    assert np.all(res.z_hat == 0.37)
    assert rwb_all(isolated, [0.9]).z_hat[0] == 0.9


def test_rwb_p2(p2):
    est = rwb_estimate(p2, [1.0, 0.0], 0, WalkConfig(600, 10**5, 11))
    assert abs(est - 2 / 3) <= 0.01
    res = rwb_all(p2, [1.0, 0.0], WalkConfig(600, 10**5, 12))
    assert np.max(np.abs(res.z_hat - [2 / 3, 1 / 3])) <= 0.01
    assert res.walks == 2 * 10**5


def test_single_walk_range():
    G = erdos_renyi(100, 0.05, 1)
    s = np.random.default_rng(1).random(100)
    z = rwb_all(G, s, WalkConfig(600, 1, 5)).z_hat
    assert z.min() >= s.min() and z.max() <= s.max()


def test_determinism():
    G = erdos_renyi(60, 0.1, 1)
    s = np.random.default_rng(0).random(60)
    cfg = WalkConfig(600, 200, 9)
    assert np.array_equal(rwb_all(G, s, cfg).z_hat, rwb_all(G, s, cfg).z_hat)
    assert not np.array_equal(rwb_all(G, s, cfg).z_hat,
                              rwb_all(G, s, WalkConfig(600, 200, 10)).z_hat)


@pytest.mark.parametrize("G,s", [(path_graph(2), [1.0, 0.0]),
                                 (complete_graph(3), [1.0, 0.2, 0.0])])
def test_error_shrinks_with_walks(G, s):
    z = solve_dense(G, s)
    errs = [np.max(np.abs(rwb_all(G, s, WalkConfig(600, k, 4)).z_hat - z))
            for k in (10**3, 10**5)]
    assert errs[1] < errs[0]


def test_directed_walks_estimate_equilibrium():
    G = erdos_renyi(12, 0.25, 3, directed=True)
    s = np.random.default_rng(3).random(12)
    z_hat = rwb_all(G, s, WalkConfig(600, 10**5, 2)).z_hat
    assert np.max(np.abs(z_hat - solve_dense(G, s))) <= 0.01


def test_hoeffding():
    assert hoeffding_walks(0.05, 0.01) == 1060
    assert hoeffding_walks(0.5, 0.5) == 3
    assert hoeffding_walks(0.05, 0.01) == math.ceil(math.log(200) / (2 * 0.0025))
    for bad in [(1.0, 0.1), (0.0, 0.1), (0.1, 0.0), (0.1, 1.0)]:
        with pytest.raises(ValueError):
            hoeffding_walks(*bad)


def test_config_validation():
    with pytest.raises(ValueError):
        WalkConfig(0, 10)
    with pytest.raises(ValueError):
        WalkConfig(10, 0)


def test_truncation_bias_bound_tiny_at_default_length():
    G = erdos_renyi(100, 0.05, 1)
    assert truncation_bias_bound(G, np.linspace(0, 1, 100), 600) < 1e-3
