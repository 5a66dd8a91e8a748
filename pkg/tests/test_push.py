import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fjlocal import barabasi_albert, complete_graph, erdos_renyi, grid_2d
from fjlocal.oracle import solve_dense
from fjlocal.push import (PushState, bound_local_iter, improved_bli, residual_invariant_gap,
                          shifted_epsilon)
from fjlocal.result import WatchdogError

SLACK = 1e-12


def in_one_sided_band(z_hat, z, eps):
    return np.all(z_hat <= z + SLACK) and np.all(z_hat >= (1 - eps) * z - SLACK)


def test_p2_band(p2):
    s = np.array([1.0, 0.5])
    z = np.array([2.5 / 3, 2.0 / 3])  # (1/3) [[2, 1], [1, 2]] s
    np.testing.assert_allclose(solve_dense(p2, s), z)
    res = bound_local_iter(p2, s, 0.1)
    assert in_one_sided_band(res.z_hat, z, 0.1)


def test_consensus_band():
    G = grid_2d(6, 7)
    res = bound_local_iter(G, np.full(G.n, 0.4), 0.01)
    assert np.all(res.z_hat >= 0.396 - SLACK) and np.all(res.z_hat <= 0.4 + SLACK)


def test_isolated_single_push(isolated):
    res, st_ = bound_local_iter(isolated, [0.4], 0.3, return_state=True)
    assert res.pushes == 1 and res.z_hat[0] == 0.4 and st_.r[0] == 0.0


@pytest.mark.parametrize("eps", [1e-1, 1e-2, 1e-4])
@pytest.mark.parametrize("directed", [False, True])
def test_one_sided_random(eps, directed):
    for seed in range(3):
        G = erdos_renyi(300, 0.02, seed, directed=directed)
        s = np.random.default_rng(seed).uniform(0.01, 1.0, G.n)
        z = solve_dense(G, s)
        res, st_ = bound_local_iter(G, s, eps, return_state=True)
        assert in_one_sided_band(res.z_hat, z, eps)
        assert st_.certificate() <= 0


@settings(max_examples=25, deadline=None)
@given(n=st.integers(2, 120), p=st.floats(0.0, 0.2), directed=st.booleans(),
       eps=st.sampled_from([0.3, 0.05, 1e-3]), seed=st.integers(0, 10**6))
def test_one_sided_property(n, p, directed, eps, seed):
    G = erdos_renyi(n, p, seed, directed=directed)
    s = np.random.default_rng(seed).uniform(0.01, 1.0, n)
    assert in_one_sided_band(bound_local_iter(G, s, eps).z_hat, solve_dense(G, s), eps)


def test_trajectory_properties():
    G = barabasi_albert(150, 2, 4)
    s = np.random.default_rng(2).uniform(0.05, 1, G.n)
    prev = {"z": np.zeros(G.n)}

    def check(state: PushState):
        assert np.all(state.z_hat >= prev["z"])
        prev["z"] = state.z_hat.copy()
        assert np.all(state.r >= 0)
        q = state.queued()
        assert len(np.unique(q)) == len(q)
        flagged = np.flatnonzero(state.in_queue)
        assert np.array_equal(np.sort(q), flagged)

    res, st_ = bound_local_iter(G, s, 1e-3, record_pops=True, checkpoint=check, every=7,
                                return_state=True)
    assert res.touched_arcs == int(G.d[st_.pops()].sum())
    assert len(st_.pops()) == res.pushes


def test_scattered_zeros_still_terminate():
    # zero-opinion nodes whose neighbours all have s > 0 flush and stop
    G = grid_2d(10, 10)
    s = np.random.default_rng(0).uniform(0.1, 1, G.n)
    s[::3] = 0.0
    assert bound_local_iter(G, s, 0.01).pushes < 10**5


def test_watchdog_on_zero_cluster():
    # a clique of zero opinions passes residual around until it underflows
    G = complete_graph(20)
    s = np.zeros(G.n)
    s[0] = 1.0
    with pytest.raises(WatchdogError, match="improved_bli") as info:
        bound_local_iter(G, s, 0.01, max_pushes=5000)
    assert info.value.state.pushes == 5000


def test_parameter_validation(p2):
    for eps in (0.0, 1.0, -0.1):
        with pytest.raises(ValueError):
            bound_local_iter(p2, [1, 0], eps)
    with pytest.raises(ValueError):
        improved_bli(p2, [1, 0], 0.1, sigma=0.0)
    with pytest.raises(ValueError):
        improved_bli(p2, [1, 0], 0.1, c=-1.0)


def test_improved_p2(p2):
    res = improved_bli(p2, [1.0, 0.0], 0.01, 1e-5, 1e-5)
    assert (1 - 0.01) / 3 - SLACK <= res.z_hat[1] <= 1 / 3 + SLACK
    assert (1 - 0.01) * 2 / 3 - SLACK <= res.z_hat[0] <= 2 / 3 + SLACK
    assert res.extra["epsilon_shifted"] == pytest.approx(0.005)


def test_improved_zero_opinions():
    G = erdos_renyi(80, 0.05, 1)
    eps, c = 0.01, 1e-5
    eps_p = shifted_epsilon(eps, 1e-5, c)
    z_hat = improved_bli(G, np.zeros(G.n), eps, 1e-5, c).z_hat
    assert np.all(z_hat <= SLACK) and np.all(z_hat >= -eps_p * c - SLACK)


def test_improved_directed_arc(arc01):
    z = np.array([0.5, 1.0])
    z_hat = improved_bli(arc01, [0.0, 1.0], 0.01).z_hat
    assert in_one_sided_band(z_hat, z, 0.01)


def test_improved_band_above_sigma():
    G = erdos_renyi(250, 0.02, 7)
    s = np.random.default_rng(7).uniform(0, 1, G.n)
    s[np.random.default_rng(8).random(G.n) < 0.3] = 0.0
    z = solve_dense(G, s)
    z_hat = improved_bli(G, s, 0.01, 1e-5, 1e-5).z_hat
    big = z > 1e-5
    assert in_one_sided_band(z_hat[big], z[big], 0.01)


def test_gap_initial_one_push_and_terminal(p2):
    s = np.array([1.0, 0.5])
    st0 = PushState.start(s, 0.01 * s)
    assert residual_invariant_gap(p2, s, st0) <= 1e-12
    gaps = []
    res, st_ = bound_local_iter(
        p2, s, 0.01, checkpoint=lambda st: gaps.append(residual_invariant_gap(p2, s, st)),
        at=[1], return_state=True)
    assert len(gaps) == 2 and gaps[0] <= 1e-12 and gaps[1] <= 1e-10


def test_gap_shifted_variant():
    G = erdos_renyi(120, 0.05, 3)
    s = np.random.default_rng(3).random(G.n)
    c = 1e-5
    gaps = []
    improved_bli(G, s, 0.01, 1e-5, c,
                 checkpoint=lambda st: gaps.append(residual_invariant_gap(G, s + c, st)),
                 every=50)
    assert len(gaps) > 3 and max(gaps) <= 1e-10
