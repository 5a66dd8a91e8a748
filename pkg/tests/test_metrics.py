import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from fjlocal import erdos_renyi, from_edges, metrics
from fjlocal.oracle import laplacian_dense


def test_consensus():
    G = erdos_renyi(30, 0.2, 1)
    z = s = np.full(30, 0.6)
    rep = metrics.report(G, z, s)
    assert rep.internal_conflict == 0 and rep.disagreement == 0 and rep.polarization == 0
    assert rep.controversy == pytest.approx(30 * 0.36)
    assert metrics.total_stress(G, z, s) == {"total_stress": 0.0, "node_stress_sum": 0.0}


def test_p2_values(p2):
    z, s = np.array([2 / 3, 1 / 3]), np.array([1.0, 0.0])
    rep = metrics.report(p2, z, s)
    assert rep.internal_conflict == pytest.approx(2 / 9)
    assert rep.disagreement == pytest.approx(1 / 9)
    assert rep.polarization == pytest.approx(1 / 18)
    assert rep.controversy == pytest.approx(5 / 9)
    assert rep.polarization <= rep.controversy
    ts = metrics.total_stress(p2, z, s)
    assert ts["total_stress"] == pytest.approx(1 / 3)
    assert ts["node_stress_sum"] == pytest.approx(4 / 9)


def test_single_node(isolated):
    rep = metrics.report(isolated, [0.4], [0.4])
    assert (rep.internal_conflict, rep.disagreement, rep.polarization) == (0, 0, 0)
    assert rep.controversy == pytest.approx(0.16)
    assert metrics.total_stress(isolated, [0.4], [0.4])["total_stress"] == 0


def test_length_mismatch(p2):
    with pytest.raises(ValueError):
        metrics.internal_conflict([1, 2], [1])
    with pytest.raises(ValueError):
        metrics.disagreement(p2, [1, 2, 3])


def test_directed_arcs_counted_once():
    G = from_edges(2, [(0, 1), (1, 0)], directed=True)
    assert metrics.disagreement(G, [1.0, 0.0]) == 2.0


@settings(max_examples=50, deadline=None)
@given(z=arrays(np.float64, st.integers(1, 60), elements=st.floats(0, 1)),
       a=st.floats(-5, 5))
def test_polarization_translation_invariant(z, a):
    p = metrics.polarization(z)
    assert metrics.polarization(z + a) == pytest.approx(p, rel=1e-12, abs=1e-12)
    assert metrics.internal_conflict(z, z) == 0
    assert p <= metrics.controversy(z) + 1e-12


@pytest.mark.parametrize("seed", range(3))
def test_disagreement_quadratic_form(seed):
    G = erdos_renyi(200, 0.04, seed)
    z = np.random.default_rng(seed).random(200)
    assert metrics.disagreement(G, z) == pytest.approx(z @ laplacian_dense(G) @ z, rel=1e-12)


def test_node_stress_double_counts_undirected():
    G = erdos_renyi(50, 0.1, 3)
    rng = np.random.default_rng(3)
    z, s = rng.random(50), rng.random(50)
    ts = metrics.total_stress(G, z, s)
    I, D = metrics.internal_conflict(z, s), metrics.disagreement(G, z)
    assert ts["total_stress"] == pytest.approx(I + D)
    assert ts["node_stress_sum"] == pytest.approx(I + 2 * D)


def test_relative_errors():
    G = erdos_renyi(40, 0.1, 1)
    z = np.random.default_rng(0).random(40)
    exact = metrics.report(G, z, z)
    approx = metrics.report(G, z * 1.01, z)
    rel = metrics.relative_errors(approx, exact)
    assert rel["controversy"] == pytest.approx(0.0201)
    assert rel["disagreement"] == pytest.approx(0.0201)
    assert rel["internal_conflict"] == metrics.internal_conflict(1.01 * z, z)
