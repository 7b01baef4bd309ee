import numpy as np
import pytest

import arnagg


def swap():
    return arnagg.Chain.from_dense(np.array([[0.0, 1.0], [1.0, 0.0]]))


def test_swap_chain_aggregation():
    agg = arnagg.build_aggregation(np.array([1.0, 0.0]), swap(), 2)
    assert agg.dimension == 2
    assert agg.invariant
    np.testing.assert_array_equal(agg.H, [[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_array_equal(agg.Q, np.eye(2))
    np.testing.assert_array_equal(agg.pi0, [1.0, 0.0])


def test_initial_exactness_against_numpy():
    chain = arnagg.random_chain(40, 7)
    P = chain.to_dense()
    rng = np.random.default_rng(1)
    p0 = rng.random(40)
    p0 /= p0.sum()
    agg = arnagg.build_aggregation(p0, chain, 6)
    p = p0.copy()
    for k in range(6):
        assert np.abs(agg.approx_transient(k) - p).sum() <= 1e-10
        assert arnagg.transient_error(agg, p0, chain, k) <= 1e-10
        p = p @ P
    np.testing.assert_allclose(arnagg.transient_naive(p0, chain, 5), p0 @ np.linalg.matrix_power(P, 5), atol=1e-14)


def test_bound_and_closed_form():
    chain = arnagg.random_chain(30, 3)
    p0 = np.full(30, 1.0 / 30)
    agg = arnagg.build_aggregation(p0, chain, 4)
    for k in (0, 3, 10, 100):
        err = arnagg.transient_error(agg, p0, chain, k)
        assert arnagg.error_bound(agg, k) >= err - 1e-10
        assert abs(arnagg.closed_form_error(agg, chain, k) - err) <= 1e-8


def test_csr_round_trip():
    chain = arnagg.random_chain(12, 2)
    indptr, indices, data = chain.to_csr()
    again = arnagg.Chain.from_csr(12, indptr, indices, data)
    np.testing.assert_array_equal(again.to_dense(), chain.to_dense())
    assert again.nnz == chain.nnz


def test_run_adaptive_lumpable():
    model = arnagg.fixture("fixture:lumpable:3,5,4", 1)
    p0 = model.initial_distribution()
    res = arnagg.run_adaptive(p0, model.chain, 1e-12)
    assert res.converged
    assert res.stop_reason in ("invariant-subspace", "criterion-met")
    assert res.aggregation.dimension <= 3
    assert res.criterion <= 1e-12
    assert len(res.trace) >= 1


def test_dominant_eigenvector():
    vec, lam = arnagg.dominant_eigenvector(np.array([[0.5, 0.5], [0.2, 0.8]]))
    assert lam == pytest.approx(1.0)
    np.testing.assert_allclose(vec @ np.array([[0.5, 0.5], [0.2, 0.8]]), vec, atol=1e-12)
    c, s = np.cos(0.3), np.sin(0.3)
    assert arnagg.dominant_eigenvector(np.array([[c, -s], [s, c]])) is None


def test_builtin_descriptor():
    m = arnagg.builtin("lotka-volterra", cap=20)
    assert m.state_count == 441
    assert m.uniformisation_rate >= m.max_exit_rate
    assert '"stateCount"' in m.descriptor_json()


def test_errors_map_to_python_exceptions():
    with pytest.raises(arnagg.InvalidInput):
        arnagg.builtin("no-such-model")
    with pytest.raises(arnagg.ArnaggError):
        arnagg.Chain.from_dense(np.array([[0.5, 0.4], [0.0, 1.0]]))
    with pytest.raises(arnagg.DimensionMismatch):
        arnagg.build_aggregation(np.array([1.0, 0.0, 0.0]), swap(), 1)
