import math

import numpy as np
import pytest

from spectral_chroma.catalog import named_graph, truncated_prism
from spectral_chroma.graph import (Graph, complete_bipartite, complete_graph, cycle_graph,
                                   distance_matrix)
from spectral_chroma.spectra import (DisconnectedGraphError, NumericalError, Polynomial,
                                     group_eigenvalues, eigendecompose, jacobi_eigh,
                                     matrix_polynomial, spectral_params)
from tests.conftest import random_connected


def random_poly(rng, k=4):
    return Polynomial(rng.uniform(-5, 5, size=k + 1))


def test_jacobi_matches_numpy_on_random_symmetric(rng):
    for n in (1, 2, 5, 11, 20):
        m = rng.normal(size=(n, n))
        a = (m + m.T) / 2
        vals, vecs = jacobi_eigh(a)
        assert np.allclose(vals, np.sort(np.linalg.eigvalsh(a))[::-1], atol=1e-10)
        assert np.allclose(vecs.T @ vecs, np.eye(n), atol=1e-10)
        assert np.linalg.norm(a @ vecs - vecs * vals) <= 1e-9


def test_jacobi_rejects_asymmetric():
    with pytest.raises(ValueError):
        jacobi_eigh([[0, 1], [0, 0]])


def test_jacobi_sweep_cap():
    a = np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 5.0], [3.0, 5.0, 6.0]])
    with pytest.raises(NumericalError) as info:
        jacobi_eigh(a, max_sweeps=0)
    assert info.value.residual > 0


@pytest.mark.parametrize("n", [2, 3, 6])
def test_complete_graph_spectrum(n):
    spec = eigendecompose(complete_graph(n))
    assert [(round(t, 9), m) for t, m in spec.distinct] == [(n - 1, 1), (-1, n - 1)]


def test_petersen_spectrum_and_identity():
    g = named_graph("petersen")
    spec = eigendecompose(g)
    assert np.allclose(spec.thetas, [3, 1, -2], atol=1e-8)
    assert [m for _, m in spec.distinct] == [1, 5, 4]
    a = g.adjacency_matrix()
    # A^2 + A - 2I = J on the computed eigenbasis
    v = spec.eigenvectors
    lhs = v.T @ (a @ a + a - 2 * np.eye(10)) @ v
    assert np.allclose(lhs, v.T @ np.ones((10, 10)) @ v, atol=1e-9)


def test_complete_bipartite_spectrum():
    spec = eigendecompose(complete_bipartite(4, 4))
    assert [(round(t, 9), m) for t, m in spec.distinct] == [(4, 1), (0, 6), (-4, 1)]


def test_truncated_prism_has_stated_eigenvalue():
    spec = eigendecompose(truncated_prism())
    target = (1 - math.sqrt(13)) / 2
    assert np.min(np.abs(spec.eigenvalues - target)) <= 1e-8


def test_disconnected_rejected():
    with pytest.raises(DisconnectedGraphError):
        eigendecompose(Graph.from_edges(4, [(0, 1), (2, 3)]))
    with pytest.raises(ValueError):
        eigendecompose(complete_graph(3), tol=0)


def test_random_graph_invariants(rng):
    for _ in range(40):
        n = int(rng.integers(2, 13))
        g = random_connected(n, rng)
        spec = eigendecompose(g)
        a = g.adjacency_matrix()
        resid = np.linalg.norm(a @ spec.eigenvectors - spec.eigenvectors * spec.eigenvalues, axis=0)
        assert resid.max() <= 1e-10
        assert abs(spec.eigenvalues.sum()) <= 1e-7
        assert sum(m for _, m in spec.distinct) == n
        assert spec.perron.min() > 0 and abs(np.linalg.norm(spec.perron) - 1) <= 1e-12
        assert spec.distinct[0][1] == 1
        p = random_poly(rng)
        assert abs(np.trace(matrix_polynomial(g, p)) - p(spec.eigenvalues).sum()) <= 1e-7 * max(
            1.0, np.abs(p(spec.eigenvalues)).sum())
        assert np.allclose(spec.eigenvalues, np.sort(np.linalg.eigvalsh(a))[::-1], atol=1e-10)


def test_grouping():
    assert group_eigenvalues([3, 1 + 1e-12, 1, -2], 1e-8) == ((3.0, 1), (1.0 + 5e-13, 2), (-2.0, 1))


def test_polynomial_basics():
    p = Polynomial([1, 0, 2])
    assert p(3) == 19.0
    assert np.allclose(p(np.array([0, 1])), [1, 3])
    assert p.k == 2 and p.degree == 2
    assert Polynomial([1, 2, 0]).degree == 1
    assert Polynomial([0, 0]).is_zero()
    assert p.affine(2, -1).coefficients == (1.0, 0.0, 4.0)
    assert str(Polynomial.identity()) == "+1*x"
    with pytest.raises(ValueError):
        Polynomial([])


def test_matrix_polynomial_examples():
    star = complete_bipartite(1, 3)
    assert np.array_equal(matrix_polynomial(star, Polynomial.identity()), star.adjacency_matrix())
    sq = matrix_polynomial(star, Polynomial([0, 0, 1]))
    assert list(np.diag(sq)) == [3, 1, 1, 1]
    assert sq[1, 2] == sq[1, 3] == sq[2, 3] == 1
    c5 = matrix_polynomial(cycle_graph(5), Polynomial([0, -1, 1]))
    d = distance_matrix(cycle_graph(5))
    assert np.all(c5[d == 0] == 2) and np.all(c5[d == 1] == -1) and np.all(c5[d == 2] == 1)


def test_matrix_polynomial_sparsity(rng):
    for _ in range(20):
        g = random_connected(int(rng.integers(4, 12)), rng, p=0.3)
        k = int(rng.integers(1, 4))
        mp = matrix_polynomial(g, random_poly(rng, k))
        assert np.allclose(mp, mp.T)
        assert np.all(np.abs(mp[distance_matrix(g) > k]) <= 1e-9)


def test_spectral_params_examples():
    g = named_graph("petersen")
    spec = eigendecompose(g)
    sp = spectral_params(g, Polynomial.identity(), spec)
    assert sp.big_w == sp.small_w == 0 and abs(sp.r_p) <= 1e-12
    assert math.isclose(sp.small_lambda, -2, abs_tol=1e-9)
    assert math.isclose(sp.big_lambda, 1, abs_tol=1e-9)
    sq = spectral_params(g, Polynomial([0, 0, 1]), spec)
    assert sq.big_w == sq.small_w == 3 and math.isclose(sq.r_p, 3)

    star = complete_bipartite(1, 3)
    sp = spectral_params(star, Polynomial([0, 0, 1]), eigendecompose(star))
    assert (sp.big_w, sp.small_w) == (3, 1)
    # Perron weights 1/2 (centre) and 1/6 (each leaf): R = 3/2 + 3/6
    assert math.isclose(sp.r_p, 2.0, rel_tol=1e-12)


def test_parameter_chain_on_random_pairs(rng):
    checked = 0
    while checked < 200:
        g = random_connected(int(rng.integers(3, 10)), rng)
        sp = spectral_params(g, random_poly(rng, int(rng.integers(1, 4))), eigendecompose(g))
        if sp.p_lambda1 < sp.big_lambda:
            continue  # lambda(p) <= R(p) needs p(lambda_1) >= Lambda(p)
        checked += 1
        slack = 1e-9 * max(1.0, np.abs(sp.images).max(), np.abs(sp.diag).max())
        assert sp.small_w <= sp.big_w and sp.small_lambda <= sp.big_lambda
        assert sp.small_lambda <= sp.r_p + slack and sp.r_p <= sp.big_w + slack
        assert abs(sp.diag.sum() - sp.images.sum()) <= 1e-7 * max(1.0, np.abs(sp.images).sum())
