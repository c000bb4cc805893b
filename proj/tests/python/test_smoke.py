import math

import numpy as np
import pytest

import rankone
from rankone import discrete, laplace

Z0 = (math.pi / 2) ** 2


def test_perturbed_inverse_regular_branch():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((6, 6)) + 6 * np.eye(6)
    f, l = rng.standard_normal(6), rng.standard_normal(6)
    a_inv = rankone.invert(a)
    out = rankone.perturbed_inverse(a_inv, f, l)
    assert out["branch"] == "regular"
    expected = np.linalg.inv(a - np.outer(f, l))
    assert np.max(np.abs(out["inverse"] - expected)) <= 1e-10 * np.max(np.abs(expected))
    w = rng.standard_normal(6)
    v = rankone.solve_perturbed(a_inv, f, l, w)
    assert np.max(np.abs((a - np.outer(f, l)) @ v - w)) <= 1e-10


def test_perturbed_inverse_singular_branch():
    out = rankone.perturbed_inverse(np.eye(2), np.array([1.0, 0.0]), np.array([1.0, 0.0]))
    assert out["branch"] == "singular"
    assert np.allclose(out["null_vector"], [1.0, 0.0])
    with pytest.raises(rankone.SingularPerturbation):
        rankone.solve_perturbed(np.eye(2), np.array([1.0, 0.0]), np.array([1.0, 0.0]), np.array([0.0, 1.0]))


def test_errors_share_a_base_class():
    with pytest.raises(rankone.SingularMatrix):
        rankone.invert(np.array([[1.0, 2.0], [2.0, 4.0]]))
    with pytest.raises(rankone.Error):
        rankone.denominator(np.eye(3), np.ones(2), np.ones(2))
    with pytest.raises(rankone.PoleError):
        laplace.g_dd_spectral(0.5, 0.5, math.pi**2)
    assert issubclass(rankone.PoleError, RuntimeError)


def test_probing_recovers_the_factors():
    d = np.array([[3.0, 4.0], [6.0, 8.0]])
    probe = rankone.choose_probe(d)
    assert probe["pairing"] == 8.0
    f, l = rankone.recover_factors(d, np.array([1.0, 0.0]), np.array([1.0, 0.0]))
    assert np.allclose(f, [1, 2]) and np.allclose(l, [3, 4])
    assert abs(rankone.bilinear_value(d, np.eye(2), np.array([1.0, 0.0]), np.array([1.0, 0.0])) - 11.0) <= 1e-14


def test_krein_formula_on_the_discrete_pair():
    pair = discrete.build_pair(60)
    z = 1.0 + 0.5j
    r1 = discrete.resolvent(pair["t_dd"], z)
    brute = discrete.resolvent(pair["t_dn"], z) - r1
    with_factors = rankone.resolvent_difference(r1, z, pair["f"], pair["l"])
    assert np.max(np.abs(with_factors["matrix"] - brute)) <= 1e-8
    factor_free = rankone.resolvent_difference_factor_free(r1, z, discrete.inverse_difference(60))
    assert np.max(np.abs(factor_free["matrix"] - brute)) <= 1e-8


def test_laplace_closed_forms():
    assert laplace.g_dd_static(0.5, 0.5) == 0.25
    assert abs(laplace.g_dd_spectral(0.5, 0.5, 1.0) + 0.27315124492189526) <= 1e-14
    assert abs(laplace.krein_denominator(1.0) - 1.0 / math.tan(1.0)) <= 1e-14
    assert abs(laplace.scalar_pairing(0.0) + 1.0 / 3.0) <= 1e-15
    assert laplace.dn_eigenvalues(3) == pytest.approx([Z0, 9 * Z0, 25 * Z0], rel=1e-15)


def test_root_search_with_a_python_callable():
    roots, truncated = rankone.find_new_eigenvalues(laplace.krein_denominator, 0.1, 30.0, 5, [math.pi**2])
    assert not truncated
    assert roots == pytest.approx([Z0, 9 * Z0], abs=1e-9)
    assert discrete.new_eigenvalues(200, 1)[0] == pytest.approx(Z0, rel=1e-2)


def test_verify_suite_passes():
    results = rankone.verify()
    assert len(results) >= 12
    assert all(r["passed"] for r in results)
