import math

import numpy as np
import pytest

import nilharm


def test_bessel_reduced_half_order_is_cosine():
    for z in (0.0, 0.7, 3.1, 15.0):
        assert nilharm.bessel_reduced(-0.5, z) == pytest.approx(math.cos(z), abs=1e-12)


def test_laguerre_norm_at_zero_is_one():
    assert nilharm.laguerre_norm(5, 0.0, 0.0) == pytest.approx(1.0)


def test_group_law_and_norm():
    p = nilharm.random_point(3, 1)
    q = nilharm.random_point(3, 2)
    e = nilharm.product(p, nilharm.inverse(p))
    assert np.linalg.norm(e.x) + np.linalg.norm(e.a) < 1e-14
    assert nilharm.koranyi_norm(nilharm.dilate(2.5, q)) == pytest.approx(2.5 * nilharm.koranyi_norm(q), rel=1e-12)
    with pytest.raises(ValueError):
        nilharm.GroupPoint(np.zeros(3), np.zeros(2))


def test_polar_reconstruction():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(4, 4))
    A = a - a.T
    lam, k, eps = nilharm.antisym_polar(A)
    D = np.zeros((4, 4))
    for i, l in enumerate(lam):
        D[2 * i, 2 * i + 1], D[2 * i + 1, 2 * i] = l, -l
    assert np.linalg.norm(k.T @ D @ k - A) < 1e-10
    assert eps is None
    assert nilharm.eta_constant(2) == pytest.approx(2.0)


def test_spherical_function():
    p = nilharm.make_param(2, 0.0, [1.3], [2])
    assert nilharm.phi(p, nilharm.identity(2)) == 1.0
    n = nilharm.random_point(2, 5, 1.5)
    assert abs(nilharm.phi(p, n) - nilharm.phi_v2_closed(1.3, 2, n)) < 1e-8
    with pytest.raises(ValueError):
        nilharm.make_param(2, 0.0, [-1.0], [0])


def test_mu_phi_jet_at_zero_is_mass():
    p = nilharm.make_param(2, 0.0, [1.0], [1])
    jet = nilharm.mu_phi_jet(p, 0.0, 1)
    assert len(jet) == 2
    assert jet[0].real > 0


def test_bump_partition():
    y = 1.37
    assert sum(nilharm.bump(y * 2.0 ** -j) for j in range(-10, 11)) == pytest.approx(1.0, abs=1e-14)


def test_checks_report_pass():
    rep = nilharm.specfun_check()
    assert rep["pass"]
    assert set(rep["residuals"]) == {"laguerre_orthonormality", "bessel_ode", "shift_identities"}
    assert nilharm.multiplier_partition_check(v=3, order=200)["pass"]
    assert nilharm.multiplier_xi_check()["pass"]
