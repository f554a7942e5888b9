import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import loggamma as scipy_loggamma

from mellinkit import DomainError, PoleError, cgamma, gamma_asymptotic, log_cgamma, power_inner, power_norm_sq


def test_cgamma_classic_values():
    assert_allclose(cgamma(1.0), 1.0, rtol=1e-14)
    assert_allclose(cgamma(0.5), math.sqrt(math.pi), rtol=1e-14)
    assert_allclose(cgamma(5.0), 24.0, rtol=1e-14)


def test_cgamma_sech_identity():
    # |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
    for y in [0.0, 0.5, 1.0, 2.0, 5.0]:
        v = abs(cgamma(0.5 + 1j * y)) ** 2
        assert_allclose(v, math.pi / math.cosh(math.pi * y), rtol=1e-12)


def test_cgamma_reflection_and_recurrence(rng):
    z = rng.uniform(-30, 30, 200) + 1j * rng.uniform(-30, 30, 200)
    # keep away from the poles for reflection
    z = z[np.abs(z - np.rint(z.real)) > 1e-3]
    refl = cgamma(z) * cgamma(1.0 - z) * np.sin(np.pi * z) / np.pi
    assert np.max(np.abs(refl - 1.0)) < 1e-10

    zr = z[z.real > 0]
    rec = cgamma(zr + 1.0) / (zr * cgamma(zr))
    assert np.max(np.abs(rec - 1.0)) < 1e-11


def test_cgamma_conjugate_symmetry(rng):
    z = rng.uniform(0.1, 20, 50) + 1j * rng.uniform(-20, 20, 50)
    a = cgamma(np.conj(z))
    b = np.conj(cgamma(z))
    assert np.max(np.abs(a - b) / np.abs(b)) < 1e-12


def test_cgamma_pole_detection():
    for bad in [0.0, -1.0, -5.0, -3.0 + 1e-13j]:
        with pytest.raises(PoleError):
            cgamma(bad)


def test_log_cgamma_matches_exp_and_scipy(rng):
    z = rng.uniform(0.05, 40, 80) + 1j * rng.uniform(-40, 40, 80)
    lg = log_cgamma(z)
    assert np.max(np.abs(np.exp(lg) - cgamma(z)) / np.abs(cgamma(z))) < 1e-10
    # independent cross-oracle
    assert np.max(np.abs(lg - scipy_loggamma(z))) < 1e-10


def test_log_cgamma_values_and_domain():
    assert abs(log_cgamma(1.0)) < 1e-13
    assert abs(log_cgamma(2.0)) < 1e-13
    assert_allclose(log_cgamma(10.0).real, math.log(362880.0), rtol=1e-13)
    with pytest.raises(DomainError):
        log_cgamma(-0.5 + 1j)


def test_log_cgamma_continuity_along_lines():
    # no branch jumps on vertical lines in the right half-plane
    for x in [0.1, 0.5, 2.0]:
        y = np.linspace(-30, 30, 4001)
        vals = log_cgamma(x + 1j * y)
        jumps = np.abs(np.diff(vals.imag))
        assert jumps.max() < 1.0


def test_log_cgamma_large_argument_no_overflow():
    v = log_cgamma(500.0 + 3.0j)
    assert np.isfinite(v.real) and v.real > 2000


def test_gamma_asymptotic_ratios():
    r10 = cgamma(10.0) / gamma_asymptotic(10.0)
    assert 1.0 < r10.real < 1.01 and abs(r10.imag) < 1e-12
    r100 = cgamma(100.0 + 5.0j) / gamma_asymptotic(100.0 + 5.0j)
    assert abs(r100 - 1.0) < 1e-3
    r1 = cgamma(1.0) / gamma_asymptotic(1.0)
    assert abs(r1 - 1.0) < 0.1
    with pytest.raises(DomainError):
        gamma_asymptotic(-5.0 + 0.01j)
    with pytest.raises(DomainError):
        gamma_asymptotic(0.5)


def test_power_inner_values():
    assert_allclose(power_inner(0.0, 0.0), 1.0, rtol=1e-14)
    assert_allclose(power_inner(1.0, 0.0), 1.0, rtol=1e-14)
    assert_allclose(power_inner(1.0, 1.0), 1.5, rtol=1e-14)
    with pytest.raises(DomainError):
        power_inner(-1.2, 0.0)


def test_power_inner_hermitian(rng):
    for _ in range(20):
        a = complex(rng.uniform(-0.8, 3), rng.uniform(-3, 3))
        b = complex(rng.uniform(-0.8, 3), rng.uniform(-3, 3))
        assert abs(power_inner(a, b) - np.conj(power_inner(b, a))) < 1e-12 * abs(power_inner(a, b))


def test_power_norm_sq():
    assert_allclose(power_norm_sq(1.0), 1.0, rtol=1e-14)
    assert_allclose(power_norm_sq(0.5), 4.0 / math.pi, rtol=1e-13)
    with pytest.raises(DomainError):
        power_norm_sq(-0.1 + 2j)


def test_power_norm_sq_is_diagonal_inner(rng):
    z = rng.uniform(0.2, 4, 25) + 1j * rng.uniform(-3, 3, 25)
    for zz in z:
        diag = power_inner(zz - 1.0, zz - 1.0)
        assert abs(diag.imag) < 1e-12 * abs(diag)
        assert diag.real > 0
        assert_allclose(power_norm_sq(zz), diag.real, rtol=1e-11)
