import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from mellinkit import (
    DomainError,
    HalfPlaneFunction,
    QuadratureConfig,
    SpectralDensity,
    T_NORM_RATIO,
    bergman_kernel,
    cayley_pushforward,
    disk_function,
    exp_type_estimate,
    factorization_check,
    h_kernel,
    integrate_interval,
    line_integral,
    mb_power,
    mb_quad,
    mb_transform,
    monomial,
    norm_sq,
    power,
    power_norm_sq,
    t_map_power,
    type_envelope,
    weighted_axis_integral,
)

CFG = QuadratureConfig()


def _poly_image(k, z):
    # closed polynomial form of the transform of zeta^k: (z+1)...(z+k)/(k+1)!
    out = np.ones_like(np.asarray(z, dtype=complex))
    for i in range(1, k + 1):
        out = out * (z + i)
    return out / math.factorial(k + 1)


def test_mb_power_constant():
    h = mb_power(1.0)
    for z in [0.5, 2.0 + 1j, 10.0 - 3j]:
        assert_allclose(h(z), 1.0, rtol=1e-13)


def test_mb_power_polynomials():
    zgrid = [0.5, 1.0, 2.0, 3.5, 1 + 1j, 0.3 - 2j, 2.5 + 0.5j]
    for k in range(6):
        h = mb_power(k + 1)
        for z in zgrid:
            assert abs(h(z) - _poly_image(k, z)) < 1e-12 * (1 + abs(_poly_image(k, z)))


def test_mb_power_domain_and_errors():
    with pytest.raises(DomainError):
        mb_power(-0.5)
    h = mb_power(0.5)
    assert h.domain_min_re == pytest.approx(-0.5 + 1e-9)
    with pytest.raises(DomainError):
        h(-0.9)


def test_mb_power_vs_quadrature():
    lam, z = 0.7 + 0.2j, 0.4 - 1.1j
    closed = mb_power(lam)(z)
    quad = mb_quad(lambda zz: np.exp((lam - 1) * np.log(zz)), z, CFG)
    assert abs(closed - quad) < 1e-6 * abs(closed)


def test_mb_transform_linearity():
    f = disk_function([(1.0, 1.0), (2.0, 1.0)])  # 1 + zeta
    h = mb_transform(f)
    for z in [1.0, 2.0 + 0.5j]:
        assert abs(h(z) - (1.0 + (z + 1.0) / 2.0)) < 1e-12
    zero = mb_transform(disk_function([]))
    assert zero(1.0) == 0.0


def test_mb_transform_pointwise_linearity(rng):
    f = disk_function([(1.3, 0.7), (2.1 + 0.4j, -0.3j)])
    g = disk_function([(0.6, 1.1), (3.0, 2.0)])
    a, b = 2.0 - 1j, 0.5
    lhs = mb_transform(a * f + b * g)
    hf, hg = mb_transform(f), mb_transform(g)
    for _ in range(5):
        z = complex(rng.uniform(0.2, 3), rng.uniform(-2, 2))
        assert abs(lhs(z) - (a * hf(z) + b * hg(z))) < 1e-12


def test_mb_quad_kernel_identity():
    # transform of the disk reproducing kernel at zeta0 is conj(zeta0)^{z-1}
    z0, z = 1 + 0.5j, 2 + 1j
    q = mb_quad(lambda zz: bergman_kernel(z0, zz), z, CFG)
    assert abs(q - np.conj(z0) ** (z - 1)) < 1e-6


def test_h_kernel_values_and_symmetry():
    assert_allclose(h_kernel(1.0, 1.0), 1.0 / (2 * math.pi), rtol=1e-13)
    z, w = 0.3 + 2j, 1.7 - 0.4j
    assert abs(h_kernel(z, w) - np.conj(h_kernel(w, z))) < 1e-14
    with pytest.raises(DomainError):
        h_kernel(-1.0, 1.0)


def test_h_kernel_consistent_with_mb_power(rng):
    for _ in range(10):
        lam = complex(rng.uniform(0.2, 4), rng.uniform(-3, 3))
        z = complex(rng.uniform(0.1, 4), rng.uniform(-3, 3))
        a = mb_power(lam)(z)
        b = 2 * math.pi * h_kernel(z, np.conj(lam))
        assert abs(a - b) < 1e-12 * abs(a)


def test_type_envelope():
    assert_allclose(type_envelope(1.0, 1.0), 1.0, rtol=1e-13)
    assert_allclose(type_envelope(0.5, 1.0), 2.0 / math.sqrt(math.pi), rtol=1e-13)
    assert_allclose(type_envelope(0.5, 2.0), 2.0 * type_envelope(0.5, 1.0), rtol=1e-14)


def test_envelope_bounds_transform(rng):
    for _ in range(5):
        f = disk_function([(complex(rng.uniform(0.3, 3), rng.uniform(-1, 1)),
                            complex(rng.normal(), rng.normal())) for _ in range(3)])
        h = mb_transform(f)
        bound_scale = math.sqrt(norm_sq(f))
        for _ in range(5):
            z = complex(rng.uniform(0.1, 5), rng.uniform(-4, 4))
            assert abs(h(z)) <= type_envelope(z, bound_scale) + 1e-9


def test_cayley_pushforward_closed_form():
    ft = cayley_pushforward(monomial(0))  # lambda = 1
    for w in [0.7 + 0.2j, 2.0, 0.1 - 1j]:
        ref = -(2.0 / math.sqrt(math.pi)) * (w + 1.0) ** (-2.0)
        assert abs(ft(w) - ref) < 1e-13
    # phi(1) = 1: the map fixes the centers
    assert_allclose(2.0 / (1.0 + 1.0), 1.0)


def test_cayley_pushforward_is_isometric():
    # iint over the half-plane of |pushforward|^2 equals the disk norm
    f = monomial(0)
    ft = cayley_pushforward(f)

    def outer(us):
        us = np.atleast_1d(us)
        return np.array([line_integral(ft, u / (1 - u), CFG) / (1 - u) ** 2 for u in us])

    total = integrate_interval(outer, 1e-9, 1 - 1e-9, CFG)
    assert abs(total - norm_sq(f)) < 1e-5


def test_t_map_power_values():
    phi = t_map_power(1.0)
    assert_allclose(phi(1.0), -2.0 * math.sqrt(2.0) * math.exp(-2.0), rtol=1e-13)
    # real exponents give real values (up to the global sign convention)
    vals = phi(np.array([0.3, 1.0, 2.5]))
    assert np.max(np.abs(vals.imag)) < 1e-15
    with pytest.raises(DomainError):
        t_map_power(-1.0)


def test_t_map_weighted_norm_pins_ratio():
    # int_0^inf |T(zeta^{lam-1})|^2 e^{2t} dt/t = T_NORM_RATIO * power_norm_sq(lam)
    for lam in [1.0, 1.3 + 0.4j, 0.6]:
        phi = t_map_power(lam)
        psi = SpectralDensity(values=lambda u: phi(np.exp(u)), support_hint=None)
        v = weighted_axis_integral(psi, 2.0, CFG)
        assert_allclose(v, T_NORM_RATIO * power_norm_sq(lam), rtol=1e-8)


def test_factorization_residuals():
    for lam in [1.0, 2.0, 0.3, 0.5 + 1j]:
        for z in [1.0, 2.0, 0.3, 0.5 + 1j]:
            assert factorization_check(lam, z, CFG) < 1e-8


def test_transform_of_kernel_exponential_type():
    # growth of the transformed disk kernel along the imaginary direction
    # matches |arg zeta0|
    z0 = 1 + 0.9j

    def ev(zs):
        return np.array([mb_quad(lambda zz: bergman_kernel(z0, zz), complex(z), CFG)
                         for z in np.atleast_1d(zs)])

    h = HalfPlaneFunction(eval=ev, domain_min_re=0.0, tag="mb(B)")
    est = exp_type_estimate(h, [2, 3, 4, 5, 6], arc=(math.pi / 2 - 0.05, math.pi / 2 - 0.02))
    target = abs(np.angle(z0))
    assert abs(est.value - target) / target < 0.05
