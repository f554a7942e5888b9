import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from mellinkit import (
    DiskFunction,
    DomainError,
    QuadratureConfig,
    bergman_kernel,
    disk_function,
    disk_integral,
    evaluate,
    inner_product,
    monomial,
    norm_sq,
    power,
)

CFG = QuadratureConfig()


def test_constructor_validates_membership():
    with pytest.raises(DomainError):
        disk_function([(0.0 + 1j, 1.0)])  # Re lambda = 0 is not square-integrable


def test_canonicalization_merges_close_exponents():
    f = disk_function([(1.0, 1.0), (1.0 + 1e-14, 2.0), (2.0, 0.0)])
    assert len(f.terms) == 1
    assert f.terms[0][1] == 3.0


def test_inner_product_examples():
    one = monomial(0)
    zeta = monomial(1)
    assert_allclose(inner_product(one, one), 1.0, rtol=1e-14)
    assert_allclose(inner_product(zeta, zeta), 1.5, rtol=1e-14)
    half = power(0.5)
    assert_allclose(inner_product(half, half), 4.0 / math.pi, rtol=1e-13)


def test_norm_sq_bilinear_expansion():
    assert_allclose(norm_sq(monomial(0)), 1.0, rtol=1e-14)
    f = disk_function([(2.0, 1.0), (1.0, -1.0)])  # zeta - 1
    assert_allclose(norm_sq(f), 0.5, rtol=1e-13)


def test_norm_sq_power_vs_quadrature():
    lam = 0.3
    f = power(lam)
    closed = norm_sq(f)
    quad = disk_integral(lambda z: np.exp((lam - 1) * np.log(z)) *
                         np.conj(np.exp((lam - 1) * np.log(z))), CFG)
    assert abs(closed - quad.real) / closed < 1e-6


def test_inner_product_vs_disk_quadrature(rng):
    for _ in range(5):
        lam = complex(rng.uniform(0.2, 4), rng.uniform(-3, 3))
        mu = complex(rng.uniform(0.2, 4), rng.uniform(-3, 3))
        f, g = power(lam), power(mu)
        closed = inner_product(f, g)
        quad = disk_integral(
            lambda z: np.exp((lam - 1) * np.log(z) + (np.conj(mu) - 1) * np.log(np.conj(z))), CFG)
        assert abs(closed - quad) / abs(closed) < 1e-6


def test_cauchy_schwarz(rng):
    for _ in range(10):
        f = disk_function([(complex(rng.uniform(0.3, 3), rng.uniform(-2, 2)),
                            complex(rng.normal(), rng.normal())) for _ in range(3)])
        g = disk_function([(complex(rng.uniform(0.3, 3), rng.uniform(-2, 2)),
                            complex(rng.normal(), rng.normal())) for _ in range(2)])
        lhs = abs(inner_product(f, g)) ** 2
        assert lhs <= norm_sq(f) * norm_sq(g) * (1 + 1e-10)


def test_bergman_kernel_center_and_diagonal():
    for zeta in [1.0, 1.3 + 0.4j, 0.5 - 0.2j]:
        assert_allclose(bergman_kernel(1.0, zeta), 1.0, rtol=1e-14)
    z0 = 1.2 + 0.3j
    diag = bergman_kernel(z0, z0)
    assert abs(diag.imag) < 1e-14
    assert_allclose(diag.real, (1 - abs(z0 - 1) ** 2) ** (-2), rtol=1e-13)
    with pytest.raises(DomainError):
        bergman_kernel(2.5, 1.0)


def test_bergman_kernel_hermitian(rng):
    for _ in range(10):
        a = 1.0 + complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
        b = 1.0 + complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
        assert abs(bergman_kernel(a, b) - np.conj(bergman_kernel(b, a))) < 1e-13


def test_bergman_kernel_reproduces_squares():
    # (1/pi) iint zeta^2 conj(B_{z0}(zeta)) dA = z0^2
    z0 = 1.2 + 0.3j
    val = disk_integral(lambda z: z**2 * np.conj(bergman_kernel(z0, z)), CFG)
    assert abs(val - z0**2) < 1e-6


def test_evaluate_principal_branch():
    assert_allclose(evaluate(monomial(3), 1.0), 1.0, rtol=1e-14)
    assert_allclose(evaluate(power(0.5), 2.0), 2.0**-0.5, rtol=1e-13)
    assert_allclose(evaluate(power(1 + 1j), 1.0), 1.0, rtol=1e-14)  # 1^i = 1
    with pytest.raises(DomainError):
        evaluate(power(0.5), 0.0)


def test_json_round_trip():
    f = disk_function([(1.5 + 0.5j, 2.0 - 1.0j), (3.0, 1.0)])
    g = DiskFunction.from_json(f.to_json())
    assert g.terms == f.terms
    # lenient parse of the wrapped form
    h = DiskFunction.from_json('{"terms": [{"lambda": [1.0, 0.0], "coeff": [1.0, 0.0]}]}')
    assert h.terms == ((1.0 + 0j, 1.0 + 0j),)
