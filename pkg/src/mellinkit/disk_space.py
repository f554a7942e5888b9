"""The Bergman space of the disk Delta = {|zeta - 1| < 1}.

Functions are finite combinations of generalized powers
``sum_m c_m zeta^{lambda_m - 1}`` with Re lambda_m > 0 (the membership
threshold for a single power).  The inner product is the area integral
normalized by pi, with the closed Gamma-quotient form from
:func:`mellinkit.gammakit.power_inner`; :func:`mellinkit.quad.disk_integral`
is the quadrature oracle for it.

Branch convention, fixed globally: generalized powers use the principal
logarithm, which is single-valued on Delta because the disk lies in the
closed right half-plane (arg zeta in (-pi/2, pi/2)).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .gammakit import power_inner

MERGE_TOL = 1e-12  # exponents closer than this are one term


@dataclass(frozen=True)
class DiskFunction:
    terms: tuple  # of (lambda, coeff) pairs, exponents pairwise distinct

    @property
    def lambdas(self):
        return np.array([t[0] for t in self.terms], dtype=np.complex128)

    @property
    def coeffs(self):
        return np.array([t[1] for t in self.terms], dtype=np.complex128)

    def __add__(self, other):
        return disk_function(list(self.terms) + list(other.terms))

    def __rmul__(self, c):
        return disk_function([(lam, complex(c) * co) for lam, co in self.terms])

    def to_json(self) -> str:
        payload = [
            {"lambda": [lam.real, lam.imag], "coeff": [co.real, co.imag]}
            for lam, co in self.terms
        ]
        return json.dumps(payload)

    @staticmethod
    def from_json(text: str) -> "DiskFunction":
        data = json.loads(text)
        if isinstance(data, dict):
            data = data.get("terms", [])
        terms = []
        for item in data:
            lam = complex(item["lambda"][0], item["lambda"][1])
            co = complex(item["coeff"][0], item["coeff"][1])
            terms.append((lam, co))
        return disk_function(terms)


def disk_function(terms) -> DiskFunction:
    """Canonicalizing constructor: validates Re lambda > 0, merges exponents
    within MERGE_TOL, drops vanished coefficients."""
    merged: list[list[complex]] = []
    for lam, co in terms:
        lam, co = complex(lam), complex(co)
        if not lam.real > 0:
            raise DomainError(f"power exponent lambda = {lam} needs Re lambda > 0")
        for slot in merged:
            if abs(slot[0] - lam) < MERGE_TOL:
                slot[1] += co
                break
        else:
            merged.append([lam, co])
    return DiskFunction(tuple((lam, co) for lam, co in merged if co != 0))


def monomial(k: int) -> DiskFunction:
    """zeta^k as a DiskFunction (lambda = k + 1)."""
    return disk_function([(k + 1, 1.0)])


def power(lam, coeff=1.0) -> DiskFunction:
    """coeff * zeta^{lam - 1}."""
    return disk_function([(lam, coeff)])


def inner_product(f: DiskFunction, g: DiskFunction) -> complex:
    """Sesquilinear extension of the closed-form power inner product."""
    total = 0.0 + 0.0j
    for lam, c in f.terms:
        for mu, d in g.terms:
            total += c * np.conj(d) * power_inner(lam - 1.0, mu - 1.0)
    return complex(total)


def norm_sq(f: DiskFunction) -> float:
    v = inner_product(f, f)
    return max(v.real, 0.0)


def _require_in_disk(zeta, name, slack=0.0):
    # slack absorbs float rounding of quadrature nodes hugging the boundary
    if np.any(np.abs(np.asarray(zeta, dtype=np.complex128) - 1.0) >= 1.0 + slack):
        raise DomainError(f"{name} must lie in the open disk |zeta - 1| < 1")


def bergman_kernel(zeta0, zeta) -> complex:
    """Reproducing kernel of the (1/pi)-normalized space at zeta0:
    (1 - (zeta - 1) conj(zeta0 - 1))^(-2)."""
    _require_in_disk(zeta0, "zeta0")
    _require_in_disk(zeta, "zeta", slack=1e-9)
    z0 = np.asarray(zeta0, dtype=np.complex128)
    z = np.asarray(zeta, dtype=np.complex128)
    out = (1.0 - (z - 1.0) * np.conj(z0 - 1.0)) ** (-2.0)
    return complex(out) if out.ndim == 0 else out


def evaluate(f: DiskFunction, zeta):
    """Pointwise value sum_m c_m zeta^{lambda_m - 1}, principal branch."""
    z = np.asarray(zeta, dtype=np.complex128)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    at_zero = z == 0
    if np.any(at_zero) and any(lam.real < 1.0 for lam, _ in f.terms):
        raise DomainError("zeta = 0 with an exponent Re lambda < 1")
    out = np.zeros(z.shape, dtype=np.complex128)
    safe = ~at_zero
    logz = np.log(z[safe])
    for lam, c in f.terms:
        out[safe] += c * np.exp((lam - 1.0) * logz)
        if np.any(at_zero) and abs(lam - 1.0) < MERGE_TOL:
            out[at_zero] += c  # zeta^0 = 1 at the corner
    return complex(out[0]) if scalar else out
