"""Complex Gamma function and the Gamma-quotient quantities built on it.

All quotient forms (``power_inner``, ``power_norm_sq`` and the kernels in
the transform modules) are evaluated as differences of log-Gamma values and
then exponentiated, so they stay finite where the individual Gamma factors
would overflow.  Everything here is pure and array-capable: scalar in,
scalar out; ndarray in, ndarray out.
"""

from __future__ import annotations

import math

import numpy as np

from . import _backend
from .errors import DomainError, PoleError

POLE_TOL = 1e-12  # |z - (-k)| below this counts as sitting on a pole

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


def _asarray(z):
    arr = np.asarray(z, dtype=np.complex128)
    return arr, arr.ndim == 0


def _ret(arr, scalar):
    return complex(arr) if scalar else arr


def log_cgamma(z):
    """Principal branch of log Gamma, continuous on the open right half-plane.

    Computed directly from the logarithmic form of the Lanczos approximation
    (never as log of ``cgamma``), so it stays representable for Re z well
    beyond the overflow point of Gamma itself.
    """
    arr, scalar = _asarray(z)
    if not np.all(arr.real > 0.0):
        raise DomainError("log_cgamma requires Re z > 0")
    return _ret(_backend.log_gamma(arr), scalar)


def cgamma(z):
    """Gamma(z) on the complex plane minus the non-positive integers.

    Uses the Lanczos form on Re z >= 0.5 and the reflection formula
    Gamma(z)Gamma(1-z) = pi/sin(pi z) elsewhere.
    """
    arr, scalar = _asarray(z)
    near = np.rint(arr.real)
    on_pole = (near <= 0.0) & (np.abs(arr - near) < POLE_TOL)
    if np.any(on_pole):
        bad = arr.ravel()[np.flatnonzero(on_pole.ravel())[0]]
        raise PoleError(f"Gamma pole at z = {bad}")
    out = np.empty(arr.shape, dtype=np.complex128)
    right = arr.real >= 0.5
    if np.any(right):
        out[right] = np.exp(_backend.log_gamma(arr[right]))
    if not np.all(right):
        zl = arr[~right]
        out[~right] = np.pi / (np.sin(np.pi * zl) * np.exp(_backend.log_gamma(1.0 - zl)))
    return _ret(out, scalar)


def gamma_asymptotic(z):
    """Leading Stirling form sqrt(2 pi) e^{(z-1/2) log z - z}.

    The ratio cgamma(z)/gamma_asymptotic(z) is 1 + O(1/|z|) away from the
    negative axis.
    """
    arr, scalar = _asarray(z)
    if not (np.all(np.abs(np.angle(arr)) <= np.pi - 0.1) and np.all(np.abs(arr) >= 1.0)):
        raise DomainError("gamma_asymptotic requires |arg z| <= pi - 0.1 and |z| >= 1")
    out = _SQRT_TWO_PI * np.exp((arr - 0.5) * np.log(arr) - arr)
    return _ret(out, scalar)


def power_inner(alpha, beta):
    """Inner product of the generalized powers zeta^alpha and zeta^beta on the
    unit disk centered at 1, normalized by pi:

        (1/pi) iint zeta^alpha conj(zeta)^beta dA
            = Gamma(alpha + conj(beta) + 2) / (Gamma(alpha+2) Gamma(conj(beta)+2))

    for Re alpha, Re beta > -1.
    """
    a, sa = _asarray(alpha)
    b, sb = _asarray(beta)
    if not (np.all(a.real > -1.0) and np.all(b.real > -1.0)):
        raise DomainError("power_inner requires Re alpha > -1 and Re beta > -1")
    bc = np.conj(b)
    lg = _backend.log_gamma
    out = np.exp(lg(a + bc + 2.0) - lg(a + 2.0) - lg(bc + 2.0))
    return _ret(out, sa and sb)


def power_norm_sq(z):
    """Squared disk norm of zeta^{z-1}: Gamma(2 Re z) / |Gamma(z+1)|^2, Re z > 0."""
    arr, scalar = _asarray(z)
    if not np.all(arr.real > 0.0):
        raise DomainError("power_norm_sq requires Re z > 0")
    lg2x = _backend.log_gamma(2.0 * arr.real + 0.0j).real
    out = np.exp(lg2x - 2.0 * _backend.log_gamma(arr + 1.0).real)
    return float(out) if scalar else out
