"""Hot numeric kernels with selectable numba / pure-numpy implementations.

Everything expensive in this package funnels through two array kernels:

* principal log-Gamma on the open right half-plane, evaluated at every
  quadrature node of every line/disk integral, and
* accumulated logs of symmetrized Weierstrass factors ``1 - z^2/z_j^2``
  over up to ~1e6 zeros.

Both kernels exist twice with identical elementwise semantics: an
``@njit`` loop and a vectorized numpy version.  Selection: the
``MELLINKIT_BACKEND`` environment variable (``"numba"`` or ``"numpy"``),
falling back to numpy automatically when numba is unavailable.
``benchmarks/bench_backends.py`` times the two side by side.
"""

from __future__ import annotations

import cmath
import os
import warnings

import numpy as np

# Lanczos rational approximation of Gamma, g = 607/128 with 15 terms
# (Godfrey's coefficient set, the one used by Boost.Math and several
# cephes descendants).  Reconstructed Gamma is accurate to ~1e-14
# relative on Re z >= 0.5; a one-step recurrence covers 0 < Re z < 0.5.
LANCZOS_G = 607.0 / 128.0
LANCZOS_COEFFS = np.array(
    [
        0.99999999999999709182,
        57.156235665862923517,
        -59.597960355475491248,
        14.136097974741747174,
        -0.49191381609762019978,
        0.33994649984811888699e-4,
        0.46523628927048575665e-4,
        -0.98374475304879564677e-4,
        0.15808870322491248884e-3,
        -0.21026444172410488319e-3,
        0.21743961811521264320e-3,
        -0.16431810653676389022e-3,
        0.84418223983852743293e-4,
        -0.26190838401581408670e-4,
        0.36899182659531622704e-5,
    ]
)

_HALF_LOG_TWO_PI = 0.9189385332046727417803297364056176398


def _log_gamma_numpy(z: np.ndarray) -> np.ndarray:
    """Principal log-Gamma, elementwise on a 1-D complex array, Re z > 0."""
    z = np.ascontiguousarray(z, dtype=np.complex128)
    shifted = z.real < 0.5
    zz = np.where(shifted, z + 1.0, z) - 1.0
    t = zz + (LANCZOS_G + 0.5)
    s = np.full(z.shape, LANCZOS_COEFFS[0], dtype=np.complex128)
    for k in range(1, LANCZOS_COEFFS.size):
        s += LANCZOS_COEFFS[k] / (zz + k)
    out = _HALF_LOG_TWO_PI + (zz + 0.5) * np.log(t) - t + np.log(s)
    # recurrence:  log Gamma(z) = log Gamma(z+1) - Log z,  valid on Re z > 0
    return np.where(shifted, out - np.log(z), out)


def _weier_logsum_numpy(zsq: np.ndarray, zjsq: np.ndarray):
    """Sum of principal log(1 - zsq/zjsq) per zsq entry, plus exact-hit flags."""
    m = zsq.shape[0]
    out = np.empty(m, dtype=np.complex128)
    hit = np.zeros(m, dtype=np.bool_)
    for i in range(m):
        w = 1.0 - zsq[i] / zjsq
        zero = w == 0
        if zero.any():
            hit[i] = True
            w = w[~zero]
        out[i] = np.sum(np.log(w)) if w.size else 0.0
    return out, hit


_HAVE_NUMBA = False
_env = os.environ.get("MELLINKIT_BACKEND", "").strip().lower()

if _env != "numpy":
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        if _env == "numba":
            warnings.warn("MELLINKIT_BACKEND=numba but numba is not importable; using numpy")

if _HAVE_NUMBA:
    _LC = LANCZOS_COEFFS
    _G = LANCZOS_G

    @njit(cache=True)
    def _log_gamma_numba(z):  # pragma: no cover - exercised via dispatch
        n = z.shape[0]
        out = np.empty(n, dtype=np.complex128)
        for i in range(n):
            zi = z[i]
            shifted = zi.real < 0.5
            zz = (zi + 1.0 if shifted else zi) - 1.0
            t = zz + (_G + 0.5)
            s = complex(_LC[0])
            for k in range(1, 15):
                s += _LC[k] / (zz + k)
            val = _HALF_LOG_TWO_PI + (zz + 0.5) * cmath.log(t) - t + cmath.log(s)
            if shifted:
                val -= cmath.log(zi)
            out[i] = val
        return out

    @njit(cache=True)
    def _weier_logsum_numba(zsq, zjsq):  # pragma: no cover - exercised via dispatch
        m = zsq.shape[0]
        n = zjsq.shape[0]
        out = np.empty(m, dtype=np.complex128)
        hit = np.zeros(m, dtype=np.bool_)
        for i in range(m):
            acc = 0.0 + 0.0j
            for j in range(n):
                w = 1.0 - zsq[i] / zjsq[j]
                if w == 0:
                    hit[i] = True
                else:
                    acc += cmath.log(w)
            out[i] = acc
        return out, hit


BACKEND = "numba" if (_HAVE_NUMBA and _env != "numpy") else "numpy"


def set_backend(name: str) -> None:
    """Switch the kernel implementation at runtime (used by benchmarks/tests)."""
    global BACKEND
    if name not in available_backends():
        raise ValueError(f"backend {name!r} not available (have {available_backends()})")
    BACKEND = name


def available_backends():
    return ("numba", "numpy") if _HAVE_NUMBA else ("numpy",)


def log_gamma(z) -> np.ndarray:
    """Principal log-Gamma on Re z > 0 for scalar or any-shape complex input."""
    arr = np.asarray(z, dtype=np.complex128)
    flat = np.ascontiguousarray(arr.ravel())
    if BACKEND == "numba":
        out = _log_gamma_numba(flat)
    else:
        out = _log_gamma_numpy(flat)
    return out.reshape(arr.shape)


def weierstrass_logsum(zsq, zjsq):
    """log of the symmetrized product over squared zeros, with zero-hit flags.

    Returns ``(logs, hits)`` where ``logs[i] = sum_j log(1 - zsq[i]/zjsq[j])``
    over all non-vanishing factors and ``hits[i]`` marks an exact zero hit.
    """
    zsq = np.ascontiguousarray(np.asarray(zsq, dtype=np.complex128).ravel())
    zjsq = np.ascontiguousarray(np.asarray(zjsq, dtype=np.complex128).ravel())
    if BACKEND == "numba":
        return _weier_logsum_numba(zsq, zjsq)
    return _weier_logsum_numpy(zsq, zjsq)
