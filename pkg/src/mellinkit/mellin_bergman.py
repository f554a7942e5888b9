"""The disk-to-half-plane transform layer.

``mb_transform`` maps a disk power combination to the analytic function

    M f(z) = (1/pi) iint f(zeta) conj(zeta)^{z-1} dA(zeta)
           = <f, zeta^{conj(z)-1}>,

computed in closed Gamma-quotient form on powers (quadrature via
``mb_quad`` is kept as the oracle).  The module also carries the target
space's reproducing kernel ``h_kernel``, the pointwise growth envelope,
the Cayley pushforward to the Bergman space of the half-plane, and the
factorization of the transform through the classical Mellin transform.

Normalization constants, pinned by the quadrature oracles in the test
suite (the symmetric 1/sqrt(2 pi) Fourier convention leaves them
ambiguous a priori):

* ``T_MAP_SCALE = sqrt(2)``: the scale in ``t_map_power``.  With it the
  factorization identity ``mb == FACTOR_PREFACTOR * M(T .)`` holds exactly,
* ``T_NORM_RATIO = 2.0``: consequently the weighted half-line norm of
  ``t_map_power(lam)`` equals ``T_NORM_RATIO * power_norm_sq(lam)``, i.e.
  the t-map is sqrt(2) times an isometry under this convention.
"""

from __future__ import annotations

import math

import numpy as np

from . import m2_space
from ._backend import log_gamma
from .disk_space import DiskFunction
from .errors import DomainError
from .gammakit import power_norm_sq
from .halfplane import HalfPlaneFunction
from .quad import DEFAULT_CONFIG, QuadratureConfig, disk_integral

T_MAP_SCALE = math.sqrt(2.0)
T_NORM_RATIO = 2.0

_LOG2 = math.log(2.0)
_SQRT_PI = math.sqrt(math.pi)


def mb_power(lam) -> HalfPlaneFunction:
    """Transform of a single power zeta^{lam-1}:
    z -> Gamma(z+lam) / (Gamma(z+1) Gamma(lam+1)).

    The Gamma quotient is meromorphic; the declared domain stays inside the
    pole-free half-plane Re z > -min(1, Re lam).
    """
    lam = complex(lam)
    if not lam.real > 0:
        raise DomainError("mb_power requires Re lambda > 0")
    lg_lam1 = complex(log_gamma(lam + 1.0))

    def ev(z):
        return np.exp(log_gamma(z + lam) - log_gamma(z + 1.0) - lg_lam1)

    return HalfPlaneFunction(
        eval=ev,
        domain_min_re=-min(1.0, lam.real) + 1e-9,
        tag=f"mb(zeta^({lam}-1))",
    )


def mb_transform(f: DiskFunction) -> HalfPlaneFunction:
    """Linear extension of mb_power over the terms of f."""
    parts = [(complex(c), mb_power(lam)) for lam, c in f.terms]
    if not parts:
        return HalfPlaneFunction(eval=lambda z: np.zeros(z.shape, dtype=np.complex128),
                                 domain_min_re=-1.0 + 1e-9, tag="mb(0)")

    def ev(z):
        out = np.zeros(np.shape(z), dtype=np.complex128)
        for c, h in parts:
            out = out + c * h.eval(z)
        return out

    return HalfPlaneFunction(
        eval=ev,
        domain_min_re=max(h.domain_min_re for _, h in parts),
        tag="mb(disk function)",
    )


def mb_quad(g, z, cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Quadrature evaluation of the transform of an arbitrary disk callable;
    the oracle for mb_transform."""
    z = complex(z)
    if not z.real > 0:
        raise DomainError("mb_quad requires Re z > 0")

    def integrand(zeta):
        return np.asarray(g(zeta)) * np.exp((z - 1.0) * np.log(np.conj(zeta)))

    return disk_integral(integrand, cfg)


def h_kernel(z, w) -> complex:
    """Reproducing kernel of the transform's image space:
    (1/2pi) Gamma(z + conj w) / (Gamma(1+z) Gamma(1+conj w))."""
    z, w = complex(z), complex(w)
    if not (z.real > 0 and w.real > 0):
        raise DomainError("h_kernel requires Re z > 0 and Re w > 0")
    wc = np.conj(w)
    val = np.exp(log_gamma(z + wc) - log_gamma(1.0 + z) - log_gamma(1.0 + wc))
    return complex(val) / (2.0 * math.pi)


def type_envelope(z, norm_f: float) -> float:
    """Pointwise bound norm_f * Gamma(2 Re z)^(1/2) / |Gamma(z+1)| that every
    transformed function of that disk norm satisfies."""
    z = complex(z)
    if not z.real > 0:
        raise DomainError("type_envelope requires Re z > 0")
    return float(norm_f) * math.sqrt(power_norm_sq(z))


def cayley_pushforward(f: DiskFunction) -> HalfPlaneFunction:
    """Unitary change of variables onto the half-plane Bergman space via
    phi(w) = 2/(w+1):  f~(w) = (1/sqrt(pi)) phi'(w) f(phi(w)).

    On powers this is closed form: zeta^{lam-1} maps to
    -(2^lam/sqrt(pi)) (w+1)^(-lam-1).
    """
    terms = [(complex(lam), complex(c)) for lam, c in f.terms]

    def ev(w):
        lw = np.log(w + 1.0)
        out = np.zeros(np.shape(w), dtype=np.complex128)
        for lam, c in terms:
            out = out - (c / _SQRT_PI) * np.exp(lam * _LOG2 - (lam + 1.0) * lw)
        return out

    return HalfPlaneFunction(eval=ev, domain_min_re=-1.0 + 1e-9, tag="cayley pushforward")


def t_map_power(lam):
    """Closed form of the half-line reduction of a single power:
    t -> -(sqrt(2) 2^lam / Gamma(1+lam)) t^lam e^{-2t} on (0, inf)."""
    lam = complex(lam)
    if not lam.real > 0:
        raise DomainError("t_map_power requires Re lambda > 0")
    scale = -T_MAP_SCALE * np.exp(lam * _LOG2 - complex(log_gamma(lam + 1.0)))

    def phi(t):
        t = np.asarray(t, dtype=np.float64)
        return scale * np.exp(lam * np.log(t) - 2.0 * t)

    return phi


def factorization_check(lam, z, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Residual of the factorization through the classical Mellin transform:

        | mb_power(lam)(z) + sqrt(pi) (2^z/Gamma(z+1)) M(t_map_power(lam))(z) |

    The Mellin side is evaluated by quadrature, so this check crosses the
    closed-form and quadrature routes.
    """
    lam, z = complex(lam), complex(z)
    lhs = mb_power(lam)(z)
    mphi = m2_space.mellin(t_map_power(lam), z, cfg)
    rhs = -_SQRT_PI * np.exp(z * _LOG2 - complex(log_gamma(z + 1.0))) * mphi
    return float(abs(lhs - rhs))
