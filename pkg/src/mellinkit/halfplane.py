"""Evaluatable analytic function handles on right half-planes.

A handle carries a vectorized evaluator, the largest half-plane
``{Re z > domain_min_re}`` on which it is valid, and a free-form tag.
Analyticity is not machine-checked; every constructor in this package
produces analytic functions by construction.  Handles are immutable and
support the little algebra the norm machinery needs (sums, scalar
multiples).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class HalfPlaneFunction:
    eval: Callable
    domain_min_re: float = 0.0
    tag: str = ""
    log_abs: Callable | None = field(default=None, compare=False)

    def __call__(self, z):
        arr = np.asarray(z, dtype=np.complex128)
        if not np.all(arr.real > self.domain_min_re):
            raise DomainError(
                f"{self.tag or 'function'} is only valid on Re z > {self.domain_min_re}"
            )
        out = self.eval(arr)
        return complex(out) if arr.ndim == 0 else out

    def __add__(self, other):
        if not isinstance(other, HalfPlaneFunction):
            return NotImplemented
        f, g = self.eval, other.eval
        return HalfPlaneFunction(
            eval=lambda z: f(z) + g(z),
            domain_min_re=max(self.domain_min_re, other.domain_min_re),
            tag=f"({self.tag} + {other.tag})",
        )

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, c):
        if isinstance(c, HalfPlaneFunction):
            return NotImplemented
        c = complex(c)
        f = self.eval
        return HalfPlaneFunction(
            eval=lambda z: c * f(z),
            domain_min_re=self.domain_min_re,
            tag=f"{c}*{self.tag}",
        )

    __rmul__ = __mul__

    def __neg__(self):
        return (-1.0) * self
