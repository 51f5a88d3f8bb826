"""Gamma-function primitives: classical gamma, the scaled two-parameter
family, Pochhammer symbols, and slow product/limit forms used as
convergence-testable secondary evaluators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError, PoleError


@dataclass(frozen=True)
class PkParams:
    """Scale/exponent pair of the two-parameter gamma integral."""

    p: float
    k: float

    def __post_init__(self):
        if not (math.isfinite(self.p) and self.p > 0):
            raise DomainError("p", "must be a finite real > 0")
        if not (math.isfinite(self.k) and self.k > 0):
            raise DomainError("k", "must be a finite real > 0")


def _is_nonpositive_integer(z: float) -> bool:
    return z <= 0 and z == math.floor(z)


def gamma(z: float) -> float:
    """Classical gamma function for real z.

    Raises ``PoleError`` at 0, -1, -2, ... and ``OverflowError`` when the
    result exceeds double range.
    """
    if not math.isfinite(z):
        raise DomainError("z", "must be finite")
    if _is_nonpositive_integer(z):
        raise PoleError(z)
    return math.gamma(z)


def log_gamma(z: float) -> float:
    """ln(gamma(z)) for z > 0."""
    if not (math.isfinite(z) and z > 0):
        raise DomainError("z", "must be a finite real > 0")
    return math.lgamma(z)


def gamma_sign(z: float) -> float:
    """Sign of gamma(z) for non-pole real z: alternates between the negative
    unit intervals."""
    if z > 0:
        return 1.0
    return -1.0 if math.floor(z) % 2 else 1.0


def pochhammer(alpha: float, n: int) -> float:
    """Rising factorial (alpha)_n; the empty product (n = 0) is 1."""
    if n < 0:
        raise DomainError("n", "must be >= 0")
    out = 1.0
    for j in range(n):
        out *= alpha + j
    return out


def pochhammer_two_param(pk: PkParams, x: float, n: int) -> float:
    """Scaled rising factorial prod_{j=0}^{n-1} p*(x + j*k)/k.

    Zero factors are allowed, so the result may be 0.
    """
    if n < 0:
        raise DomainError("n", "must be >= 0")
    out = 1.0
    for j in range(n):
        out *= pk.p * (x + j * pk.k) / pk.k
    return out


def pk_gamma_closed(pk: PkParams, x: float) -> float:
    """Closed form (p^(x/k) / k) * gamma(x/k) of the two-parameter gamma
    integral  integral_0^inf exp(-t^k / p) t^(x-1) dt,  x > 0."""
    if not (math.isfinite(x) and x > 0):
        raise DomainError("x", "must be a finite real > 0")
    y = x / pk.k
    try:
        return pk.p ** y * gamma(y) / pk.k
    except OverflowError:
        # assemble in log space; overflow here means the result really is huge
        return math.exp(y * math.log(pk.p) + math.lgamma(y) - math.log(pk.k))


def pk_gamma_limit(pk: PkParams, x: float, n: int) -> float:
    """n-th approximant (1/k) n! p^(n+1) (np)^(x/k) / prod_{j=0}^{n} p(x+jk)/k.

    Converges to ``pk_gamma_closed(pk, x)`` with O(1/n) error.  Evaluated in
    log space: the raw numerator and denominator overflow for n beyond a few
    hundred.
    """
    if not (math.isfinite(x) and x > 0):
        raise DomainError("x", "must be a finite real > 0")
    if n < 1:
        raise DomainError("n", "must be >= 1")
    p, k = pk.p, pk.k
    j = np.arange(n + 1, dtype=np.float64)
    log_denominator = float(np.log(p * (x + j * k) / k).sum())
    log_numerator = (math.lgamma(n + 1) + (n + 1) * math.log(p)
                     + (x / k) * math.log(n * p))
    return math.exp(log_numerator - math.log(k) - log_denominator)


def gamma_euler_product(z: float, M: int) -> float:
    """Truncated Euler product (1/z) prod_{m=1}^{M} (1+1/m)^z (1+z/m)^(-1).

    Converges to gamma(z) with O(1/M) error.  The per-factor ratio form keeps
    every partial product O(1) and makes z = 1 exact (each factor telescopes
    to 1).
    """
    if not math.isfinite(z):
        raise DomainError("z", "must be finite")
    if _is_nonpositive_integer(z):
        raise PoleError(z)
    if M < 1:
        raise DomainError("M", "must be >= 1")
    m = np.arange(1, M + 1, dtype=np.float64)
    factors = (1.0 + 1.0 / m) ** z / (1.0 + z / m)
    return float(factors.prod()) / z


def gauss_multiplication(alpha: float, r: int, n: int) -> float:
    """(alpha)_{r*n} computed through the split
    r^(r*n) * prod_{j=0}^{r-1} ((alpha + j)/r)_n."""
    if r < 1:
        raise DomainError("r", "must be >= 1")
    if n < 0:
        raise DomainError("n", "must be >= 0")
    out = float(r) ** (r * n)
    for j in range(r):
        out *= pochhammer((alpha + j) / r, n)
    return out
