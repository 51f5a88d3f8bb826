"""Domain types, parameter validation, and the method-dispatching evaluator.

The central object is the four-parameter gamma function

    F(x) = integral_0^inf t^(x-1) exp(-t^delta / a - t^(-rho) / b) dt

for ``rho > 0`` (the main branch; the second exponential kills the integrand
at t -> 0, so every real x is admissible).  For ``rho < 0`` the second term is
``exp(-t^|rho| / b)`` and the integrand behaves like ``t^(x-1)`` at the
origin, so ``x > 0`` is required.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class Branch(Enum):
    """Sign branch of the second exponential term."""

    MAIN = "main"          # rho > 0: exp(-t^-rho / b)
    NEGATIVE = "negative"  # rho < 0: exp(-t^|rho| / b)


class Method(Enum):
    AUTO = "auto"
    QUADRATURE = "quadrature"
    SERIES = "series"
    HYPERGEOMETRIC = "hypergeometric"
    CLOSED_FORM = "closed-form"


class FourGammaError(Exception):
    """Base class for all evaluator errors."""


class DomainError(FourGammaError):
    """An input violates its domain; ``field`` names the offender."""

    def __init__(self, field: str, detail: str):
        self.field = field
        self.detail = detail
        super().__init__(f"{field}: {detail}")


class PoleError(FourGammaError):
    """A gamma evaluation landed on a nonpositive-integer argument."""

    def __init__(self, argument: float, index: int | None = None):
        self.argument = argument
        self.index = index
        where = f" (term {index})" if index is not None else ""
        super().__init__(f"gamma pole at argument {argument!r}{where}")


class BudgetExceeded(FourGammaError):
    """Work limit hit before the target accuracy; carries the partial result."""

    def __init__(self, message: str, partial: "EvalResult | None" = None):
        self.partial = partial
        super().__init__(message)


class SeriesInapplicable(FourGammaError):
    """The series hits (or grazes) a pole before its stopping rule fires."""

    def __init__(self, message: str, pole_index: int | None = None):
        self.pole_index = pole_index
        super().__init__(message)


class NotApplicable(FourGammaError):
    """The requested method does not cover these parameters."""


class AsymptoticDominated(FourGammaError):
    """Optimal truncation cannot reach the requested accuracy."""

    def __init__(self, message: str, smallest_term: float):
        self.smallest_term = smallest_term
        super().__init__(message)


class NonFiniteIntegrand(FourGammaError):
    """The integrand returned a non-finite value at a quadrature node."""

    def __init__(self, t: float, value: float):
        self.t = t
        self.value = value
        super().__init__(f"integrand returned {value!r} at t={t!r}")


@dataclass(frozen=True)
class FourGammaParams:
    """Parameter tuple (delta, a, rho, b); ``rho`` carries the branch sign."""

    delta: float
    a: float
    rho: float
    b: float


@dataclass(frozen=True)
class SeriesDiagnostics:
    """Bookkeeping from a resummed-series evaluation."""

    n_terms: int
    max_term_magnitude: float
    cancellation_digits: float
    pole_hits: tuple[int, ...] = ()
    diverging: bool = False


@dataclass(frozen=True)
class EvalOptions:
    """Accuracy target, work budget, and method selection for one evaluation."""

    target_rel_error: float = 1e-10
    max_work: int = 1_000_000
    method: Method = Method.AUTO

    def __post_init__(self):
        if not (0.0 < self.target_rel_error <= 0.1):
            raise DomainError("target_rel_error", "must lie in (0, 0.1]")
        if self.max_work < 16:
            raise DomainError("max_work", "must be >= 16")


@dataclass(frozen=True)
class EvalResult:
    """Universal evaluator return: value, heuristic error estimate, provenance.

    ``abs_error_estimate`` is an estimate, not a guaranteed bound.
    """

    value: float
    abs_error_estimate: float
    method_used: Method
    work_used: int
    diagnostics: SeriesDiagnostics | None = None

    def to_dict(self) -> dict:
        diag = None
        if self.diagnostics is not None:
            diag = {
                "n_terms": self.diagnostics.n_terms,
                "max_term_magnitude": self.diagnostics.max_term_magnitude,
                "cancellation_digits": self.diagnostics.cancellation_digits,
                "pole_hits": list(self.diagnostics.pole_hits),
                "diverging": self.diagnostics.diverging,
            }
        return {
            "value": self.value,
            "abs_error_estimate": self.abs_error_estimate,
            "method_used": self.method_used.value,
            "work_used": self.work_used,
            "diagnostics": diag,
        }


def validate_params(params: FourGammaParams, x: float) -> Branch:
    """Check all parameter/argument invariants and identify the rho branch.

    Raises ``DomainError`` naming the violated field; returns the branch on
    success.
    """
    for name in ("delta", "a", "rho", "b"):
        value = getattr(params, name)
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            raise DomainError(name, "must be a finite real number")
    if params.delta <= 0:
        raise DomainError("delta", "must be > 0")
    if params.a <= 0:
        raise DomainError("a", "must be > 0")
    if params.b <= 0:
        raise DomainError("b", "must be > 0")
    if params.rho == 0:
        raise DomainError(
            "rho", "must be nonzero; the rho -> 0 limit is exposed only as a "
            "closed form (identities.limit_rho_zero)")
    if not isinstance(x, (int, float)) or not math.isfinite(x):
        raise DomainError("x", "must be a finite real number")
    if params.rho < 0 and x <= 0:
        raise DomainError(
            "x", "must be > 0 when rho < 0 (integrand ~ t^(x-1) at t -> 0)")
    return Branch.MAIN if params.rho > 0 else Branch.NEGATIVE


#: scan depth used by the Auto policy when probing series applicability
AUTO_SERIES_HORIZON = 400


def four_gamma(params: FourGammaParams, x: float,
               opts: EvalOptions | None = None) -> EvalResult:
    """Evaluate F(x) by the requested method, or by the Auto policy.

    Auto tries the cheapest route first: an exact closed form when one
    applies, then the resummed series when it is pole-free and convergent,
    and falls back to adaptive quadrature otherwise (also when the series
    reports heavy cancellation or divergence).
    """
    if opts is None:
        opts = EvalOptions()
    validate_params(params, x)

    # deferred imports: the evaluator modules import the types above
    from . import hypergeom, identities, quadrature, series

    method = opts.method
    if method is Method.QUADRATURE:
        return quadrature.four_gamma_quadrature(params, x, opts)
    if method is Method.SERIES:
        return series.four_gamma_series(params, x, opts)
    if method is Method.HYPERGEOMETRIC:
        return hypergeom.four_gamma_hypergeometric(params, x, opts)
    if method is Method.CLOSED_FORM:
        result = identities.closed_form(params, x)
        if result is None:
            raise NotApplicable("no closed form applies to these parameters")
        return result

    result = identities.closed_form(params, x)
    if result is not None:
        return result
    if series.series_usable(params, x, AUTO_SERIES_HORIZON):
        try:
            candidate = series.four_gamma_series(params, x, opts)
        except (SeriesInapplicable, BudgetExceeded, PoleError):
            candidate = None
        if (candidate is not None
                and not candidate.diagnostics.diverging
                and not series.cancellation_flagged(candidate.diagnostics)):
            return candidate
    return quadrature.four_gamma_quadrature(params, x, opts)
