"""Closed-form special cases, canonicalizing parameter rescalings, and the
three-term functional identity used as a residual checker.

The rescalings come from substituting t -> t^(delta/k) and pulling scale
factors out of the exponent; each returns a ``ReductionStep`` whose contract
is  F(params)(x) = prefactor * F(new_params)(new_x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .core import (Branch, DomainError, EvalResult, FourGammaParams, Method,
                   validate_params)
from .gamma_basics import gamma


class ReductionRule(Enum):
    EXPONENT_RESCALE = "exponent-rescale"
    FULL_RESCALE = "full-rescale"
    SCALE_ONLY = "scale-only"


@dataclass(frozen=True)
class ReductionStep:
    prefactor: float
    new_params: FourGammaParams
    new_x: float
    rule: ReductionRule


def _require_main_branch(params: FourGammaParams, x: float):
    if validate_params(params, x) is not Branch.MAIN:
        raise DomainError("rho", "rescalings are defined on the rho > 0 branch")


def _check_positive(name: str, value: float):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise DomainError(name, "must be a finite real > 0")


def reduce_exponent(params: FourGammaParams, x: float, k: float) -> ReductionStep:
    """Rescale the first exponent to k:
    F(delta,a;rho,b)(x) = (k/delta) F(k,a; k rho/delta, b)(k x/delta)."""
    _require_main_branch(params, x)
    _check_positive("k", k)
    new = FourGammaParams(k, params.a, k * params.rho / params.delta, params.b)
    return ReductionStep(k / params.delta, new, k * x / params.delta,
                         ReductionRule.EXPONENT_RESCALE)


def reduce_scale(params: FourGammaParams, x: float, new_a: float) -> ReductionStep:
    """Move the first scale to new_a:
    F(delta,a;rho,b)(x) = (a/new_a)^(x/delta)
                          F(delta,new_a; rho, b (a/new_a)^(rho/delta))(x)."""
    _require_main_branch(params, x)
    _check_positive("new_a", new_a)
    ratio = params.a / new_a
    new = FourGammaParams(params.delta, new_a, params.rho,
                          params.b * ratio ** (params.rho / params.delta))
    return ReductionStep(ratio ** (x / params.delta), new, x,
                         ReductionRule.SCALE_ONLY)


def reduce_full(params: FourGammaParams, x: float, k: float,
                new_a: float) -> ReductionStep:
    """Exponent rescale followed by scale move, composed exactly; the combined
    prefactor equals (k/delta) (a/new_a)^(x/delta)."""
    first = reduce_exponent(params, x, k)
    second = reduce_scale(first.new_params, first.new_x, new_a)
    return ReductionStep(first.prefactor * second.prefactor,
                         second.new_params, second.new_x,
                         ReductionRule.FULL_RESCALE)


def closed_form(params: FourGammaParams, x: float) -> EvalResult | None:
    """Exact value when one applies, else None.

    Covered: rho < 0 with |rho| = delta, where the two exponentials merge
    into exp(-t^delta (1/a + 1/b)) and
    F = (1/delta) (a b/(a+b))^(x/delta) Gamma(x/delta).
    """
    branch = validate_params(params, x)
    if branch is Branch.NEGATIVE and math.isclose(
            -params.rho, params.delta, rel_tol=1e-12, abs_tol=0.0):
        y = x / params.delta
        value = (params.a * params.b / (params.a + params.b)) ** y \
            * gamma(y) / params.delta
        return EvalResult(value, 5e-16 * abs(value), Method.CLOSED_FORM, 1)
    return None


def limit_rho_zero(delta: float, a: float, b: float, x: float) -> float:
    """rho -> 0 limit  exp(-1/b) (a^(x/delta)/delta) Gamma(x/delta).

    rho = 0 is outside the evaluators' domain, so this limit form is exposed
    separately; the continuity check against quadrature at tiny rho lives in
    the validation suite.
    """
    _check_positive("delta", delta)
    _check_positive("a", a)
    _check_positive("b", b)
    _check_positive("x", x)
    y = x / delta
    return math.exp(-1.0 / b) * a ** y * gamma(y) / delta


def fundamental_residual(params: FourGammaParams, x: float,
                         evaluator: Callable[[FourGammaParams, float],
                                             EvalResult]) -> float:
    """Normalized residual of the three-term identity
    x F(x) = (delta/a) F(x+delta) - (rho/b) F(x-rho)  (rho > 0 branch).

    Integration by parts of d/dt[t^x] against the integrand yields the
    identity exactly, so the residual of a correct evaluator is at the level
    of its error estimates.  Normalization is by the largest term magnitude,
    making pass/fail thresholds scale-free.
    """
    _require_main_branch(params, x)
    f_mid = evaluator(params, x).value
    f_up = evaluator(params, x + params.delta).value
    f_down = evaluator(params, x - params.rho).value
    t_mid = x * f_mid
    t_up = (params.delta / params.a) * f_up
    t_down = (params.rho / params.b) * f_down
    scale = max(abs(t_mid), abs(t_up))
    if scale == 0.0:
        scale = 1.0
    return (t_mid - t_up + t_down) / scale
