"""Resummed gamma-series evaluation with pole detection, cancellation
monitoring, and divergence handling.

Main branch (rho > 0): expanding exp(-t^-rho / b) term by term gives the
gamma series

    S1 = sum_n ((-1)^n / (n! b^n)) * (a^((x - rho n)/delta) / delta)
         * Gamma((x - rho n)/delta)

with gamma at negative non-integer arguments taken by reflection.  S1 alone
is only the asymptotic (large b^(1/rho)) part of the integral: the t -> 0
cutoff contributes a second, structurally identical series - exactly S1 of
the dual parameters (rho, b; delta, a) at -x, mirroring the t -> 1/t symmetry
of the integral.  The full resummation

    F(x) = S1(delta, a; rho, b)(x) + S1(rho, b; delta, a)(-x)

agrees with quadrature to working precision wherever both families are
pole-free (this equality is exercised, not assumed, by the validation suite).
The two families share one pole set: (x - rho n)/delta hits a nonpositive
integer for some n exactly when (-x - delta m)/rho does for some m.

Negative branch (rho < 0): a single family with arguments (x + |rho| n)/delta;
it converges for |rho| < delta (and for |rho| = delta when a < b), otherwise
terms eventually grow and the sum is truncated at its smallest term.
"""

from __future__ import annotations

import math

from .core import (Branch, BudgetExceeded, EvalOptions, EvalResult,
                   FourGammaParams, Method, PoleError, SeriesDiagnostics,
                   SeriesInapplicable, validate_params)
from .gamma_basics import gamma_sign

POLE_TOL = 1e-9
NEAR_POLE_TOL = 1e-6
#: significant decimal digits of the working precision (IEEE double)
PRECISION_DIGITS = 15.95
#: consecutive below-target terms required before a family stops
_STREAK = 3
#: consecutive growing ratios that flag the asymptotic regime (rho < 0)
_GROWTH_STREAK = 5

_LOG_PI = math.log(math.pi)


def _nonpositive_distance(arg: float) -> float:
    """Distance from ``arg`` to the nearest nonpositive integer."""
    nearest = round(arg)
    if nearest > 0:
        nearest = 0
    return abs(arg - nearest)


def series_term(params: FourGammaParams, x: float, n: int) -> float:
    """n-th term ((-1)^n / (n! b^n)) (a^arg / delta) Gamma(arg) with
    arg = (x - rho n)/delta; the signed rho covers both branches.

    Log-space assembly with sign tracking; negative non-integer gamma
    arguments go through the reflection formula.
    """
    if n < 0:
        raise PoleError(float("nan"), index=n)
    arg = (x - params.rho * n) / params.delta
    dist = _nonpositive_distance(arg)
    if dist <= POLE_TOL:
        raise PoleError(arg, index=n)
    log_prefix = (arg * math.log(params.a) - math.lgamma(n + 1)
                  - n * math.log(params.b) - math.log(params.delta))
    sign = -1.0 if n % 2 else 1.0
    if arg >= 0.5:
        return sign * math.exp(log_prefix + math.lgamma(arg))
    sign *= gamma_sign(arg)
    log_mag = (log_prefix + _LOG_PI - math.lgamma(1.0 - arg)
               - math.log(math.sin(math.pi * dist)))
    return sign * math.exp(log_mag)


def series_applicable(params: FourGammaParams, x: float,
                      horizon: int = 400) -> tuple[bool, int | None]:
    """Scan term indices 0..horizon for gamma-argument pole proximity.

    Returns ``(True, None)`` when every argument keeps a safe distance from
    the nonpositive integers, else ``(False, first_offending_index)``.  Used
    as the cheap pre-gate by Auto dispatch; the evaluator re-checks exactly.
    """
    for n in range(horizon + 1):
        arg = (x - params.rho * n) / params.delta
        if _nonpositive_distance(arg) <= NEAR_POLE_TOL:
            return False, n
    return True, None


def series_usable(params: FourGammaParams, x: float, horizon: int = 400) -> bool:
    """Auto-dispatch gate: pole-free on the main branch, convergent on the
    negative branch."""
    if params.rho > 0:
        return series_applicable(params, x, horizon)[0]
    r = -params.rho
    if r < params.delta:
        return True
    return r == params.delta and params.a < params.b


def cancellation_flagged(diag: SeriesDiagnostics | None) -> bool:
    """True when alternating-sum cancellation ate into the accuracy headroom
    (fewer than ~6 trustworthy digits left); Auto falls back to quadrature."""
    return diag is not None and diag.cancellation_digits > PRECISION_DIGITS - 6.0


class _Accumulator:
    """Kahan-compensated sum shared by both term families."""

    __slots__ = ("s", "c", "max_mag")

    def __init__(self):
        self.s = 0.0
        self.c = 0.0
        self.max_mag = 0.0

    def add(self, term: float):
        mag = abs(term)
        if mag > self.max_mag:
            self.max_mag = mag
        y = term - self.c
        tmp = self.s + y
        self.c = (tmp - self.s) - y
        self.s = tmp


def _term_pieces(delta: float, a: float, rho: float, b: float, x: float,
                 n: int) -> tuple[float, float, float, float]:
    """(dist, log_mag_nosin, amplification, sign) for one family term.

    ``log_mag_nosin`` is the term's log magnitude with the reflection
    1/|sin(pi*arg)| factor taken out (it is the scale on which near-pole
    terms of the two families cancel); ``amplification`` restores it.
    """
    arg = (x - rho * n) / delta
    dist = _nonpositive_distance(arg)
    log_prefix = (arg * math.log(a) - math.lgamma(n + 1) - n * math.log(b)
                  - math.log(delta))
    sign = -1.0 if n % 2 else 1.0
    if arg >= 0.5:
        return dist, log_prefix + math.lgamma(arg), 1.0, sign
    sign *= gamma_sign(arg)
    log_nosin = log_prefix + _LOG_PI - math.lgamma(1.0 - arg)
    amplification = 1.0 / max(math.sin(math.pi * min(dist, 0.5)), 1e-12)
    return dist, log_nosin, amplification, sign


def _safe_exp(log_value: float) -> float:
    if log_value > 709.0:
        return math.inf
    if log_value < -745.0:
        return 0.0
    return math.exp(log_value)


def _peek_magnitude(delta, a, rho, b, x, n) -> float:
    dist, log_nosin, amp, _ = _term_pieces(delta, a, rho, b, x, n)
    return _safe_exp(log_nosin) * amp


def _sum_family(delta: float, a: float, rho: float, b: float, x: float,
                opts: EvalOptions, acc: _Accumulator, family: str,
                work_left: int) -> tuple[float, int]:
    """Sum one term family into ``acc``; returns (first_omitted, terms_used).

    Terms whose sin-free magnitude is negligible against the running total
    are skipped without a pole check: at (near-)pole indices the two families
    carry equal and opposite spikes whose net contribution is on the sin-free
    scale, so a negligible sin-free magnitude means a negligible net term.
    Non-negligible terms within NEAR_POLE_TOL of a pole abort the evaluation.
    """
    target = opts.target_rel_error
    streak = 0
    n = 0
    while n < work_left:
        dist, log_nosin, amp, sign = _term_pieces(delta, a, rho, b, x, n)
        scale = abs(acc.s)
        negligible_cut = 1e-6 * target * scale
        mag_nosin = _safe_exp(log_nosin)
        if mag_nosin <= negligible_cut:
            streak += 1
        else:
            if dist <= POLE_TOL:
                raise SeriesInapplicable(
                    f"{family} family gamma-argument pole at term {n}",
                    pole_index=n)
            if dist <= NEAR_POLE_TOL:
                raise SeriesInapplicable(
                    f"{family} family argument within {dist:.1e} of a pole at "
                    f"term {n}: reflection would lose precision", pole_index=n)
            term = sign * mag_nosin * amp
            acc.add(term)
            if abs(term) <= target * abs(acc.s):
                streak += 1
            else:
                streak = 0
        n += 1
        if streak >= _STREAK:
            first_omitted = _peek_magnitude(delta, a, rho, b, x, n)
            if first_omitted <= target * abs(acc.s):
                return first_omitted, n
            streak = 0  # a later term still matters; keep summing
    raise BudgetExceeded(
        f"{family} family used {n} terms without meeting the stopping rule",
        partial=EvalResult(acc.s, acc.max_mag, Method.SERIES, n))


def _diagnostics(acc: _Accumulator, n_terms: int,
                 diverging: bool = False) -> SeriesDiagnostics:
    if acc.s != 0.0 and acc.max_mag > 0.0:
        cancellation = max(0.0, math.log10(acc.max_mag / abs(acc.s)))
    else:
        cancellation = math.inf if acc.max_mag > 0.0 else 0.0
    return SeriesDiagnostics(
        n_terms=n_terms,
        max_term_magnitude=acc.max_mag,
        cancellation_digits=cancellation,
        pole_hits=(),
        diverging=diverging,
    )


def _series_negative_branch(params: FourGammaParams, x: float,
                            opts: EvalOptions) -> EvalResult:
    """Single ascending family; monitors the term ratio and, once it exceeds
    one for _GROWTH_STREAK consecutive steps (asymptotic regime), returns the
    sum truncated at its smallest term."""
    target = opts.target_rel_error
    acc = _Accumulator()
    mags: list[float] = []
    partials: list[float] = []
    streak = 0
    growth = 0
    n = 0
    while n < opts.max_work:
        dist, log_mag, amp, sign = _term_pieces(
            params.delta, params.a, params.rho, params.b, x, n)
        if dist <= POLE_TOL:  # unreachable for x > 0; kept for safety
            raise SeriesInapplicable(f"pole at term {n}", pole_index=n)
        mag = _safe_exp(log_mag) * amp
        if math.isinf(mag):
            growth = _GROWTH_STREAK  # overflow: deep in the divergent regime
        else:
            acc.add(sign * mag)
            mags.append(mag)
            partials.append(acc.s)
            if n >= 1:
                growth = growth + 1 if mag > mags[n - 1] else 0
        if growth >= _GROWTH_STREAK:
            n_min = mags.index(min(mags))
            value = partials[n_min]
            first_omitted = mags[n_min + 1]
            diag = _diagnostics(acc, n + 1, diverging=True)
            diag = SeriesDiagnostics(diag.n_terms, diag.max_term_magnitude,
                                     diag.cancellation_digits, (), True)
            return EvalResult(value, first_omitted, Method.SERIES, n + 1, diag)
        if mag <= target * abs(acc.s):
            streak += 1
            if streak >= _STREAK:
                first_omitted = _peek_magnitude(
                    params.delta, params.a, params.rho, params.b, x, n + 1)
                if first_omitted <= target * abs(acc.s):
                    err = first_omitted
                    return EvalResult(acc.s, err, Method.SERIES, n + 1,
                                      _diagnostics(acc, n + 1))
                streak = 0
        else:
            streak = 0
        n += 1
    raise BudgetExceeded(
        f"series used {n} terms without converging",
        partial=EvalResult(acc.s, mags[-1] if mags else math.inf,
                           Method.SERIES, n, _diagnostics(acc, max(n, 1))))


def four_gamma_series(params: FourGammaParams, x: float,
                      opts: EvalOptions | None = None) -> EvalResult:
    """Evaluate F(x) by resummed gamma series (see the module notes).

    Raises ``SeriesInapplicable`` when a non-negligible term sits on or near
    a pole, and ``BudgetExceeded`` when the stopping rule is not met within
    ``opts.max_work`` terms.
    """
    if opts is None:
        opts = EvalOptions()
    branch = validate_params(params, x)
    if branch is Branch.NEGATIVE:
        return _series_negative_branch(params, x, opts)

    acc = _Accumulator()
    err1, used1 = _sum_family(params.delta, params.a, params.rho, params.b,
                              x, opts, acc, "primary", opts.max_work)
    err2, used2 = _sum_family(params.rho, params.b, params.delta, params.a,
                              -x, opts, acc, "dual", opts.max_work - used1)
    work = used1 + used2
    err = err1 + err2 + 4e-16 * acc.max_mag  # omitted tails + cancellation floor
    return EvalResult(acc.s, err, Method.SERIES, work, _diagnostics(acc, work))
