"""Pure-Python fallback for the compiled quadrature kernel.

Node ordering, truncation rules, and compensated summation mirror
``fourgamma._kernels`` exactly so both backends are interchangeable; the
compiled version is just faster.  Keep the two implementations in sync.
"""

from __future__ import annotations

import math

_INF = math.inf


def de_quad_fourgamma(x: float, delta: float, a: float, rho_abs: float,
                      b: float, neg_branch: bool, v0: float,
                      target_rel: float, max_nodes: int,
                      h0: float = 0.5, max_levels: int = 12):
    """Level-doubling trapezoid sums of the log-substituted integrand.

    With t = exp(v) the integral becomes  integral exp(E(v)) dv  where
    E(v) = x*v - exp(delta*v)/a - exp(-+rho*v)/b decays double-exponentially
    on at least one side, so the plain trapezoid rule on a v-grid centred at
    the exponent's stationary point v0 converges spectrally as the step
    halves.  Sums are shifted by E(v0) so the largest node value is 1.

    Returns ``(value, abs_error_estimate, nodes_used, levels, deltas,
    converged)``; ``deltas`` lists |T_level - T_previous| per refinement.
    """
    exp = math.exp
    inv_a = 1.0 / a
    inv_b = 1.0 / b

    def exponent(v: float) -> float:
        if neg_branch:
            second = exp(rho_abs * v)
        else:
            second = exp(-rho_abs * v)
        return x * v - exp(delta * v) * inv_a - second * inv_b

    e0 = exponent(v0)
    cut_rel = min(0.01 * target_rel, 1e-13)

    total_nodes = 0
    prev = None
    last_full = None
    err_shifted = _INF
    deltas: list[float] = []
    converged = False
    levels = 0

    for level in range(max_levels):
        h = h0 / (1 << level)
        budget = max_nodes - total_nodes
        if budget <= 0:
            break
        levels = level + 1
        s = exp(exponent(v0) - e0)  # centre node, == 1.0
        c = 0.0
        nodes = 1
        hit_cap = False
        for direction in (1.0, -1.0):
            k = 1
            while True:
                if nodes >= budget:
                    hit_cap = True
                    break
                t = exp(exponent(v0 + direction * k * h) - e0)
                nodes += 1
                # Kahan-compensated add (terms are all positive)
                y = t - c
                tmp = s + y
                c = (tmp - s) - y
                s = tmp
                if t <= cut_rel * s:
                    break
                k += 1
            if hit_cap:
                break
        total_nodes += nodes
        if hit_cap:
            break
        trap = h * s
        if prev is not None:
            d = abs(trap - prev)
            deltas.append(d)
            err_shifted = d
            if d <= target_rel * abs(trap):
                last_full = trap
                converged = True
                break
        prev = trap
        last_full = trap

    if last_full is None:  # budget died inside the very first level
        last_full = 0.0
    try:
        scale = exp(e0)
    except OverflowError:
        scale = _INF
    value = scale * last_full
    if converged:
        err = scale * err_shifted
    elif math.isfinite(err_shifted):
        err = scale * err_shifted
    else:
        err = abs(value)  # no two levels completed: order-one uncertainty
    return value, err, total_nodes, levels, deltas, converged
