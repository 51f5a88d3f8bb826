# cython: language_level=3
# cython: boundscheck=False
# cython: cdivision=True
"""Compiled quadrature kernel: level-doubling trapezoid sums of the
log-substituted four-parameter integrand.

Mirrors ``fourgamma._pykernels.de_quad_fourgamma`` line for line; see there
for the algorithm notes.  Keep the two implementations in sync.
"""

from libc.math cimport exp, fabs, isfinite, INFINITY


cdef inline double _exponent(double v, double x, double delta, double inv_a,
                             double rho_abs, double inv_b,
                             bint neg_branch) noexcept nogil:
    cdef double second
    if neg_branch:
        second = exp(rho_abs * v)
    else:
        second = exp(-rho_abs * v)
    return x * v - exp(delta * v) * inv_a - second * inv_b


def de_quad_fourgamma(double x, double delta, double a, double rho_abs,
                      double b, bint neg_branch, double v0,
                      double target_rel, long max_nodes,
                      double h0=0.5, int max_levels=12):
    cdef double inv_a = 1.0 / a
    cdef double inv_b = 1.0 / b
    cdef double e0 = _exponent(v0, x, delta, inv_a, rho_abs, inv_b, neg_branch)
    cdef double cut_rel = 0.01 * target_rel
    if cut_rel > 1e-13:
        cut_rel = 1e-13

    cdef long total_nodes = 0
    cdef double prev = 0.0
    cdef bint have_prev = False
    cdef double last_full = 0.0
    cdef bint have_full = False
    cdef double err_shifted = INFINITY
    cdef bint converged = False
    cdef int levels = 0

    cdef int level, sign
    cdef long budget, nodes, k
    cdef double h, s, c, t, y, tmp, d, trap, direction
    cdef bint hit_cap

    deltas = []
    for level in range(max_levels):
        h = h0 / (<long>1 << level)
        budget = max_nodes - total_nodes
        if budget <= 0:
            break
        levels = level + 1
        s = exp(_exponent(v0, x, delta, inv_a, rho_abs, inv_b, neg_branch) - e0)
        c = 0.0
        nodes = 1
        hit_cap = False
        for sign in range(2):
            direction = 1.0 if sign == 0 else -1.0
            k = 1
            while True:
                if nodes >= budget:
                    hit_cap = True
                    break
                t = exp(_exponent(v0 + direction * k * h, x, delta, inv_a,
                                  rho_abs, inv_b, neg_branch) - e0)
                nodes += 1
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
        if have_prev:
            d = fabs(trap - prev)
            deltas.append(d)
            err_shifted = d
            if d <= target_rel * fabs(trap):
                last_full = trap
                have_full = True
                converged = True
                break
        prev = trap
        have_prev = True
        last_full = trap
        have_full = True

    if not have_full:
        last_full = 0.0
    cdef double scale = exp(e0)   # IEEE: overflows to inf, no exception
    cdef double value = scale * last_full
    cdef double err
    if isfinite(err_shifted):
        err = scale * err_shifted
    else:
        err = fabs(value)
    return value, err, total_nodes, levels, deltas, converged
