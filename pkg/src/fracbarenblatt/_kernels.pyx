# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: kernel antiderivative rows and the explicit march.

Grid-free units are used throughout: z = -j, tau = -k with h = 1, so the
antiderivative of the kernel over [tau, z] is g(j, k) and the physical value
is h**2 * g(j, k).
"""

from libc.math cimport exp, log, log1p, expm1, pow, fabs, lgamma, NAN, isnan

import numpy as np

DEF MAX_ITER = 300
DEF CF_EPS = 1e-15
DEF TINY = 1e-300


cdef double _betacf(double a, double b, double x) nogil:
    cdef double qab = a + b, qap = a + 1.0, qam = a - 1.0
    cdef double c = 1.0, d, h, aa, delta
    cdef int it, m2
    d = 1.0 - qab * x / qap
    if fabs(d) < TINY:
        d = TINY
    d = 1.0 / d
    h = d
    for it in range(1, MAX_ITER + 1):
        m2 = 2 * it
        aa = it * (b - it) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if fabs(d) < TINY:
            d = TINY
        c = 1.0 + aa / c
        if fabs(c) < TINY:
            c = TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + it) * (qab + it) * x / ((qap + m2) * (a + m2))
        d = 1.0 + aa * d
        if fabs(d) < TINY:
            d = TINY
        c = 1.0 + aa / c
        if fabs(c) < TINY:
            c = TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if fabs(delta - 1.0) < CF_EPS:
            return h
    return NAN


cdef double _inc_lower(double y, double a, double b, double full) nogil:
    """Non-regularized lower incomplete beta; ``full`` is B(a, b)."""
    cdef double cf
    if y <= 0.0:
        return 0.0
    if y >= 1.0:
        return full
    if y < (a + 1.0) / (a + b + 2.0):
        cf = _betacf(a, b, y)
        return exp(a * log(y) + b * log1p(-y)) / a * cf
    cf = _betacf(b, a, 1.0 - y)
    return full - exp(b * log1p(-y) + a * log(y)) / b * cf


cdef struct Consts:
    double b
    double B
    double power
    double beta_minus
    double beta_plus


cdef Consts _consts(double alpha, double m):
    cdef Consts k
    k.b = 1.0 - alpha
    k.B = alpha / (2.0 + m)
    k.power = (2.0 + m) / alpha
    k.beta_minus = exp(lgamma(1.0 - k.B) + lgamma(k.b) - lgamma(1.0 - k.B + k.b))
    k.beta_plus = exp(lgamma(1.0 + k.B) + lgamma(k.b) - lgamma(1.0 + k.B + k.b))
    return k


cdef double _g(Consts* q, double j, double k) nogil:
    cdef double lx, x, y, i_minus, i_plus, yb
    if j == k:
        return 0.0
    if j == 0.0:
        return 0.5 * (q.b + q.B) * k * k * q.beta_plus
    lx = q.power * log(j / k)
    x = exp(lx)
    if x == 0.0:
        i_minus = q.beta_minus
        i_plus = q.beta_plus
        yb = 1.0
    else:
        y = -expm1(lx)
        i_minus = _inc_lower(y, q.b, 1.0 - q.B, q.beta_minus)
        i_plus = _inc_lower(y, q.b, 1.0 + q.B, q.beta_plus)
        yb = pow(y, q.b)
    return (0.5 * (q.b - q.B) * j * j * i_minus - j * k * yb
            + 0.5 * (q.b + q.B) * k * k * i_plus)


def antiderivative_row(double alpha, double m, double j, k):
    """g(j, k) for every entry of ``k`` (each ``k >= j >= 0``)."""
    cdef Consts q = _consts(alpha, m)
    cdef double[::1] kk = np.ascontiguousarray(k, dtype=np.float64)
    out = np.empty(kk.shape[0])
    cdef double[::1] o = out
    cdef Py_ssize_t i
    cdef double v
    for i in range(kk.shape[0]):
        v = _g(&q, j, kk[i])
        if isnan(v):
            raise ArithmeticError("incomplete beta continued fraction did not converge")
        o[i] = v
    return out


def march(double alpha, double m, Py_ssize_t n_steps, double u1, double scale):
    """Run U_n = (scale * sum_i [g(j, N-i) - g(j, N-i-1)] U_i)^(1/(m+1)).

    ``scale`` carries (m+1) h^2 / Gamma(1-alpha); ``u1`` is the seed value.
    Returns the N+1 nodal values with U_0 = 0.
    """
    cdef Consts q = _consts(alpha, m)
    out = np.zeros(n_steps + 1)
    cdef double[::1] u = out
    cdef double inv_power = 1.0 / (m + 1.0)
    cdef Py_ssize_t n, i
    cdef double j, acc, g_hi, g_lo, N = <double>n_steps
    cdef bint failed = False
    if n_steps >= 1:
        u[1] = u1
    with nogil:
        for n in range(2, n_steps + 1):
            j = N - n
            acc = 0.0
            g_hi = _g(&q, j, N - 1.0)
            for i in range(1, n):
                g_lo = _g(&q, j, N - i - 1.0)
                acc += (g_hi - g_lo) * u[i]
                g_hi = g_lo
            if isnan(acc) or acc < 0.0:
                failed = True
                break
            u[n] = pow(scale * acc, inv_power)
    if failed:
        raise ArithmeticError(
            f"negative or undefined weighted sum at node {n}; weights are corrupt")
    return out
