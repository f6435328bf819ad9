"""Pure numpy implementation of the routines in ``_kernels.pyx``.

Used when the compiled extension is unavailable (or when
``FRACBARENBLATT_PURE_PYTHON=1``). Same grid-free units and results to
rounding.
"""

import math

import numpy as np

from .specfun import MAX_ITER, CF_EPS, ConvergenceError, beta

_TINY = 1e-300


def _betacf(a, b, x):
    """Vectorized Lentz continued fraction for arrays ``x`` and scalar a, b."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    d = np.where(np.abs(d) < _TINY, _TINY, d)
    d = 1.0 / d
    h = d.copy()
    active = np.ones(x.shape, dtype=bool)
    for it in range(1, MAX_ITER + 1):
        m2 = 2 * it
        xa = x[active]
        ca, da = c[active], d[active]
        aa = it * (b - it) * xa / ((qam + m2) * (a + m2))
        da = 1.0 + aa * da
        da = np.where(np.abs(da) < _TINY, _TINY, da)
        ca = 1.0 + aa / ca
        ca = np.where(np.abs(ca) < _TINY, _TINY, ca)
        da = 1.0 / da
        ha = h[active] * da * ca
        aa = -(a + it) * (qab + it) * xa / ((qap + m2) * (a + m2))
        da = 1.0 + aa * da
        da = np.where(np.abs(da) < _TINY, _TINY, da)
        ca = 1.0 + aa / ca
        ca = np.where(np.abs(ca) < _TINY, _TINY, ca)
        da = 1.0 / da
        delta = da * ca
        ha *= delta
        h[active], c[active], d[active] = ha, ca, da
        done = np.abs(delta - 1.0) < CF_EPS
        idx = np.flatnonzero(active)
        active[idx[done]] = False
        if not active.any():
            return h
    raise ConvergenceError("incomplete beta continued fraction did not converge")


def _inc_lower(y, a, b, full):
    out = np.empty_like(y)
    lo = y < (a + 1.0) / (a + b + 2.0)
    edge0, edge1 = y <= 0.0, y >= 1.0
    direct = lo & ~edge0
    refl = ~lo & ~edge1
    if direct.any():
        yd = y[direct]
        out[direct] = np.exp(a * np.log(yd) + b * np.log1p(-yd)) / a * _betacf(a, b, yd)
    if refl.any():
        yr = y[refl]
        out[refl] = full - np.exp(b * np.log1p(-yr) + a * np.log(yr)) / b * _betacf(b, a, 1.0 - yr)
    out[edge0] = 0.0
    out[edge1] = full
    return out


class _Consts:
    def __init__(self, alpha, m):
        self.b = 1.0 - alpha
        self.B = alpha / (2.0 + m)
        self.power = (2.0 + m) / alpha
        self.beta_minus = beta(1.0 - self.B, self.b)
        self.beta_plus = beta(1.0 + self.B, self.b)


def _g(q, j, k):
    k = np.asarray(k, dtype=np.float64)
    if j == 0.0:
        return 0.5 * (q.b + q.B) * k * k * q.beta_plus
    with np.errstate(divide="ignore"):
        lx = q.power * np.log(j / k)
    x = np.exp(lx)
    y = -np.expm1(lx)
    i_minus = np.full_like(k, q.beta_minus)
    i_plus = np.full_like(k, q.beta_plus)
    yb = np.ones_like(k)
    live = x > 0.0
    if live.any():
        yl = y[live]
        i_minus[live] = _inc_lower(yl, q.b, 1.0 - q.B, q.beta_minus)
        i_plus[live] = _inc_lower(yl, q.b, 1.0 + q.B, q.beta_plus)
        yb[live] = yl**q.b
    g = (0.5 * (q.b - q.B) * j * j * i_minus - j * k * yb
         + 0.5 * (q.b + q.B) * k * k * i_plus)
    return np.where(k == j, 0.0, g)


def antiderivative_row(alpha, m, j, k):
    return _g(_Consts(alpha, m), float(j), k)


def march(alpha, m, n_steps, u1, scale):
    q = _Consts(alpha, m)
    N = n_steps
    u = np.zeros(N + 1)
    if N >= 1:
        u[1] = u1
    inv_power = 1.0 / (m + 1.0)
    ks = float(N) - np.arange(1, N + 1, dtype=np.float64)  # k for i = 1..N
    for n in range(2, N + 1):
        g = _g(q, float(N - n), ks[:n])  # i = 1..n
        acc = float(np.dot(g[:-1] - g[1:], u[1:n]))
        if not acc >= 0.0 or math.isnan(acc):
            raise ArithmeticError(
                f"negative or undefined weighted sum at node {n}; weights are corrupt")
        u[n] = (scale * acc) ** inv_power
    return u
