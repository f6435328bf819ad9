"""The Volterra kernel K(z, tau) of the self-similar fractional PME.

The kernel is

    K(z, tau) = int_{x}^{1} [(A+B)(z - tau s^B) - B tau s^B] (1-s)^(-alpha) ds,
    x = (z/tau)^((2+m)/alpha),

defined for ``tau <= z <= 0``. Besides the closed form in terms of (incomplete)
beta functions this module provides an independent quadrature evaluation,
the z-derivative, two-sided bounds, the near-diagonal asymptote and the
exact antiderivative in ``tau`` used for the product-integration weights.
"""

import math
from dataclasses import dataclass, field

from scipy import integrate

from .specfun import beta, incomplete_beta_lower

__all__ = [
    "FractionalParams",
    "kernel_exact",
    "kernel_quadrature",
    "kernel_z_derivative",
    "kernel_lower_bound",
    "kernel_upper_bound",
    "kernel_asymptotic_near_boundary",
    "kernel_antiderivative",
]


@dataclass(frozen=True)
class FractionalParams:
    """Caputo order ``alpha`` in (0, 1) and diffusivity exponent ``m > 0``.

    ``A`` and ``B`` are the coefficients of the self-similar profile equation;
    ``B`` doubles as the similarity exponent alpha/(2+m).
    """

    alpha: float
    m: float
    A: float = field(init=False)
    B: float = field(init=False)

    def __post_init__(self):
        alpha, m = float(self.alpha), float(self.m)
        if not 0.0 < alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if not m > 0.0:
            raise ValueError(f"m must be positive, got {self.m!r}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "A", 1.0 - alpha - alpha / (2.0 + m))
        object.__setattr__(self, "B", alpha / (2.0 + m))

    @property
    def power(self):
        """Exponent (2+m)/alpha mapping z/tau to the lower integration limit."""
        return (2.0 + self.m) / self.alpha

    @property
    def lam(self):
        """1 - alpha + alpha/(2+m), the coefficient of the beta terms."""
        return 1.0 - self.alpha + self.B

    @property
    def beta_plus(self):
        """Complete beta B(1 + alpha/(2+m), 1 - alpha)."""
        return beta(1.0 + self.B, 1.0 - self.alpha)

    @property
    def beta_minus(self):
        return beta(1.0 - self.B, 1.0 - self.alpha)


def _check_domain(z, tau):
    if z > 0.0:
        raise ValueError(f"kernel requires z <= 0, got z={z!r}")
    if tau > z:
        raise ValueError(f"kernel requires tau <= z, got tau={tau!r}, z={z!r}")


def _limit_point(p, z, tau):
    """Return ``(x, 1 - x)`` with ``x = (z/tau)^power`` evaluated in logs."""
    if z == 0.0:
        return 0.0, 1.0
    if z == tau:
        return 1.0, 0.0
    lx = p.power * math.log(z / tau)
    return math.exp(lx), -math.expm1(lx)


def _upper_moment(p, y, q):
    # int_x^1 s^(q-1) (1-s)^(-alpha) ds with y = 1 - x
    return incomplete_beta_lower(y, 1.0 - p.alpha, q)


def kernel_exact(p, z, tau):
    """Closed-form kernel K(z, tau) for ``tau <= z <= 0``."""
    _check_domain(z, tau)
    if z == tau:
        return 0.0
    x, y = _limit_point(p, z, tau)
    b = 1.0 - p.alpha
    if x == 0.0:
        # (z/tau)^power underflowed: the incomplete part vanishes
        return max(z - p.lam * p.beta_plus * tau, 0.0)
    value = z * y**b - p.lam * tau * _upper_moment(p, y, 1.0 + p.B)
    return max(value, 0.0)


def _quad(f, lo, hi, tol, where):
    value, abserr, info = integrate.quad(
        f, lo, hi, epsabs=tol, epsrel=0.0, limit=60, full_output=True)[:3]
    if abserr > tol or info.get("last", 0) >= 60:
        raise ArithmeticError(
            f"kernel quadrature missed tol={tol:g} (estimate {abserr:.3g}) {where}")
    return value


def kernel_quadrature(p, z, tau, tol=1e-12):
    """Kernel from its defining integral by adaptive Gauss-Kronrod quadrature.

    The range is split at s = 1/2. Near s = 1 the singularity ``(1-s)^(-alpha)``
    is removed with ``s = 1 - t^(1/(1-alpha))``; near s = 0 the steep factor
    ``s^B`` is flattened with ``s = u^(1/B)``. Both pieces are then smooth.
    """
    _check_domain(z, tau)
    if z == tau:
        return 0.0
    x, y = _limit_point(p, z, tau)
    b = 1.0 - p.alpha
    lam, B, alpha = p.lam, p.B, p.alpha
    inv_b, inv_B = 1.0 / b, 1.0 / B
    where = f"at z={z}, tau={tau}"

    def near_one(t):
        sigma = -math.expm1(inv_b * math.log(t)) if t > 0.0 else 1.0
        return (b * z - lam * tau * sigma**B) * inv_b

    def near_zero(u):
        sigma = u**inv_B
        return ((b * z - lam * tau * u) * (1.0 - sigma) ** (-alpha)
                * inv_B * u ** (inv_B - 1.0))

    if x >= 0.5:
        return _quad(near_one, 0.0, y**b, tol, where)
    return (_quad(near_one, 0.0, 0.5**b, 0.5 * tol, where)
            + _quad(near_zero, x**B, 0.5**B, 0.5 * tol, where))


def kernel_z_derivative(p, z, tau):
    """Partial derivative dK/dz for ``tau < z <= 0`` (strictly positive)."""
    _check_domain(z, tau)
    if z == tau:
        raise ValueError("kernel z-derivative diverges at tau == z")
    x, y = _limit_point(p, z, tau)
    if y == 0.0:
        raise ValueError("kernel z-derivative diverges at tau == z")
    return y ** (1.0 - p.alpha) + x * y ** (-p.alpha)


def kernel_lower_bound(p, z, tau):
    _check_domain(z, tau)
    _, y = _limit_point(p, z, tau)
    return -p.B * p.beta_plus * y ** (1.0 - p.alpha) * tau


def kernel_upper_bound(p, tau):
    """K(0, tau), the largest value of K(., tau)."""
    _check_domain(0.0, tau)
    return -p.lam * p.beta_plus * tau


def kernel_asymptotic_near_boundary(p, z, tau):
    """Leading behaviour of K(z, tau) as ``tau -> z^-``."""
    _check_domain(z, tau)
    if z == tau:
        return 0.0
    b = 1.0 - p.alpha
    return -(p.B / b) * z * (p.power * (1.0 - z / tau)) ** b


def kernel_antiderivative(p, z, tau):
    """Exact integral ``int_tau^z K(z, t) dt`` for ``tau <= z <= 0``.

    Swapping the order of integration in the defining double integral gives

        ((b-B)/2) z^2 I(-B) - z tau (1-x)^b + ((b+B)/2) tau^2 I(B),
        I(q) = int_x^1 s^q (1-s)^(-alpha) ds,  b = 1 - alpha,

    so a product-integration weight over ``[t1, t2]`` is the difference of
    two evaluations of this function.
    """
    _check_domain(z, tau)
    if z == tau:
        return 0.0
    x, y = _limit_point(p, z, tau)
    b = 1.0 - p.alpha
    B = p.B
    if x == 0.0:
        i_minus, i_plus, yb = p.beta_minus, p.beta_plus, 1.0
    else:
        i_minus = _upper_moment(p, y, 1.0 - B)
        i_plus = _upper_moment(p, y, 1.0 + B)
        yb = y**b
    return (0.5 * (b - B) * z * z * i_minus - z * tau * yb
            + 0.5 * (b + B) * tau * tau * i_plus)
