"""Closed-form Barenblatt profiles for the classical (alpha = 1) equation.

Two normalizations are provided.

``classical_*`` is the widely quoted form ``(D - z^2/(2(2+m)))_+^(1/m)``;
it is the Barenblatt profile of ``u_t = (u^m)_xx / m``, i.e. it matches the
profile equation solved here only for ``m = 1``.

``limit_*`` is the exact alpha -> 1 limit of the fractional profile equation
for ``u_t = (u^m u_x)_x``: ``(D' - m z^2/(2(2+m)))_+^(1/m)``. The fractional
solver at alpha close to 1 converges to this one.
"""

import math

__all__ = [
    "classical_constant",
    "classical_profile",
    "classical_support",
    "limit_constant",
    "limit_profile",
    "limit_support",
]


def _check_m(m):
    if not m > 0:
        raise ValueError(f"m must be positive, got {m!r}")


def _unit_mass_constant(m, curvature):
    # int (D - curvature z^2)_+^(1/m) dz = D^(1/m + 1/2) B(1/2, 1 + 1/m) / sqrt(curvature)
    lbeta = math.lgamma(0.5) + math.lgamma(1.0 + 1.0 / m) - math.lgamma(1.5 + 1.0 / m)
    return math.exp((0.5 * math.log(curvature) - lbeta) * 2.0 * m / (m + 2.0))


def classical_constant(m):
    _check_m(m)
    ratio = math.gamma(1.5 + 1.0 / m) / (
        math.sqrt(2.0 * math.pi * (m + 2.0)) * math.gamma(1.0 + 1.0 / m))
    return ratio ** (2.0 * m / (m + 2.0))


def classical_profile(m, z):
    _check_m(m)
    if abs(z) >= classical_support(m):
        return 0.0
    f = classical_constant(m) - z * z / (2.0 * (2.0 + m))
    return f ** (1.0 / m) if f > 0.0 else 0.0


def classical_support(m):
    return math.sqrt(2.0 * classical_constant(m) * (2.0 + m))


def limit_constant(m):
    _check_m(m)
    return _unit_mass_constant(m, m / (2.0 * (2.0 + m)))


def limit_profile(m, z):
    _check_m(m)
    if abs(z) >= limit_support(m):
        return 0.0
    f = limit_constant(m) - m * z * z / (2.0 * (2.0 + m))
    return f ** (1.0 / m) if f > 0.0 else 0.0


def limit_support(m):
    return math.sqrt(2.0 * limit_constant(m) * (2.0 + m) / m)
