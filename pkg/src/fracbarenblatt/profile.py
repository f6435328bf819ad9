"""Product-rectangle scheme for the self-similar profile on [-z0, 0].

On the uniform grid z_n = -z0 + n h, h = z0/N, the profile satisfies

    U_n = (h * sum_{i=1}^{n-1} w_{n,i} U_i)^(1/(m+1)),   U_0 = 0,

with the left-endpoint product rectangle weights

    w_{n,i} = (m+1) / (Gamma(1-alpha) h) * int_{z_i}^{z_{i+1}} K(z_n, tau) dtau

and U_1 taken from the power-law behaviour of the solution at -z0.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .kernel import FractionalParams, kernel_exact, kernel_antiderivative

__all__ = [
    "Grid",
    "Profile",
    "compute_weight_row",
    "row_integral",
    "seed_value",
    "boundary_coefficient",
    "solve_profile",
    "profile_upper_bound",
    "profile_lower_bound",
    "derivative_origin_residual",
]

DEFAULT_STEPS = 2**10
GRADING = 0.15
GRADED_LEVELS = 12
SEED_RULES = ("reference", "consistent")

# 16-point Gauss-Legendre rule on [-1, 1]
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


@dataclass(frozen=True)
class Grid:
    """Uniform mesh of ``n_steps`` panels on [-z0, 0]."""

    z0: float
    n_steps: int

    def __post_init__(self):
        if not self.z0 > 0:
            raise ValueError(f"z0 must be positive, got {self.z0!r}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise ValueError(f"n_steps must be a positive integer, got {self.n_steps!r}")
        object.__setattr__(self, "z0", float(self.z0))
        object.__setattr__(self, "n_steps", int(self.n_steps))

    @property
    def h(self):
        return self.z0 / self.n_steps

    def node(self, n):
        if not 0 <= n <= self.n_steps:
            raise IndexError(f"node index {n} outside 0..{self.n_steps}")
        return 0.0 if n == self.n_steps else -self.z0 + n * self.h

    @property
    def nodes(self):
        z = -self.z0 + self.h * np.arange(self.n_steps + 1)
        z[-1] = 0.0
        return z


@dataclass(frozen=True, eq=False)
class Profile:
    """Nodal values U_0..U_N of the self-similar profile on ``grid``."""

    params: FractionalParams
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (self.grid.n_steps + 1,):
            raise ValueError(
                f"expected {self.grid.n_steps + 1} values, got shape {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def nodes(self):
        return self.grid.nodes

    def __len__(self):
        return self.values.shape[0]


def _weight_prefactor(p, h):
    return (p.m + 1.0) / (math.gamma(1.0 - p.alpha) * h)


def _gauss(p, zn, a, b):
    tau = 0.5 * (a + b) + 0.5 * (b - a) * _GL_NODES
    vals = np.array([kernel_exact(p, zn, t) for t in tau])
    return 0.5 * (b - a) * float(_GL_WEIGHTS @ vals)


def _panel_gauss(p, zn, a, b, singular):
    if not singular:
        return _gauss(p, zn, a, b)
    # Graded pieces toward tau = zn, since for small alpha K also varies on the
    # scale (1 - zn/tau) ~ 1/power. The innermost piece uses
    # tau = zn - s^(1/(1-alpha)), which flattens the (zn - tau)^(1-alpha) onset.
    d = zn - a
    total = sum(_gauss(p, zn, zn - d * GRADING**k, zn - d * GRADING**(k + 1))
                for k in range(GRADED_LEVELS))
    e = 1.0 / (1.0 - p.alpha)
    top = (d * GRADING**GRADED_LEVELS) ** (1.0 - p.alpha)
    s = 0.5 * top * (1.0 + _GL_NODES)
    vals = np.array([kernel_exact(p, zn, min(zn - si**e, zn)) * e * si ** (e - 1.0)
                     for si in s])
    return total + 0.5 * top * float(_GL_WEIGHTS @ vals)


def compute_weight_row(p, grid, n, method="exact"):
    """Weights ``w_{n,1..n-1}`` of row ``n`` (empty for ``n == 1``).

    ``method="exact"`` integrates the kernel over each panel in closed form;
    ``method="gauss"`` uses 16-point Gauss-Legendre per panel with a
    singularity-flattening substitution on the panel touching ``tau = z_n``.
    """
    if not 1 <= n <= grid.n_steps:
        raise IndexError(f"row index {n} outside 1..{grid.n_steps}")
    if n == 1:
        return np.empty(0)
    h = grid.h
    scale = _weight_prefactor(p, h)
    if method == "exact":
        N = grid.n_steps
        ks = float(N) - np.arange(1, n + 1, dtype=np.float64)
        g = _backend.antiderivative_row(p.alpha, p.m, float(N - n), ks)
        return scale * h * h * (g[:-1] - g[1:])
    if method == "gauss":
        zn = grid.node(n)
        row = [_panel_gauss(p, zn, grid.node(i), grid.node(i + 1), i == n - 1)
               for i in range(1, n)]
        return scale * np.array(row)
    raise ValueError(f"unknown weight method {method!r}")


def row_integral(p, grid, n):
    """(m+1)/Gamma(1-alpha) times the kernel integral over the row's panels.

    Equals ``h * sum(compute_weight_row(p, grid, n))`` up to rounding; here it
    is evaluated from a single antiderivative difference.
    """
    if n < 2:
        return 0.0
    zn = grid.node(n)
    total = kernel_antiderivative(p, zn, grid.node(1))
    return (p.m + 1.0) / math.gamma(1.0 - p.alpha) * total


def boundary_coefficient(p, z0, rule="reference"):
    """Coefficient C in U(z) ~ C (z + z0)^((2-alpha)/m) as z -> -z0.

    ``rule="reference"`` is the reference constant
    ``C^m = (m+1) z0^alpha B^alpha / (Gamma(2-alpha) (1+g))`` with
    ``g = (2-alpha)/m``. ``rule="consistent"`` is the constant obtained by
    inserting the power law into the integral equation,
    ``C^m = (m+1) B^alpha z0^alpha Gamma(1+g) / Gamma(3-alpha+g)``.
    The two coincide only as alpha -> 1.
    """
    alpha, m = p.alpha, p.m
    g = (2.0 - alpha) / m
    num = (m + 1.0) * z0**alpha * p.B**alpha
    if rule == "reference":
        cm = num / (math.gamma(2.0 - alpha) * (1.0 + g))
    elif rule == "consistent":
        cm = num * math.exp(math.lgamma(1.0 + g) - math.lgamma(3.0 - alpha + g))
    else:
        raise ValueError(f"unknown seed rule {rule!r}, expected one of {SEED_RULES}")
    return cm ** (1.0 / m)


def seed_value(p, z0, h, rule="reference"):
    """Starting value U_1 from the boundary power law at distance ``h``."""
    if not (z0 > 0 and h > 0):
        raise ValueError("seed_value requires z0 > 0 and h > 0")
    if h > z0:
        raise ValueError(f"step h={h} exceeds z0={z0}")
    return boundary_coefficient(p, z0, rule) * h ** ((2.0 - p.alpha) / p.m)


def solve_profile(p, z0, n_steps=DEFAULT_STEPS, backend=None, seed="reference"):
    """March the explicit scheme from the seed to z = 0.

    Parameters
    ----------
    p : FractionalParams
    z0 : float
        Support half-width; the grid covers [-z0, 0].
    n_steps : int
        Number of panels N (at least 2).
    backend : {"cython", "python", None}
        Inner-loop implementation; None picks the compiled one when built.
    seed : {"reference", "consistent"}
        Constant used for U_1, see :func:`boundary_coefficient`.

    Returns
    -------
    Profile
    """
    if n_steps < 2:
        raise ValueError(f"n_steps must be at least 2, got {n_steps}")
    grid = Grid(z0, n_steps)
    h = grid.h
    scale = (p.m + 1.0) * h * h / math.gamma(1.0 - p.alpha)
    impl = _backend.get(backend)
    values = impl.march(p.alpha, p.m, grid.n_steps, seed_value(p, z0, h, seed), scale)
    return Profile(p, grid, values)


def profile_upper_bound(p, z0):
    return ((p.m + 1.0) / math.gamma(1.0 - p.alpha) * p.lam * p.beta_plus
            * z0 * z0 / 2.0) ** (1.0 / p.m)


def profile_lower_bound(p, z0, z):
    """Power-law lower bound on the exact profile at ``z`` in [-z0, 0]."""
    if not -z0 <= z <= 0.0:
        raise ValueError(f"z={z} outside [-z0, 0]")
    d = p.alpha * (1.0 + p.m) / ((2.0 + p.m) * math.gamma(1.0 - p.alpha)) * p.beta_plus
    return (d * z0**p.alpha) ** (1.0 / p.m) * (z0 + z) ** ((2.0 - p.alpha) / p.m)


def derivative_origin_residual(profile):
    """Mismatch between the discrete slope at z = 0 and its integral identity.

    Compares the second-order backward difference of U at the origin with
    U(0)^(-m) / Gamma(1-alpha) * int U dz (trapezoid rule).
    """
    u = profile.values
    if u.shape[0] < 4:
        raise ValueError("derivative residual needs at least 3 panels")
    if u[-1] <= 0.0:
        raise ValueError("trivial profile: U(0) = 0")
    h = profile.grid.h
    p = profile.params
    slope = (3.0 * u[-1] - 4.0 * u[-2] + u[-3]) / (2.0 * h)
    mass = h * (u.sum() - 0.5 * (u[0] + u[-1]))
    return abs(slope - u[-1] ** (-p.m) / math.gamma(1.0 - p.alpha) * mass)
