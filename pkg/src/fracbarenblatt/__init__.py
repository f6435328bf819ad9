"""Barenblatt solutions of the time-fractional porous medium equation.

Solves the nonlinear Volterra equation for the self-similar profile of
d^alpha_t u = (u^m u_x)_x by product integration, matches the support to
unit mass and reconstructs u(x, t).
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .kernel import FractionalParams
from .profile import Grid, Profile, solve_profile
from .mass import MassMatchResult, find_support
from .reconstruct import SpaceTimeSolution, evaluate_u, total_mass
from .order import OrderReport, estimate_order

__all__ = [
    "BACKEND",
    "FractionalParams",
    "Grid",
    "Profile",
    "solve_profile",
    "MassMatchResult",
    "find_support",
    "SpaceTimeSolution",
    "evaluate_u",
    "total_mass",
    "OrderReport",
    "estimate_order",
]
