"""Support matching: find z0* with half-mass 1/2 by bracketing and bisection."""

import logging
from dataclasses import dataclass, field

from .profile import DEFAULT_STEPS, Profile, solve_profile

__all__ = [
    "MassMatchResult",
    "BracketError",
    "discrete_half_mass",
    "mass_residual",
    "find_support",
]

log = logging.getLogger(__name__)

TARGET_HALF_MASS = 0.5
MAX_DOUBLINGS = 60
MAX_BISECTIONS = 200


class BracketError(RuntimeError):
    """No sign change of the mass residual could be located."""

    def __init__(self, message, history):
        super().__init__(message)
        self.history = history


@dataclass
class MassMatchResult:
    z0_star: float
    profile: Profile
    residual: float
    iterations: int
    bracket_history: list = field(default_factory=list)
    monotonicity_violations: int = 0

    @property
    def evaluations(self):
        return len(self.bracket_history)


def discrete_half_mass(profile):
    """Trapezoid rule for the profile's integral over [-z0, 0]."""
    u = profile.values
    return profile.grid.h * (u.sum() - 0.5 * (u[0] + u[-1]))


def mass_residual(p, z0, n_steps=DEFAULT_STEPS, backend=None, seed="reference"):
    return discrete_half_mass(solve_profile(p, z0, n_steps, backend, seed)) - TARGET_HALF_MASS


def _count_violations(history):
    pts = sorted(history)
    return sum(1 for (_, f0), (_, f1) in zip(pts, pts[1:]) if f1 < f0)


def find_support(p, n_steps=DEFAULT_STEPS, tol=1e-4, z0_init=1.0, backend=None,
                 seed="reference"):
    """Locate z0* with ``|discrete_half_mass - 1/2| < tol``.

    The bracket is grown geometrically (doubling or halving ``z0_init``) until
    the residual changes sign, then bisected.

    Returns
    -------
    MassMatchResult

    Raises
    ------
    BracketError
        If no sign change appears within 60 doublings/halvings.
    ArithmeticError
        If bisection does not reach ``tol`` in 200 steps.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    if not z0_init > 0:
        raise ValueError(f"z0_init must be positive, got {z0_init!r}")

    history = []
    cache = {}

    def evaluate(z0):
        prof = solve_profile(p, z0, n_steps, backend, seed)
        f = discrete_half_mass(prof) - TARGET_HALF_MASS
        history.append((z0, f))
        cache[z0] = prof
        return f

    def done(z0, f, iterations):
        violations = _count_violations(history)
        if violations:
            log.warning("mass residual not monotone over %d sampled pairs", violations)
        return MassMatchResult(z0, cache[z0], f, iterations, history, violations)

    z0 = float(z0_init)
    f = evaluate(z0)
    if abs(f) < tol:
        return done(z0, f, 0)
    factor = 2.0 if f < 0 else 0.5
    lo = hi = z0
    f_lo = f_hi = f
    for _ in range(MAX_DOUBLINGS):
        z_new = z0 * factor
        f_new = evaluate(z_new)
        if abs(f_new) < tol:
            return done(z_new, f_new, 0)
        if (f_new > 0) != (f > 0):
            if factor > 1:
                lo, f_lo, hi, f_hi = z0, f, z_new, f_new
            else:
                lo, f_lo, hi, f_hi = z_new, f_new, z0, f
            break
        z0, f = z_new, f_new
    else:
        raise BracketError(
            f"no sign change of the mass residual within {MAX_DOUBLINGS} "
            f"{'doublings' if factor > 1 else 'halvings'} from z0={z0_init}", history)

    for it in range(1, MAX_BISECTIONS + 1):
        mid = 0.5 * (lo + hi)
        f_mid = evaluate(mid)
        if abs(f_mid) < tol:
            return done(mid, f_mid, it)
        if f_mid < 0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        if hi - lo <= 4e-16 * hi:
            break
    raise ArithmeticError(
        f"bisection stalled at z0 in [{lo}, {hi}] with residuals {f_lo:.3g}, {f_hi:.3g}")
