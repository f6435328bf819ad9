"""Empirical convergence order from solutions on N, 2N and 4N panels."""

import math
from dataclasses import dataclass

import numpy as np

from .kernel import FractionalParams
from .mass import find_support
from .profile import solve_profile

__all__ = ["OrderReport", "shared_node_difference", "estimate_order", "TABLE_ALPHAS", "TABLE_MS"]

DEFAULT_BASE = 2**11
TABLE_ALPHAS = (0.999, 0.9, 0.5, 0.2, 0.01)
TABLE_MS = (1, 3, 5, 7, 9)


@dataclass(frozen=True)
class OrderReport:
    """Order estimate log2(diff_coarse / diff_fine).

    ``diff_*`` are maxima over all shared nodes. The ``origin_*`` fields
    repeat the comparison at z = 0 only, away from the boundary layer at
    -z0 where the rectangle rule converges like h^((2-alpha)/m).
    """

    params: FractionalParams
    z0: float
    base_n: int
    diff_coarse: float
    diff_fine: float
    p_estimate: float
    worst_node_coarse: int
    worst_node_fine: int
    origin_coarse: float
    origin_fine: float

    @property
    def p_origin(self):
        return math.log2(self.origin_coarse / self.origin_fine)


def _node_diffs(coarse, fine):
    if coarse.params != fine.params:
        raise ValueError("profiles were computed with different parameters")
    if coarse.grid.z0 != fine.grid.z0:
        raise ValueError("profiles cover different supports")
    if fine.grid.n_steps != 2 * coarse.grid.n_steps:
        raise ValueError(
            f"fine grid must have twice the panels: {coarse.grid.n_steps} vs "
            f"{fine.grid.n_steps}")
    return np.abs(coarse.values - fine.values[::2])


def shared_node_difference(coarse, fine):
    """max_n |U^coarse_n - U^fine_2n| over all coarse nodes."""
    return float(_node_diffs(coarse, fine).max())


def estimate_order(p, z0=None, base_n=DEFAULT_BASE, backend=None, tol=1e-4, seed="reference"):
    """Solve on base_n, 2 base_n and 4 base_n panels with a common ``z0``.

    When ``z0`` is omitted it is mass-matched once on ``base_n`` panels and
    then held fixed for all three grids.
    """
    if base_n < 2**6:
        raise ValueError(f"base_n must be at least 64, got {base_n}")
    if z0 is None:
        z0 = find_support(p, base_n, tol=tol, backend=backend, seed=seed).z0_star
    u1, u2, u4 = (solve_profile(p, z0, k * base_n, backend, seed) for k in (1, 2, 4))
    d12 = _node_diffs(u1, u2)
    d24 = _node_diffs(u2, u4)
    coarse, fine = float(d12.max()), float(d24.max())
    if fine == 0.0 or coarse == 0.0:
        raise ArithmeticError("grid solutions agree exactly; order undefined")
    return OrderReport(
        params=p, z0=z0, base_n=base_n, diff_coarse=coarse, diff_fine=fine,
        p_estimate=math.log2(coarse / fine),
        worst_node_coarse=int(d12.argmax()), worst_node_fine=int(d24.argmax()),
        origin_coarse=float(d12[-1]), origin_fine=float(d24[-1]))
