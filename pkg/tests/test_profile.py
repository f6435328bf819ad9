import math

import numpy as np
import pytest
from scipy import integrate

from fracbarenblatt.kernel import FractionalParams, kernel_exact
from fracbarenblatt.profile import (Grid, Profile, compute_weight_row,
                                    derivative_origin_residual, profile_lower_bound,
                                    profile_upper_bound, row_integral, seed_value,
                                    solve_profile, boundary_coefficient)
from fracbarenblatt.mass import find_support

# mpmath, 40 digits, evaluated from the displayed closed forms
SEED_05_2 = 0.004568479373680301785229169883586670301622     # z0=1, h=1/1024
UPPER_05_2 = 0.9923357356572157231215686849824274271262     # z0=1
LOWER0_05_2 = 0.6276082256511135054633349411430568319105    # z0=1, z=0


def random_cases(seed, n):
    rng = np.random.default_rng(seed)
    return [(FractionalParams(rng.uniform(0.05, 0.95), rng.uniform(0.5, 10.0)),
             rng.uniform(0.2, 3.0)) for _ in range(n)]


def test_grid():
    g = Grid(1.5, 6)
    assert g.h == 1.5 / 6
    assert g.node(0) == -1.5
    assert g.node(6) == 0.0
    assert g.nodes.shape == (7,)
    assert g.nodes[-1] == 0.0
    with pytest.raises(ValueError):
        Grid(-1.0, 4)
    with pytest.raises(ValueError):
        Grid(1.0, 0)


def test_weight_row_edges():
    p = FractionalParams(0.5, 2.0)
    g = Grid(1.0, 16)
    assert compute_weight_row(p, g, 1).size == 0
    for n in (0, 17):
        with pytest.raises(IndexError):
            compute_weight_row(p, g, n)


@pytest.mark.parametrize("alpha, m", [(0.5, 2.0), (0.1, 7.0), (0.9, 1.0)])
def test_weight_methods_agree(alpha, m):
    p = FractionalParams(alpha, m)
    g = Grid(1.3, 32)
    for n in (2, 7, 32):
        exact = compute_weight_row(p, g, n)
        gauss = compute_weight_row(p, g, n, method="gauss")
        assert np.all(exact >= 0.0)
        np.testing.assert_allclose(exact, gauss, rtol=1e-10, atol=1e-13)


def test_row_sums_against_adaptive_quadrature():
    p = FractionalParams(0.5, 2.0)
    g = Grid(1.0, 64)
    pref = (p.m + 1) / math.gamma(1 - p.alpha)
    for n in (2, 10, 33, 64):
        zn = g.node(n)
        ref, _ = integrate.quad(lambda t: kernel_exact(p, zn, t), g.node(1), zn,
                                epsabs=1e-13, epsrel=1e-13, limit=200)
        total = g.h * compute_weight_row(p, g, n).sum()
        assert total == pytest.approx(pref * ref, abs=1e-8)
        assert row_integral(p, g, n) == pytest.approx(pref * ref, abs=1e-8)


def test_all_rows_nonnegative():
    for p, z0 in random_cases(11, 5):
        g = Grid(z0, 40)
        for n in range(1, 41):
            assert np.all(compute_weight_row(p, g, n) >= 0.0)


def test_seed():
    p = FractionalParams(0.5, 2.0)
    assert seed_value(p, 1.0, 1 / 1024) == pytest.approx(SEED_05_2, rel=1e-13)
    ratio = seed_value(p, 1.0, 2 / 1024) / seed_value(p, 1.0, 1 / 1024)
    assert ratio == pytest.approx(2 ** ((2 - p.alpha) / p.m), rel=1e-14)
    assert seed_value(p, 1.0, 1e-12) < 1e-8
    with pytest.raises(ValueError):
        seed_value(p, 1.0, 2.0)


def test_bounds_values():
    p = FractionalParams(0.5, 2.0)
    assert profile_upper_bound(p, 1.0) == pytest.approx(UPPER_05_2, rel=1e-13)
    assert profile_upper_bound(p, 2.0) / profile_upper_bound(p, 1.0) == pytest.approx(
        2 ** (2 / p.m), rel=1e-14)
    assert profile_lower_bound(p, 1.0, -1.0) == 0.0
    assert profile_lower_bound(p, 1.0, 0.0) == pytest.approx(LOWER0_05_2, rel=1e-13)
    with pytest.raises(ValueError):
        profile_lower_bound(p, 1.0, 0.5)


def test_solve_shape_and_errors():
    p = FractionalParams(0.5, 2.0)
    prof = solve_profile(p, 1.0, 16)
    assert isinstance(prof, Profile)
    assert len(prof) == 17
    assert prof.values[0] == 0.0
    assert prof.values[1] == seed_value(p, 1.0, 1 / 16)
    with pytest.raises(ValueError):
        prof.values[3] = 1.0
    with pytest.raises(ValueError):
        solve_profile(p, 1.0, 1)


def test_recurrence_by_hand():
    p = FractionalParams(0.4, 1.5)
    prof = solve_profile(p, 0.8, 12)
    u, g = prof.values, prof.grid
    for n in range(2, 13):
        w = compute_weight_row(p, g, n, method="gauss")
        expect = (g.h * float(w @ u[1:n])) ** (1 / (p.m + 1))
        assert u[n] == pytest.approx(expect, rel=1e-10)


@pytest.mark.parametrize("seed", ["reference", "consistent"])
def test_positive_and_below_upper_bound(seed):
    for p, z0 in random_cases(12, 20):
        u = solve_profile(p, z0, 512, seed=seed).values
        assert np.all(u[1:] > 0.0)
        assert u.max() <= profile_upper_bound(p, z0) * (1 + 1e-2)


def test_lower_bound_where_compatible_with_boundary_law():
    # Past the start-up transient, the lower bound holds whenever its constant
    # does not exceed the boundary power-law constant.
    checked = 0
    for p, z0 in random_cases(12, 20):
        if boundary_coefficient(p, z0, "consistent") < profile_lower_bound(p, z0, 0.0) / z0 ** (
                (2 - p.alpha) / p.m):
            continue
        prof = solve_profile(p, z0, 512)
        lower = np.array([profile_lower_bound(p, z0, z) for z in prof.nodes])
        assert np.all(prof.values[64:] >= lower[64:] * (1 - 5e-2))
        checked += 1
    assert checked >= 10


def test_profile_follows_consistent_boundary_constant():
    # U(z)/(z+z0)^g tends to the consistent constant from either seed, and for
    # these parameters that constant lies below the lower bound's constant.
    p = FractionalParams(0.653, 1.59)
    g = (2 - p.alpha) / p.m
    c_cons = boundary_coefficient(p, 1.0, "consistent")
    c_low = profile_lower_bound(p, 1.0, 0.0)
    assert c_cons < 0.8 * c_low
    for seed in ("reference", "consistent"):
        prof = solve_profile(p, 1.0, 8192, seed=seed)
        k = 256
        assert prof.values[k] / (prof.nodes[k] + 1.0) ** g == pytest.approx(c_cons, rel=0.02)


def test_monotone_with_consistent_seed():
    for p, z0 in random_cases(12, 20):
        u = solve_profile(p, z0, 512, seed="consistent").values
        assert np.all(np.diff(u) >= 0.0)


def test_reference_seed_only_breaks_first_step():
    # The reference seed overshoots the boundary power law for alpha < 1, so
    # U_2 < U_1 can occur; from n = 2 on the recurrence is monotone.
    dips = 0
    for p, z0 in random_cases(12, 20):
        u = solve_profile(p, z0, 512).values
        assert np.all(np.diff(u[2:]) >= 0.0)
        dips += u[2] < u[1]
    assert dips > 0


def test_seed_rules_agree_near_classical_limit():
    p = FractionalParams(0.999, 3.0)
    a = seed_value(p, 1.0, 1e-3, "reference")
    b = seed_value(p, 1.0, 1e-3, "consistent")
    assert a == pytest.approx(b, rel=2e-3)
    with pytest.raises(ValueError):
        seed_value(p, 1.0, 1e-3, "other")


@pytest.mark.parametrize("alpha, m", [(0.5, 2.0), (0.2, 7.0), (0.9, 0.7), (0.05, 9.5)])
def test_near_boundary_power_law(alpha, m):
    p = FractionalParams(alpha, m)
    prof = solve_profile(p, 1.0, 1024)
    k = int(0.05 * 1024)
    x = np.log(prof.nodes[1:k + 1] + 1.0)
    y = np.log(prof.values[1:k + 1])
    slope = np.polyfit(x, y, 1)[0]
    assert slope == pytest.approx((2 - alpha) / m, rel=0.10)


@pytest.mark.parametrize("alpha, sign", [(0.25, 1.0), (0.75, -1.0)])
def test_boundary_curvature(alpha, sign):
    # (2 - alpha)/m is 7/6 at alpha=0.25 (convex) and 5/6 at alpha=0.75 (concave).
    # The first three second differences carry the start-up transient of the
    # open rule and are skipped.
    p = FractionalParams(alpha, 1.5)
    u = solve_profile(p, 1.0, 1024).values
    d2 = np.diff(u[: int(0.1 * 1024) + 1], 2)[3:]
    assert np.all(sign * d2 > 0.0)


def test_derivative_residual_converges():
    p = FractionalParams(0.5, 1.0)
    z0 = find_support(p, 1024).z0_star
    r1 = derivative_origin_residual(solve_profile(p, z0, 1024))
    r2 = derivative_origin_residual(solve_profile(p, z0, 2048))
    assert r1 / r2 >= 1.99


def test_derivative_residual_errors():
    p = FractionalParams(0.5, 1.0)
    g = Grid(1.0, 8)
    with pytest.raises(ValueError):
        derivative_origin_residual(Profile(p, g, np.zeros(9)))
    with pytest.raises(ValueError):
        derivative_origin_residual(solve_profile(p, 1.0, 2))
