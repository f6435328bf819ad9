import math

import pytest

from fracbarenblatt.kernel import FractionalParams
from fracbarenblatt.order import OrderReport, estimate_order, shared_node_difference
from fracbarenblatt.profile import solve_profile


def test_identical_profiles():
    prof = solve_profile(FractionalParams(0.5, 1.0), 1.0, 8)
    fine = solve_profile(FractionalParams(0.5, 1.0), 1.0, 16)
    assert shared_node_difference(prof, fine) >= 0.0
    same = solve_profile(FractionalParams(0.5, 1.0), 1.0, 16)
    assert shared_node_difference(solve_profile(FractionalParams(0.5, 1.0), 1.0, 8), same) == \
        shared_node_difference(prof, fine)


def test_brute_force_small_case():
    p = FractionalParams(0.6, 2.0)
    coarse = solve_profile(p, 1.2, 4)
    fine = solve_profile(p, 1.2, 8)
    brute = 0.0
    for n in range(5):
        assert coarse.nodes[n] == pytest.approx(fine.nodes[2 * n], abs=1e-15)
        brute = max(brute, abs(coarse.values[n] - fine.values[2 * n]))
    assert shared_node_difference(coarse, fine) == brute
    assert shared_node_difference(coarse, coarse.__class__(p, fine.grid, fine.values)) == brute


@pytest.mark.parametrize("other", [
    dict(p=FractionalParams(0.6, 2.5), z0=1.2, n=8),
    dict(p=FractionalParams(0.6, 2.0), z0=1.3, n=8),
    dict(p=FractionalParams(0.6, 2.0), z0=1.2, n=12),
])
def test_mismatch_errors(other):
    coarse = solve_profile(FractionalParams(0.6, 2.0), 1.2, 4)
    fine = solve_profile(other["p"], other["z0"], other["n"])
    with pytest.raises(ValueError):
        shared_node_difference(coarse, fine)


def test_estimate_order_report():
    p = FractionalParams(0.5, 1.0)
    rep = estimate_order(p, z0=2.0, base_n=64)
    assert isinstance(rep, OrderReport)
    assert rep.diff_coarse > 0 and rep.diff_fine > 0
    assert rep.p_estimate == math.log2(rep.diff_coarse / rep.diff_fine)
    assert rep.p_origin == math.log2(rep.origin_coarse / rep.origin_fine)
    assert 0.0 < rep.p_estimate < 1.1
    u1 = solve_profile(p, 2.0, 64)
    u2 = solve_profile(p, 2.0, 128)
    assert rep.diff_coarse == shared_node_difference(u1, u2)


def test_estimate_order_mass_matches_when_z0_missing():
    rep = estimate_order(FractionalParams(0.5, 1.0), base_n=64)
    from fracbarenblatt.mass import find_support
    assert rep.z0 == find_support(FractionalParams(0.5, 1.0), 64).z0_star


def test_base_too_small():
    with pytest.raises(ValueError):
        estimate_order(FractionalParams(0.5, 1.0), z0=1.0, base_n=32)
