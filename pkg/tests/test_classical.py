import math

import numpy as np
import pytest
from scipy import integrate

from fracbarenblatt.classical import (classical_constant, classical_profile,
                                      classical_support, limit_constant, limit_profile,
                                      limit_support)

# mpmath, 40 digits: (Gamma(3/2+1/m) / (sqrt(2 pi (m+2)) Gamma(1+1/m)))^(2m/(m+2))
D1 = 0.454280148208034914722802939081815125607
D2 = 0.2250790790392765173887997977516851456661
D5 = 0.06603236308684176254287563583334796629863

MS = [0.5, 1.0, 2.0, 3.0, 5.0, 7.0, 9.0]


def test_constants_frozen():
    assert classical_constant(1.0) == pytest.approx(D1, rel=1e-13)
    assert classical_constant(2.0) == pytest.approx(D2, rel=1e-13)
    assert classical_constant(5.0) == pytest.approx(D5, rel=1e-13)


@pytest.mark.parametrize("m, z0", [(1, 1.650), (3, 1.159), (5, 0.961), (7, 0.856), (9, 0.791)])
def test_support_table_values(m, z0):
    assert classical_support(m) == pytest.approx(z0, abs=1e-3)
    assert math.sqrt(2 * classical_constant(m) * (2 + m)) == classical_support(m)


@pytest.mark.parametrize("m", MS)
def test_profile_shape(m):
    z0 = classical_support(m)
    assert classical_profile(m, z0) == 0.0
    assert classical_profile(m, -z0) == 0.0
    assert classical_profile(m, 2 * z0) == 0.0
    assert classical_profile(m, 0.0) == pytest.approx(classical_constant(m) ** (1 / m), rel=1e-15)
    for z in np.linspace(0.0, 1.2 * z0, 13):
        assert classical_profile(m, z) == classical_profile(m, -z)


@pytest.mark.parametrize("m", MS)
def test_unit_mass(m):
    z0 = classical_support(m)
    half, _ = integrate.quad(lambda z: classical_profile(m, z), -z0, 0.0,
                             epsabs=1e-13, epsrel=1e-13, limit=200)
    assert half == pytest.approx(0.5, abs=1e-6)
    full, _ = integrate.quad(lambda z: classical_profile(m, z), -z0, z0, points=[0.0],
                             epsabs=1e-13, epsrel=1e-13, limit=200)
    assert full == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("m", [1.0, 3.0, 9.0])
def test_holder_at_boundary(m):
    z0 = classical_support(m)
    eps = np.logspace(-8, -3, 11)
    u = np.array([classical_profile(m, z0 - e) for e in eps])
    slope = np.polyfit(np.log(eps), np.log(u), 1)[0]
    assert slope == pytest.approx(1 / m, rel=1e-3)
    lead = (eps[0] * z0 / (2 + m)) ** (1 / m)
    assert u[0] / lead == pytest.approx(1.0, rel=1e-6)


@pytest.mark.parametrize("m", MS)
def test_limit_form(m):
    z0 = limit_support(m)
    assert limit_profile(m, z0) == 0.0
    assert limit_profile(m, 0.0) == pytest.approx(limit_constant(m) ** (1 / m), rel=1e-15)
    half, _ = integrate.quad(lambda z: limit_profile(m, z), -z0, 0.0,
                             epsabs=1e-13, epsrel=1e-13, limit=200)
    assert half == pytest.approx(0.5, abs=1e-6)


def test_limit_matches_classical_at_m1_only():
    assert limit_support(1.0) == pytest.approx(classical_support(1.0), rel=1e-14)
    assert limit_constant(1.0) == pytest.approx(classical_constant(1.0), rel=1e-14)
    for m in (3.0, 5.0, 9.0):
        assert limit_support(m) < 0.9 * classical_support(m)


@pytest.mark.parametrize("m", [0.0, -1.0])
def test_domain(m):
    for f in (classical_constant, limit_constant):
        with pytest.raises(ValueError):
            f(m)
