import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coclosed import (
    COSH,
    QUADRATIC,
    NoObstructionFoundError,
    check_admissible,
    cosh_power,
    find_obstruction_scale,
    obstruction_gap,
    power_alpha,
)

ADMISSIBLE = [
    COSH,
    power_alpha(4.0),
    power_alpha(2.5),
    cosh_power(2.0),
    cosh_power(1.5),
]

# grid avoids the origin: the fractional powers have unbounded third
# derivatives there, which ruins the finite-difference comparison
FD_GRID = np.concatenate([np.linspace(-6, -0.1, 40), np.linspace(0.1, 6, 40)])


def test_cosh_closed_forms():
    assert COSH.psi(0.0) == 0.0
    assert COSH.psi(1.0) == pytest.approx(math.cosh(1.0) - 1.0, rel=1e-15)
    assert COSH.sigma(1.0) == pytest.approx(math.sinh(1.0), rel=1e-15)
    assert COSH.sigma_prime(0.0) == 1.0
    assert COSH.self_concordant
    assert COSH.admissible


def test_quadratic_is_not_admissible():
    assert not QUADRATIC.admissible
    report = check_admissible(QUADRATIC)
    assert report.even and report.zero_at_zero and report.convex
    assert not report.non_quadratic
    assert not report.passed


@pytest.mark.parametrize("p", ADMISSIBLE, ids=lambda p: p.name)
def test_admissibility_check_passes(p):
    report = check_admissible(p)
    assert report.passed, report


@pytest.mark.parametrize("p", ADMISSIBLE, ids=lambda p: p.name)
def test_psi_even_sigma_odd(p):
    t = np.linspace(-7, 7, 301)
    psi = np.asarray(p.psi(t))
    sigma = np.asarray(p.sigma(t))
    assert np.allclose(psi, psi[::-1], atol=1e-12 * (1 + np.abs(psi).max()))
    assert np.allclose(sigma, -sigma[::-1], atol=1e-12 * (1 + np.abs(sigma).max()))
    assert p.psi(0.0) == 0.0
    assert p.sigma(0.0) == 0.0


@pytest.mark.parametrize("p", ADMISSIBLE, ids=lambda p: p.name)
def test_sigma_is_derivative_of_psi(p):
    h = 1e-6
    fd = (np.asarray(p.psi(FD_GRID + h)) - np.asarray(p.psi(FD_GRID - h))) / (2 * h)
    sigma = np.asarray(p.sigma(FD_GRID))
    assert np.allclose(fd, sigma, atol=1e-5 * (1 + np.abs(sigma).max()))


@pytest.mark.parametrize("p", ADMISSIBLE, ids=lambda p: p.name)
def test_sigma_prime_is_derivative_of_sigma(p):
    h = 1e-6
    fd = (np.asarray(p.sigma(FD_GRID + h)) - np.asarray(p.sigma(FD_GRID - h))) / (2 * h)
    sp = np.asarray(p.sigma_prime(FD_GRID))
    assert np.allclose(fd, sp, atol=1e-5 * (1 + np.abs(sp).max()))


@pytest.mark.parametrize("p", ADMISSIBLE, ids=lambda p: p.name)
def test_degenerate_potentials_finite_at_origin(p):
    for f in (p.psi, p.sigma, p.sigma_prime):
        value = f(np.array([0.0]))
        assert np.isfinite(value).all()


def test_parameter_validation():
    with pytest.raises(ValueError):
        power_alpha(2.0)
    with pytest.raises(ValueError):
        power_alpha(1.0)
    with pytest.raises(ValueError):
        cosh_power(1.0)
    with pytest.raises(ValueError):
        cosh_power(0.5)


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=-25, max_value=25, allow_nan=False))
def test_cosh_gap_identity(t):
    # sinh(2t) - 2 sinh(t) == 2 sinh(t) (cosh(t) - 1)
    gap = obstruction_gap(COSH, t)
    closed = 2.0 * math.sinh(t) * (math.cosh(t) - 1.0)
    assert gap == pytest.approx(closed, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("p", ADMISSIBLE, ids=lambda p: p.name)
def test_gap_matches_definition(p):
    for t in (0.25, 1.0, -2.0):
        expected = float(p.sigma(2 * t)) - 2.0 * float(p.sigma(t))
        assert obstruction_gap(p, t) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize(
    "p,expected",
    [(COSH, 2.0**-8), (power_alpha(4.0), 2.0**-9), (cosh_power(2.0), 2.0**-9)],
    ids=["cosh", "power:4", "coshpow:2"],
)
def test_obstruction_scale_frozen(p, expected):
    t0 = find_obstruction_scale(p)
    assert t0 == expected
    gap = obstruction_gap(p, t0)
    assert abs(gap) > 1e-8 * (1.0 + abs(float(p.sigma(2 * t0))))


def test_quadratic_has_no_gap():
    assert obstruction_gap(QUADRATIC, 3.0) == 0.0
    with pytest.raises(NoObstructionFoundError):
        find_obstruction_scale(QUADRATIC)


def test_names():
    assert COSH.name == "cosh"
    assert power_alpha(4.0).name == "power:4"
    assert cosh_power(2.0).name == "coshpow:2"
    assert QUADRATIC.name == "quad"
