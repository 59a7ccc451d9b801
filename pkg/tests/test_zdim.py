from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ztriple import specfun, triples, zdim
from ztriple.errors import AtPole, OutsideConvergence, PreconditionError
from ztriple.quadrature import contour_residue

Z_GRID = (0.5, 1.0, 2.0, 3.0, 4.0, 6.0)

# modulus zeta of E_z from mpmath quadrature with c = e^2/8
EZ_Z2_S4 = 116.150476211098808798978051563
EZ_Z1_S3 = 436.138797466766631157743225926
# pi^(1/2) Gamma(-3/4) / Gamma(-1/4)
ZETA_Z1_SM05 = 1.74803836952807987364322639326


def test_dimension_parameter_bounds():
    assert zdim.DimensionParameter(10.0).z == 10.0
    for bad in (0.0, -1.0, 10.5, math.nan):
        with pytest.raises(PreconditionError):
            zdim.DimensionParameter(bad)


@pytest.mark.parametrize(
    "z, expected",
    [(2, 1 / math.sqrt(math.pi)), (1, 0.5), (4, 2**0.25 / math.sqrt(math.pi))],
)
def test_rho(z, expected):
    assert zdim.rho(z) == pytest.approx(expected, rel=1e-14)


def test_tz_profile_examples():
    assert float(zdim.tz_profile(1).forward(4.0)) == pytest.approx(2.0, rel=1e-15)
    for z in Z_GRID:
        assert float(zdim.tz_profile(z).forward(0.0)) == 0.0
    assert float(zdim.tz_profile(2).inverse(zdim.rho(2))) == pytest.approx(1.0, rel=1e-15)


def test_heat_trace_closed_examples():
    assert zdim.heat_trace_closed(2, math.pi) == pytest.approx(1.0, rel=1e-15)
    assert zdim.heat_trace_closed(1, 1.0) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert zdim.heat_trace_closed(4, math.pi / 2) == pytest.approx(4.0, rel=1e-14)
    with pytest.raises(PreconditionError):
        zdim.heat_trace_closed(1, 0.0)


@pytest.mark.parametrize("z", Z_GRID)
@pytest.mark.parametrize("lam", [0.25, 1.0, math.pi, 10.0])
def test_heat_trace_law(z, lam):
    num = triples.heat_trace(zdim.tz_triple(z), lam)
    assert num == pytest.approx(zdim.heat_trace_closed(z, lam), rel=1e-8)


@pytest.mark.parametrize("z", Z_GRID)
@pytest.mark.parametrize("ds", [0.5, 1.0, 2.0, 5.0])
def test_zeta_law(z, ds):
    s = z + ds
    num = triples.zeta_trace(zdim.tz_triple(z), s)
    assert abs(num - zdim.zeta_closed(z, s)) <= 1e-8 * abs(zdim.zeta_closed(z, s))


@given(st.floats(0.1, 10.0), st.lists(st.floats(1e-3, 1e3), min_size=20, max_size=20))
def test_heat_homogeneity(z, lams):
    vals = [zdim.heat_trace_closed(z, lam) * lam ** (z / 2) for lam in lams]
    assert np.allclose(vals, math.pi ** (z / 2), rtol=1e-14, atol=0)


def test_non_real_dimension_is_not_a_positive_trace():
    z = 1 + 1j
    lams = [math.e * math.pi, math.e, math.pi, 10.0]
    assert any(abs(zdim.heat_trace_closed(z, lam).imag) > 0.1 for lam in lams)
    assert abs(zdim.heat_trace_closed(z, math.e * math.pi).imag) > 0.1


@pytest.mark.parametrize("z, s, expected", [(1, 3, 2.0), (2, 4, math.pi), (2, 6, math.pi / 2)])
def test_zeta_closed_examples(z, s, expected):
    assert zdim.zeta_closed(z, s).real == pytest.approx(expected, rel=1e-13)


def test_zeta_closed_pole_at_dimension():
    with pytest.raises(AtPole):
        zdim.zeta_closed(2, 2.0)


@pytest.mark.parametrize("z", [1.0, 3.0, 0.5])
def test_zeta_closed_genuine_poles_below_dimension(z):
    # Gamma(s/2) is finite at s = z - 2 unless z is even, so the pole survives
    with pytest.raises(AtPole):
        zdim.zeta_closed(z, z - 2)


@pytest.mark.parametrize("z, s0", [(2.0, 0.0), (2.0, -2.0), (4.0, 0.0), (4.0, -2.0)])
def test_removable_points_continuity(z, s0):
    # removable only where Gamma(s/2) has a pole too, i.e. s0 in {0, -2, ...}
    centre = zdim.zeta_closed(z, s0)
    left = zdim.zeta_closed(z, s0 - 1e-4)
    right = zdim.zeta_closed(z, s0 + 1e-4)
    scale = max(abs(centre), 1.0)
    assert abs(left - right) < 1e-2 * scale
    assert abs(centre - 0.5 * (left + right)) < 1e-6 * scale


def test_even_dimension_pole_above_zero():
    with pytest.raises(AtPole):
        zdim.zeta_closed(4, 2.0)


def test_removable_value_z2_is_pi_times_ratio_limit():
    # Gamma((s-2)/2)/Gamma(s/2) = 2/(s-2) for all s, so at s=0 the value is -pi
    assert zdim.zeta_closed(2, 0.0).real == pytest.approx(-math.pi, rel=1e-9)


@pytest.mark.parametrize("z", [1.0, 3.0])
def test_odd_dimension_secondary_pole_residue(z):
    # residue at s = z - 2 is z binom(-(z-2)/2, 1) rho^-z
    expected = z * (-(z - 2) / 2) * zdim.rho(z) ** (-z)
    data = contour_residue(lambda s: zdim.zeta_closed(z, s), z - 2)
    assert data.residue.real == pytest.approx(expected, rel=1e-9)
    assert data.residue.real == pytest.approx(-2 * math.pi ** (z / 2) / specfun.gamma(z / 2 - 1).real, rel=1e-9)


@pytest.mark.parametrize("z", Z_GRID)
@pytest.mark.parametrize("ds", [-0.7, -1.5, -3.3, 0.3, 2.5 + 1j])
def test_independent_continuation_matches_closed_form(z, ds):
    s = z + ds
    ref = zdim.zeta_closed(z, s)
    assert abs(zdim.zeta_continued(z, s) - ref) <= 1e-9 * abs(ref)


def test_continuation_frozen_value():
    assert zdim.zeta_continued(1, -0.5).real == pytest.approx(ZETA_Z1_SM05, rel=1e-10)
    with pytest.raises(AtPole):
        zdim.zeta_continued(1, -1.0)


@pytest.mark.parametrize("z", Z_GRID)
def test_contour_residue_at_dimension_is_twice_stated_value(z):
    data = zdim.zeta_residue_numeric(z)
    assert data.order == 1
    assert data.residue.real == pytest.approx(2 * zdim.zeta_residue(z), rel=1e-10)
    assert data.residue.real == pytest.approx(zdim.cutoff_residue(z), rel=1e-10)


@pytest.mark.parametrize("z, expected", [(2, math.pi), (4, math.pi**2), (1, 1.0)])
def test_zeta_residue_stated_values(z, expected):
    assert zdim.zeta_residue(z) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize(
    "z, s, expected",
    [(2, 4, math.pi**2), (1, 2, 4.0), (2, 3, 2 * math.pi**1.5)],
)
def test_cutoff_zeta_examples(z, s, expected):
    assert zdim.cutoff_zeta(z, s).real == pytest.approx(expected, rel=1e-13)


def test_cutoff_zeta_pole():
    with pytest.raises(AtPole):
        zdim.cutoff_zeta(3, 3.0)


@pytest.mark.parametrize("z", Z_GRID)
def test_cutoff_residue(z):
    assert zdim.cutoff_residue(z) == 2 * zdim.zeta_residue(z)
    assert zdim.cutoff_residue(z) == pytest.approx(z * zdim.rho(z) ** (-z), rel=1e-13)
    data = contour_residue(lambda s: zdim.cutoff_zeta(z, s), z)
    assert data.residue.real == pytest.approx(zdim.cutoff_residue(z), rel=1e-11)


def test_smoothed_profile_constants():
    sp = zdim.smoothed_profile(2)
    # sup |g'| = 4 e^-2, attained at x = 0
    assert sp.c == pytest.approx(math.exp(2) / 8, rel=1e-12)
    assert float(sp.modified(0.0)) == pytest.approx(sp.c * math.exp(-2), rel=1e-15)
    assert float(sp.modified(0.0)) > 0
    assert float(sp.modified(0.7)) == 0.7
    assert np.all(sp.modified(np.linspace(0.5, 5, 50)) == np.linspace(0.5, 5, 50))


def test_smoothed_profile_slope():
    sp = zdim.smoothed_profile(1)
    x = np.linspace(0, 0.5, 20001)
    slope = np.diff(sp.modified(x)) / np.diff(x)
    assert slope.min() >= 0.4
    h = 1e-6
    assert (float(sp.modified(0.49 + h)) - float(sp.modified(0.49 - h))) / (2 * h) >= 0.4


def test_smoothed_bump():
    sp = zdim.smoothed_profile(1)
    assert float(sp.bump(0.0)) == pytest.approx(math.exp(-2), rel=1e-15)
    assert float(sp.bump(0.5)) == 0.0
    assert float(sp.bump_derivative(0.0)) == pytest.approx(-4 * math.exp(-2), rel=1e-14)
    x = np.linspace(0, 0.49, 50)
    assert np.all(np.diff(sp.bump(x)) < 0)


def test_smoothed_profile_gap_and_inverse():
    sp = zdim.smoothed_profile(2)
    prof = sp.profile
    gap = zdim.rho(2) * (sp.c * math.exp(-2)) ** 0.5
    assert float(prof.forward(1e-12)) == pytest.approx(gap, rel=1e-9)
    assert float(prof.inverse(0.5 * gap)) == 0.0
    for x in (0.01, 0.2, 0.45, 0.6, 3.0):
        assert float(prof.inverse(prof.forward(x))) == pytest.approx(x, abs=1e-12)
        assert sp.modified_inverse(float(sp.modified(x))) == pytest.approx(x, abs=1e-12)


def test_ez_zeta_tail_term_example():
    # z=1, s=3: rho^-3 (1/2) (1/2)^-2 = 16
    z, s = 1.0, 3.0
    tail = zdim.rho(z) ** (-s) * z / (s - z) * 0.5 ** (1 - s / z)
    assert tail == pytest.approx(16.0, rel=1e-14)
    assert zdim.ez_zeta_numeric(z, s).real == pytest.approx(EZ_Z1_S3, rel=1e-10)


def test_ez_zeta_against_whole_line_quadrature():
    val = zdim.ez_zeta_numeric(2, 4)
    assert val.real == pytest.approx(EZ_Z2_S4, rel=1e-10)
    whole = triples.trace_of_function(zdim.smoothed_triple(2), lambda y: np.abs(y) ** -4.0, even=True)
    assert abs(val - whole) <= 1e-8 * abs(val)


def test_ez_zeta_large_s_stays_finite():
    vals = [zdim.ez_zeta_numeric(1, s).real for s in (10.0, 20.0, 40.0)]
    assert all(np.isfinite(vals)) and all(v > 0 for v in vals)


def test_ez_zeta_precondition():
    with pytest.raises(OutsideConvergence):
        zdim.ez_zeta_numeric(2, 2.05)


@pytest.mark.parametrize("z", Z_GRID)
def test_ez_residue_matches_cutoff(z):
    assert abs(zdim.ez_residue_numeric(z) - zdim.cutoff_residue(z)) <= 1e-10


@pytest.mark.parametrize("z, expected", [(2, 2 * math.pi), (1, 2.0), (4, 2 * math.pi**2)])
def test_ez_residue_examples(z, expected):
    assert zdim.ez_residue_numeric(z) == pytest.approx(expected, rel=1e-11)


def test_ez_continuation_matches_value_in_convergence_region():
    for s in (3.5, 5.0 + 1j):
        assert abs(zdim.ez_zeta_continued(2, s) - zdim.ez_zeta_numeric(2, s)) <= 1e-14 * abs(zdim.ez_zeta_numeric(2, s))
    with pytest.raises(AtPole):
        zdim.ez_zeta_continued(2, 2.0)


def test_complex_heat_trace_branch():
    z = 0.5 + 2j
    assert zdim.heat_trace_closed(z, 2.0) == pytest.approx(cmath.exp(0.5 * z * math.log(math.pi / 2)), rel=1e-15)
