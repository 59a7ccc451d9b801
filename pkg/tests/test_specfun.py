from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ztriple import specfun
from ztriple.errors import AtPole, NotImplementedRegion, PreconditionError

# values frozen from mpmath at 30 digits
GAMMA_37_21 = complex(-1.85982529596651961326218998635, 1.16234015269686177313489625568)
HURWITZ_25_03 = 21.0692392022477249171837780125
HURWITZ_05_3J_17 = complex(-0.316460819636033795633700503732, -0.333238193513416941892120393956)


@pytest.mark.parametrize(
    "s, expected",
    [(1, 1.0), (5, 24.0), (0.5, math.sqrt(math.pi)), (-0.5, -2 * math.sqrt(math.pi)), (-2.5, -0.945308720482941881225689324449)],
)
def test_gamma_values(s, expected):
    assert specfun.gamma(s).real == pytest.approx(expected, rel=1e-12)


def test_gamma_complex_value():
    assert abs(specfun.gamma(3.7 + 2.1j) - GAMMA_37_21) <= 1e-12 * abs(GAMMA_37_21)


@given(st.floats(-30, 30), st.floats(-30, 30))
def test_gamma_against_mpmath(x, y):
    s = complex(x, y)
    assume(abs(s) <= 30)
    assume(min(abs(s + k) for k in range(0, 32)) > 1e-3)
    ref = complex(mpmath.gamma(mpmath.mpc(x, y)))
    assert abs(specfun.gamma(s) - ref) <= 1e-11 * abs(ref)


@given(st.floats(0.1, 10), st.floats(-5, 5))
def test_gamma_recurrence(x, y):
    s = complex(x, y)
    assert abs(specfun.gamma(s + 1) - s * specfun.gamma(s)) <= 1e-12 * abs(specfun.gamma(s + 1))


@pytest.mark.parametrize("m", [0, 1, 2, 7])
def test_gamma_poles(m):
    with pytest.raises(AtPole):
        specfun.gamma(-m)
    assert specfun.rgamma(-m) == 0


def test_gamma_residue():
    assert specfun.gamma_residue(0) == 1.0
    assert specfun.gamma_residue(2) == 0.5
    assert specfun.gamma_residue(3) == pytest.approx(-1 / 6)
    with pytest.raises(PreconditionError):
        specfun.gamma_residue(-1)


def test_gamma_ratio_vanishes_at_denominator_pole():
    assert specfun.gamma_ratio(0.5, -2.0) == 0
    assert specfun.gamma_ratio(3.5, 2.5).real == pytest.approx(2.5, rel=1e-13)


def test_falling_factorial():
    assert specfun.falling_factorial(5, 0) == 1
    assert specfun.falling_factorial(5, 3) == 60
    assert specfun.falling_factorial(0.5, 2) == pytest.approx(-0.25)
    with pytest.raises(PreconditionError):
        specfun.falling_factorial(1, -1)


@pytest.mark.parametrize(
    "a, b, c, x, expected",
    [
        (0.5, 1.2, 2.3, 0.7, 1.30384022940413678672846583893),
        (0.5, 1.2, 2.3, -0.98, 0.823704122197215211277101465609),
        (0.5, 1.2, 2.3, -7.0, 0.50588366696549693516157013067),
        (1.0, 2.0, 2.5, -4.0, 0.253947485353873864062346903233),
        (1.0, 1.0, 2.0, -3.0, math.log(4.0) / 3.0),
    ],
)
def test_hyp2f1_regions(a, b, c, x, expected):
    assert specfun.hyp2f1(a, b, c, x).real == pytest.approx(expected, rel=1e-10)


def test_hyp2f1_terminating_and_trivial():
    # F(-2, b; c; x) = 1 - 2bx/c + b(b+1)x^2 / (c(c+1))
    b, c, x = 1.5, 2.5, 3.0
    expected = 1 - 2 * b * x / c + b * (b + 1) * x * x / (c * (c + 1))
    assert specfun.hyp2f1(-2, b, c, x).real == pytest.approx(expected, rel=1e-14)
    assert specfun.hyp2f1(0, 1, 2, 5.0) == 1


def test_hyp2f1_parameter_object():
    p = specfun.HypergeomParams(0.5, 1.2, 2.3, 0.7)
    assert p.evaluate().real == pytest.approx(1.30384022940413678672846583893, rel=1e-12)
    with pytest.raises(PreconditionError):
        specfun.HypergeomParams(1, 1, -2, 0.5)


def test_hyp2f1_unsupported_region():
    with pytest.raises(NotImplementedRegion):
        specfun.hyp2f1(0.5, 0.5, 1.5, 1.5)
    with pytest.raises(NotImplementedRegion):
        specfun.hyp2f1(0.5, 0.5, 1.5, 0.99j)


def test_binomial_primitive_values():
    assert specfun.binomial_primitive(2.0, -1.0, 1.0).real == pytest.approx(math.pi / 4, abs=1e-10)
    assert specfun.binomial_primitive(1.0, 1.0, 2.0).real == pytest.approx(4.0, rel=1e-13)
    assert specfun.binomial_primitive(3.0, -0.5, 2.0).real == pytest.approx(1.40218210532545426117501907905, rel=1e-10)
    assert specfun.binomial_primitive(2.0, -1.0, 0.0) == 0


@given(st.floats(0.5, 4.0), st.floats(-3.0, 2.0), st.floats(0.1, 3.0))
def test_binomial_primitive_derivative(p, q, x):
    h = 1e-5
    fd = (specfun.binomial_primitive(p, q, x + h) - specfun.binomial_primitive(p, q, x - h)) / (2 * h)
    exact = (1 + x**p) ** q
    assert abs(fd - exact) <= 1e-6 * max(1.0, exact)


def test_binomial_primitive_preconditions():
    with pytest.raises(PreconditionError):
        specfun.binomial_primitive(0.0, 1.0, 1.0)
    with pytest.raises(PreconditionError):
        specfun.binomial_primitive(1.0, 1.0, -1.0)


def test_zeta_values():
    assert specfun.riemann_zeta(2).real == pytest.approx(math.pi**2 / 6, rel=1e-14)
    assert specfun.riemann_zeta(0).real == pytest.approx(-0.5, abs=1e-13)
    assert specfun.riemann_zeta(-1).real == pytest.approx(-1 / 12, abs=1e-13)
    assert specfun.hurwitz_zeta(2.5, 0.3).real == pytest.approx(HURWITZ_25_03, rel=1e-12)
    assert abs(specfun.hurwitz_zeta(0.5 + 3j, 1.7) - HURWITZ_05_3J_17) <= 1e-11


@given(st.floats(0.05, 3.0))
def test_hurwitz_at_zero(q):
    assert specfun.hurwitz_zeta(0.0, q).real == pytest.approx(0.5 - q, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("q", [0.3, 1.0, 2.5])
def test_hurwitz_negative_integers_are_bernoulli(n, q):
    # zeta_H(-n, q) = -B_{n+1}(q) / (n + 1)
    ref = -float(mpmath.bernpoly(n + 1, q)) / (n + 1)
    assert abs(specfun.hurwitz_zeta(-n, q) - ref) <= 1e-8 * max(1.0, abs(ref))


@given(st.floats(-3.0, 0.0), st.floats(-20.0, 20.0), st.floats(0.2, 3.0))
def test_hurwitz_against_mpmath_left_strip(x, y, q):
    s = complex(x, y)
    ref = complex(mpmath.zeta(mpmath.mpc(x, y), q))
    assert abs(specfun.hurwitz_zeta(s, q) - ref) <= 1e-8 * max(1.0, abs(ref))


@given(st.floats(1.5, 8.0), st.floats(0.3, 3.0))
def test_hurwitz_against_direct_summation(x, q):
    n = np.arange(200_000, dtype=float)
    head = np.sum((n + q) ** -x)
    big = 200_000 - 0.5 + q
    tail = big ** (1 - x) / (x - 1)
    assert specfun.hurwitz_zeta(x, q).real == pytest.approx(head + tail, rel=1e-8)


@given(st.floats(0.0, 20.0), st.floats(-20.0, 20.0), st.floats(0.2, 3.0))
def test_hurwitz_against_mpmath_right_half_plane(x, y, q):
    s = complex(x, y)
    assume(abs(s) <= 20 and abs(s - 1) > 1e-3)
    ref = complex(mpmath.zeta(mpmath.mpc(x, y), q))
    assert abs(specfun.hurwitz_zeta(s, q) - ref) <= 1e-10 * max(1.0, abs(ref))


def test_hurwitz_pole_and_domain():
    with pytest.raises(AtPole):
        specfun.hurwitz_zeta(1.0, 0.5)
    with pytest.raises(PreconditionError):
        specfun.hurwitz_zeta(2.0, 0.0)


def test_hurwitz_residue_at_one():
    from ztriple.quadrature import contour_residue

    data = contour_residue(lambda s: specfun.hurwitz_zeta(s, 1.0), 1.0)
    assert data.residue.real == pytest.approx(1.0, abs=1e-12)
    assert data.finite_part.real == pytest.approx(0.5772156649015329, abs=1e-10)


@given(st.floats(-10, 10), st.floats(-10, 10))
def test_gamma_reflection(x, y):
    s = complex(x, y)
    assume(min(abs(s - k) for k in range(-11, 12)) >= 0.1)
    import cmath

    val = specfun.gamma(s) * specfun.gamma(1 - s) * cmath.sin(math.pi * s) / math.pi
    assert abs(val - 1) <= 1e-11


@pytest.mark.parametrize("x", [-0.2, -0.6, -0.9, -1.5, -3.0, -10.0])
def test_hyp2f1_log_family_across_regions(x):
    expected = -math.log(1 - x) / x
    assert specfun.hyp2f1(1, 1, 2, x).real == pytest.approx(expected, rel=1e-10)


def test_hyp2f1_doc_examples():
    assert specfun.hyp2f1(3.3, 0, 2, 0.7) == 1
    assert specfun.hyp2f1(1, 1, 2, 0.5).real == pytest.approx(2 * math.log(2), rel=1e-13)
    assert specfun.binomial_primitive(1.7, 0.0, 5.0).real == pytest.approx(5.0, rel=1e-13)
    assert specfun.falling_factorial(3, 2) == 6
    assert specfun.falling_factorial(-1, 3) == -6
    assert specfun.riemann_zeta(4).real == pytest.approx(math.pi**4 / 90, rel=1e-13)
    assert specfun.hurwitz_zeta(0, 1.3).real == pytest.approx(-0.8, abs=1e-12)
