"""Complex special functions: Gamma, Gauss 2F1, Hurwitz and Riemann zeta.

All routines work on Python complex scalars and use double precision only.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import AtPole, DegenerateConnection, NonConvergent, NotImplementedRegion, PreconditionError

# Lanczos coefficients, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_POLE_TOL = 1e-13


def _near_nonpositive_integer(s: complex, tol: float = _POLE_TOL) -> bool:
    n = round(s.real)
    return n <= 0 and abs(s - n) < tol


def _sin_pi(s: complex) -> complex:
    # reduce the real part first so sin(pi s) keeps its relative accuracy near the zeros
    x = s.real - 2.0 * round(s.real / 2.0)
    return cmath.sin(math.pi * complex(x, s.imag))


def _log_gamma_lanczos(s: complex) -> complex:
    # log Gamma(s) for Re(s) >= 1/2
    z = s - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def log_gamma(s: complex) -> complex:
    """A logarithm of Gamma(s); not necessarily the principal branch.

    Differences of log_gamma values exponentiate to Gamma ratios regardless of
    the branch, which is all the package uses it for.
    """
    s = complex(s)
    if _near_nonpositive_integer(s):
        raise AtPole(f"Gamma has a pole at s={s}")
    if s.real < 0.5:
        return math.log(math.pi) - cmath.log(_sin_pi(s)) - _log_gamma_lanczos(1.0 - s)
    return _log_gamma_lanczos(s)


def gamma(s: complex) -> complex:
    """Gamma function of a complex argument.

    Lanczos approximation for Re(s) >= 1/2 and the reflection formula below
    that.  Relative error stays under 1e-12 for |s| <= 30 away from the poles.
    """
    s = complex(s)
    if _near_nonpositive_integer(s):
        raise AtPole(f"Gamma has a pole at s={s}")
    if s.real < 0.5:
        return math.pi / (_sin_pi(s) * cmath.exp(_log_gamma_lanczos(1.0 - s)))
    return cmath.exp(_log_gamma_lanczos(s))


def rgamma(s: complex) -> complex:
    """1/Gamma(s), which is entire: zero at the nonpositive integers."""
    s = complex(s)
    if _near_nonpositive_integer(s, 1e-15):
        return 0j
    return 1.0 / gamma(s)


def gamma_ratio(num: complex, den: complex) -> complex:
    """Gamma(num) / Gamma(den) through log-Gamma; den at a pole gives 0."""
    num = complex(num)
    den = complex(den)
    if _near_nonpositive_integer(den, 1e-15):
        return 0j
    return cmath.exp(log_gamma(num) - log_gamma(den))


def gamma_residue(m: int) -> float:
    """Residue of Gamma at -m, i.e. (-1)^m / m!."""
    if m < 0:
        raise PreconditionError("m must be a nonnegative integer")
    return (-1.0) ** m / math.factorial(m)


def falling_factorial(q: complex, k: int) -> complex:
    """(q)_k = q (q-1) ... (q-k+1); the empty product for k = 0."""
    if k < 0:
        raise PreconditionError("k must be a nonnegative integer")
    out = 1.0
    for j in range(k):
        out = out * (q - j)
    return out


@dataclass(frozen=True)
class HypergeomParams:
    a: complex
    b: complex
    c: complex
    x: complex

    def __post_init__(self):
        if _near_nonpositive_integer(complex(self.c), 1e-15):
            raise PreconditionError(f"c={self.c} is a nonpositive integer")

    def evaluate(self) -> complex:
        return hyp2f1(self.a, self.b, self.c, self.x)


_SERIES_RADIUS = 0.95
_MAX_TERMS = 10_000


def _nonpositive_integer(v: complex) -> int | None:
    # same window as the Gamma poles, so the connection formula never sees one
    v = complex(v)
    n = round(v.real)
    if n <= 0 and abs(v - n) <= _POLE_TOL:
        return n
    return None


def _series(a: complex, b: complex, c: complex, x: complex) -> complex:
    term = 1.0 + 0j
    total = 1.0 + 0j
    for k in range(_MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x
        total += term
        if term == 0 or abs(term) < 1e-16 * abs(total):
            return total
    raise NonConvergent(f"2F1 series did not converge in {_MAX_TERMS} terms at x={x}")


def _connection(a: complex, b: complex, c: complex, x: float) -> complex:
    # x real, x < -1: two-term formula in 1/x
    mx = -x
    t1 = (
        gamma(c) * gamma(b - a) * rgamma(b) * rgamma(c - a)
        * mx ** (-a) * _series(a, 1 - c + a, 1 - b + a, 1.0 / x)
    )
    t2 = (
        gamma(c) * gamma(a - b) * rgamma(a) * rgamma(c - b)
        * mx ** (-b) * _series(b, 1 - c + b, 1 - a + b, 1.0 / x)
    )
    return t1 + t2


def _connection_limit(a: complex, b: complex, c: complex, x: float) -> complex:
    # a - b integer: Gamma(a-b) or Gamma(b-a) sits on a pole, but 2F1 is entire
    # in b.  Symmetric offsets plus one Richardson step give an O(delta^4) limit.
    def sym(delta):
        return 0.5 * (_connection(a, b + delta, c, x) + _connection(a, b - delta, c, x))

    def richardson(delta):
        return (4.0 * sym(0.5 * delta) - sym(delta)) / 3.0

    v1 = richardson(1e-3)
    v2 = richardson(2e-3)
    if abs(v1 - v2) > 1e-8 * max(abs(v1), 1e-300):
        raise DegenerateConnection(
            f"connection-formula limit unstable at a={a}, b={b}, c={c}, x={x}: {v1} vs {v2}"
        )
    return v1


def hyp2f1(a: complex, b: complex, c: complex, x: complex) -> complex:
    """Gauss hypergeometric function F(a, b; c; x).

    Supported regions:

    * terminating series (a or b a nonpositive integer), any x;
    * |x| < 0.95, direct series;
    * real x in [-1.05, -0.95], through the Pfaff transformation;
    * real x < -1.05, through the two-term connection formula in 1/x.

    Everything else, in particular the cut [1, inf), raises
    NotImplementedRegion.
    """
    a, b, c, x = complex(a), complex(b), complex(c), complex(x)
    HypergeomParams(a, b, c, x)
    if a == 0 or b == 0:
        return 1.0 + 0j

    for p in (a, b):
        n = _nonpositive_integer(p)
        if n is not None:
            total = 1.0 + 0j
            term = 1.0 + 0j
            for k in range(-n):
                term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x
                total += term
            return total

    if abs(x) < _SERIES_RADIUS:
        return _series(a, b, c, x)

    if x.imag != 0.0 or x.real >= 0.0:
        raise NotImplementedRegion(f"2F1 not implemented at x={x}")
    xr = x.real
    if xr >= -1.0 - (1.0 - _SERIES_RADIUS):
        # Pfaff: F(a,b;c;x) = (1-x)^(-a) F(a, c-b; c; x/(x-1)), argument near 1/2
        return (1.0 - xr) ** (-a) * _series(a, c - b, c, xr / (xr - 1.0))

    d = a - b
    if abs(d - round(d.real)) < 1e-12:
        return _connection_limit(a, b, c, xr)
    return _connection(a, b, c, xr)


def binomial_primitive(p: float, q: complex, x: float) -> complex:
    """Antiderivative of t -> (1 + t^p)^q vanishing at 0, evaluated at x.

    Equals x F(1/p, -q; 1 + 1/p; -x^p).
    """
    if not p > 0:
        raise PreconditionError("p must be positive")
    if x < 0:
        raise PreconditionError("x must be nonnegative")
    if x == 0:
        return 0j
    return x * hyp2f1(1.0 / p, -complex(q), 1.0 + 1.0 / p, -(x**p))


_EM_TERMS = 15
_BERNOULLI = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
)
# B_{2k} / (2k)!
_EM_COEFF = tuple(float(B / math.factorial(2 * (k + 1))) for k, B in enumerate(_BERNOULLI))


def hurwitz_zeta(s: complex, q: float) -> complex:
    """Hurwitz zeta sum_{n>=0} (n+q)^(-s), analytically continued in s.

    Euler-Maclaurin with 15 explicit terms and Bernoulli corrections through
    B_14.  Relative error (against max(1, |value|)) stays below 1e-10 for
    0 <= Re(s) <= 20, |Im(s)| <= 20 and below 1e-8 down to Re(s) = -3.
    Further left the explicit terms (n + q)^(-s) grow like 15^(-Re s) and
    cancel, so accuracy degrades steadily.
    """
    s = complex(s)
    if not q > 0:
        raise PreconditionError("q must be positive")
    if abs(s - 1.0) < _POLE_TOL:
        raise AtPole("Hurwitz zeta has a pole at s=1")
    total = 0j
    for n in range(_EM_TERMS):
        total += cmath.exp(-s * math.log(n + q))
    big = _EM_TERMS + q
    log_big = math.log(big)
    total += cmath.exp((1.0 - s) * log_big) / (s - 1.0)
    total += 0.5 * cmath.exp(-s * log_big)
    # rising factorial s (s+1) ... (s+2k-2), times big^(-s-2k+1)
    rising = s
    power = cmath.exp(-(s + 1.0) * log_big)
    for k, coeff in enumerate(_EM_COEFF):
        total += coeff * rising * power
        rising *= (s + 2 * k + 1) * (s + 2 * k + 2)
        power /= big * big
    return total


def riemann_zeta(s: complex) -> complex:
    return hurwitz_zeta(s, 1.0)
