"""The z-dimensional multiplication triple T_z and its smoothed variant E_z.

D_z is multiplication by f_z(x) = rho(z) sgn(x) |x|^(1/z) on L^2(R), with
trace tau_z = (1/2) dx and rho(z) = pi^(-1/2) Gamma(z/2 + 1)^(1/z).  The
normalisation makes the heat trace exactly (pi/lambda)^(z/2).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import specfun
from .errors import AtPole, OutsideConvergence, PreconditionError
from .quadrature import LaurentData, QuadratureConfig, contour_residue, integrate
from .triples import TRACE_CONFIG, MultiplicationTriple, SpectrumProfile

Z_MAX = 10.0
_POLE_TOL = 1e-13
_REMOVABLE_OFFSET = 1e-6


@dataclass(frozen=True)
class DimensionParameter:
    z: float
    z_max: float = Z_MAX

    def __post_init__(self):
        if not (0.0 < self.z <= self.z_max):
            raise PreconditionError(f"z must lie in (0, {self.z_max}], got {self.z}")


def _z(z) -> float:
    if isinstance(z, DimensionParameter):
        return z.z
    return DimensionParameter(float(z)).z


def rho(z) -> float:
    """Normalisation constant pi^(-1/2) Gamma(z/2 + 1)^(1/z)."""
    z = _z(z)
    return math.exp(specfun.log_gamma(0.5 * z + 1.0).real / z) / math.sqrt(math.pi)


def tz_profile(z) -> SpectrumProfile:
    z = _z(z)
    r = rho(z)

    def forward(x):
        x = np.asarray(x, dtype=float)
        return r * np.sign(x) * np.abs(x) ** (1.0 / z)

    def inverse(y):
        y = np.asarray(y, dtype=float)
        return np.sign(y) * (np.abs(y) / r) ** z

    return SpectrumProfile(forward, inverse, label=f"T_{z:g}")


def tz_triple(z) -> MultiplicationTriple:
    z = _z(z)
    return MultiplicationTriple(tz_profile(z), 0.5, abscissa=z)


def heat_trace_closed(z, lam: float):
    """(pi/lam)^(z/2).

    ``z`` may be complex here so the formula can be probed off the real ray;
    the result is then complex.
    """
    if not lam > 0:
        raise PreconditionError("lam must be positive")
    if isinstance(z, complex):
        return cmath.exp(0.5 * z * (math.log(math.pi) - math.log(lam)))
    z = _z(z)
    return math.exp(0.5 * z * (math.log(math.pi) - math.log(lam)))


def _near_nonpositive_integer(u: complex) -> int | None:
    m = round(u.real)
    if m <= 0 and abs(u - m) < _POLE_TOL:
        return -m
    return None


def _gamma_quotient(z: float, s: complex) -> complex:
    return math.pi ** (0.5 * z) * specfun.gamma_ratio(0.5 * (s - z), 0.5 * s)


def zeta_closed(z, s: complex) -> complex:
    """Resolvent zeta tau_z((1 + D_z^2)^(-s/2)) = pi^(z/2) Gamma((s-z)/2) / Gamma(s/2).

    The points s = z - 2m (m >= 1) are poles of Gamma((s-z)/2); they cancel
    only when Gamma(s/2) has a pole there too, i.e. for even integer z and
    s <= 0.  Cancelled points are evaluated by averaging s +- 1e-6; genuine
    poles raise AtPole.
    """
    z = _z(z)
    s = complex(s)
    if abs(s - z) < _POLE_TOL:
        raise AtPole(f"zeta_closed has a pole at s=z={z}")
    if _near_nonpositive_integer(0.5 * (s - z)) is None:
        return _gamma_quotient(z, s)
    if _near_nonpositive_integer(0.5 * s) is None:
        raise AtPole(f"zeta_closed has a pole at s={s} (z={z})")
    d = _REMOVABLE_OFFSET
    return 0.5 * (_gamma_quotient(z, s + d) + _gamma_quotient(z, s - d))


def zeta_residue(z) -> float:
    """The stated residue value pi^(z/2) / Gamma(z/2) at s = z.

    The contour residue of :func:`zeta_closed` at s = z is twice this
    number, because Gamma((s-z)/2) has residue 2 in the variable s; see
    :func:`zeta_residue_numeric` and :func:`cutoff_residue`.
    """
    z = _z(z)
    return math.pi ** (0.5 * z) / specfun.gamma(0.5 * z).real


def zeta_residue_numeric(z, radius: float = 0.25) -> LaurentData:
    """Contour Laurent data of zeta_closed at s = z."""
    z = _z(z)
    return contour_residue(lambda s: zeta_closed(z, s), z, radius=radius)


def zeta_continued(z, s: complex, cfg: QuadratureConfig = TRACE_CONFIG) -> complex:
    """Continuation of the resolvent zeta of T_z without Gamma functions.

    After x = (y/rho)^z the zeta becomes rho^(-z) int_0^inf (1 + y^(2/z))^(-s/2) dy.
    The part over [1, inf) is continued by subtracting the first J terms of
    the binomial expansion in y^(-2/z) and integrating them in closed form.
    Poles sit at s = z - 2j with residue z binom(-(z-2j)/2, j) rho^(-z).
    """
    z = _z(z)
    s = complex(s)
    J = max(0, math.ceil(0.5 * (z - s.real))) + 2
    coeff = [specfun.falling_factorial(-0.5 * s, j) / math.factorial(j) for j in range(J + 40)]
    for j in range(J):
        if abs(s + 2 * j - z) < _POLE_TOL:
            raise AtPole(f"zeta_continued has a pole at s={s} (z={z})")
    switch = 2.0**z  # y^(-2/z) <= 1/4 beyond this point

    def head(y):
        return np.exp(-0.5 * s * np.log1p(y ** (2.0 / z)))

    def remainder(y):
        y = np.asarray(y, dtype=float)
        u = y ** (-2.0 / z)
        lead = np.exp(-(s / z) * np.log(y))
        out = np.empty(y.shape, dtype=complex)
        near = y < switch
        if np.any(near):
            un = u[near]
            full = np.exp(-0.5 * s * np.log1p(un))
            partial = sum(coeff[j] * un**j for j in range(J))
            out[near] = lead[near] * (full - partial)
        far = ~near
        if np.any(far):
            ly = np.log(y[far])
            out[far] = sum(coeff[j] * np.exp(-((s + 2 * j) / z) * ly) for j in range(J, J + 40))
        return out

    closed = sum(coeff[j] * z / (s + 2 * j - z) for j in range(J))
    body = integrate(head, 0.0, 1.0, cfg) + integrate(remainder, 1.0, math.inf, cfg) + closed
    return rho(z) ** (-z) * body


def cutoff_zeta(z, s: complex) -> complex:
    """Modulus zeta with an infra-red cutoff: rho(z)^(-s) z / (s - z)."""
    z = _z(z)
    s = complex(s)
    if abs(s - z) < _POLE_TOL:
        raise AtPole(f"cutoff_zeta has a pole at s=z={z}")
    return cmath.exp(-s * math.log(rho(z))) * z / (s - z)


def cutoff_residue(z) -> float:
    """2 pi^(z/2) / Gamma(z/2), equal to z rho(z)^(-z)."""
    return 2.0 * zeta_residue(z)


def _bump(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(all="ignore"):
        return np.where(x < 0.5, np.exp(1.0 / (x - 0.5)), 0.0)


def _bump_derivative(x):
    # g'(x) = -g(x) / (x - 1/2)^2, so |g'| = g / (x - 1/2)^2
    x = np.asarray(x, dtype=float)
    with np.errstate(all="ignore"):
        return np.where(x < 0.5, -_bump(x) / (x - 0.5) ** 2, 0.0)


@dataclass(frozen=True)
class SmoothedProfile:
    """Profile x -> rho sgn(x) f(|x|)^(1/z) with f(x) = x + c g(x).

    g(x) = exp(1/(x - 1/2)) below 1/2 and 0 above: smooth, decreasing,
    g(0) = e^-2.  With c |g'| <= 1/2 the modified map f has slope at least
    1/2, is bounded away from 0 and equals x for x >= 1/2.
    """

    z: float
    c: float
    profile: SpectrumProfile = field(repr=False)

    @staticmethod
    def bump(x):
        return _bump(x)

    @staticmethod
    def bump_derivative(x):
        return _bump_derivative(x)

    def modified(self, x):
        x = np.asarray(x, dtype=float)
        return x + self.c * _bump(x)

    def modified_inverse(self, y: float) -> float:
        if y >= 0.5:
            return y
        f0 = self.c * math.exp(-2.0)
        if y <= f0:
            return 0.0
        return brentq(lambda x: float(self.modified(x)) - y, 0.0, 0.5, xtol=1e-15, rtol=1e-15)


def smoothed_profile(z, grid_points: int = 200_001) -> SmoothedProfile:
    z = _z(z)
    r = rho(z)
    x = np.linspace(0.0, 0.5, grid_points)[:-1]
    sup = float(np.max(np.abs(_bump_derivative(x))))
    c = 1.0 / (2.0 * sup)
    f0 = c * math.exp(-2.0)

    def modified(x):
        return x + c * _bump(x)

    def forward(x):
        x = np.asarray(x, dtype=float)
        return r * np.sign(x) * modified(np.abs(x)) ** (1.0 / z)

    def inv_scalar(y: float) -> float:
        w = (abs(y) / r) ** z
        if w >= 0.5:
            return math.copysign(w, y)
        if w <= f0:
            # inside the spectral gap (-rho f0^(1/z), rho f0^(1/z))
            return 0.0
        return math.copysign(
            brentq(lambda t: float(modified(t)) - w, 0.0, 0.5, xtol=1e-15, rtol=1e-15), y
        )

    def inverse(y):
        y = np.asarray(y, dtype=float)
        return np.vectorize(inv_scalar, otypes=[float])(y)

    # forward(0) would be 0 by sgn; the gap lives in the image of x != 0
    prof = SpectrumProfile(forward, inverse, label=f"E_{z:g}")
    return SmoothedProfile(z=z, c=c, profile=prof)


def smoothed_triple(z) -> MultiplicationTriple:
    return MultiplicationTriple(smoothed_profile(z).profile, 0.5)


def _ez_split(z: float, s: complex, sp: SmoothedProfile, cfg: QuadratureConfig) -> complex:
    log_r = math.log(rho(z))

    def body(x):
        return np.exp(-s * log_r - (s / z) * np.log(sp.modified(x)))

    inner = integrate(body, 0.0, 0.5, cfg)
    tail = cmath.exp(-s * log_r) * z / (s - z) * cmath.exp((1.0 - s / z) * math.log(0.5))
    return inner + tail


def ez_zeta_numeric(z, s: complex, cfg: QuadratureConfig = TRACE_CONFIG) -> complex:
    """Modulus zeta tau_z(|E_z|^(-s)), split at x = 1/2.

    The piece over [0, 1/2] is done by quadrature; beyond 1/2 the profile is
    the plain power and integrates to rho^(-s) z/(s-z) (1/2)^(1 - s/z).
    """
    z = _z(z)
    s = complex(s)
    if s.real <= z + 0.1:
        raise OutsideConvergence(f"need Re(s) > z + 0.1, got s={s}")
    return _ez_split(z, s, smoothed_profile(z), cfg)


def ez_zeta_continued(z, s: complex, cfg: QuadratureConfig = TRACE_CONFIG) -> complex:
    """Meromorphic continuation of :func:`ez_zeta_numeric`; simple pole at s = z only."""
    z = _z(z)
    s = complex(s)
    if abs(s - z) < _POLE_TOL:
        raise AtPole(f"ez_zeta has a pole at s=z={z}")
    return _ez_split(z, s, smoothed_profile(z), cfg)


def ez_residue_numeric(z, cfg: QuadratureConfig = TRACE_CONFIG) -> float:
    """Contour residue of the continued E_z zeta at s = z."""
    z = _z(z)
    sp = smoothed_profile(z)
    data = contour_residue(lambda s: _ez_split(z, complex(s), sp, cfg), z, abs_tol=1e-13)
    return data.residue.real


__all__ = [
    "Z_MAX",
    "DimensionParameter",
    "SmoothedProfile",
    "rho",
    "tz_profile",
    "tz_triple",
    "heat_trace_closed",
    "zeta_closed",
    "zeta_continued",
    "zeta_residue",
    "zeta_residue_numeric",
    "cutoff_zeta",
    "cutoff_residue",
    "smoothed_profile",
    "smoothed_triple",
    "ez_zeta_numeric",
    "ez_zeta_continued",
    "ez_residue_numeric",
]
