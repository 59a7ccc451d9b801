"""Regularisation schemes realised on T_z and on discrete spectra.

* dimensional regularisation: the propagator trace tau_z((D_z^2 + m^2)^(-n))
  is finite for z < 2n and continues meromorphically in z;
* zeta-function regularisation: Gamma(s) as a Mellin integral with its pole
  at s = 0;
* the noncommutative integral res_{s=0} Tr(X |D|^(-s)) and the variation of
  zeta(0) under a scalar perturbation D -> D + a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import specfun
from .errors import (
    AtPole,
    IdentityViolated,
    OutsideConvergence,
    PreconditionError,
    UnsupportedSpectrum,
)
from .quadrature import LaurentData, QuadratureConfig, contour_residue, mellin_integral
from .triples import TRACE_CONFIG, DiscreteTriple, trace_of_function
from .zdim import DimensionParameter, tz_triple

REGULATORS = ("dimension_z", "zeta_s")

SCHWINGER_CONFIG = QuadratureConfig(abs_tol=1e-15, rel_tol=1e-12, max_subdivisions=4000)


@dataclass(frozen=True)
class PropagatorSpec:
    n: int = 2
    m: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise PreconditionError("n must be an integer >= 1")
        if not self.m > 0:
            raise PreconditionError("m must be positive")


@dataclass(frozen=True)
class GaugeScalar:
    a: float

    def __post_init__(self):
        if not abs(self.a) < 1:
            raise PreconditionError("|a| must be < 1")


def _a(a) -> float:
    return a.a if isinstance(a, GaugeScalar) else GaugeScalar(float(a)).a


@dataclass(frozen=True)
class MeromorphicFn:
    """A function of the regulator with its known simple poles (location, residue)."""

    func: Callable[[complex], complex]
    regulator: str
    poles: tuple = ()
    label: str = ""

    def __post_init__(self):
        if self.regulator not in REGULATORS:
            raise PreconditionError(f"unknown regulator {self.regulator!r}")

    def __call__(self, x: complex) -> complex:
        return self.func(x)


@dataclass(frozen=True)
class RegularizationResult:
    regulator: str
    value_fn: MeromorphicFn
    physical_point: complex
    laurent: LaurentData
    renormalized: complex

    def __post_init__(self):
        if self.laurent.order == 1 and self.renormalized != self.laurent.finite_part:
            raise PreconditionError("renormalized value must be the finite part")


def schwinger_check(spec: PropagatorSpec, p: float, cfg: QuadratureConfig = SCHWINGER_CONFIG) -> float:
    """(1/Gamma(n)) int_0^inf exp(-lam (p^2 + m^2)) lam^(n-1) dlam by quadrature."""
    q = p * p + spec.m * spec.m
    val = mellin_integral(lambda lam: np.exp(-q * lam), 2.0 * spec.n, cfg)
    return val.real / math.factorial(spec.n - 1)


def dimreg_pole_residue(spec: PropagatorSpec, k: int) -> float:
    """Residue in z of the closed propagator trace at z = 2n + 2k."""
    n, m = spec.n, spec.m
    return -2.0 * specfun.gamma_residue(k) * math.pi ** (n + k) * m ** (2 * k) / math.factorial(n - 1)


def dimreg_propagator_closed(spec: PropagatorSpec, z: complex) -> complex:
    """pi^(z/2) m^(z-2n) Gamma(n - z/2) / Gamma(n), meromorphic in z.

    Simple poles at z = 2n, 2n + 2, ...; see :func:`dimreg_pole_residue`.
    """
    z = complex(z)
    u = spec.n - 0.5 * z
    k = round(-u.real)
    if k >= 0 and abs(u + k) < 1e-13:
        raise AtPole(f"propagator trace has a pole at z={z}")
    log_pref = 0.5 * z * math.log(math.pi) + (z - 2 * spec.n) * math.log(spec.m)
    return complex(np.exp(log_pref) * specfun.gamma(u)) / math.factorial(spec.n - 1)


def dimreg_fn(spec: PropagatorSpec, n_poles: int = 4, variable: str = "z") -> MeromorphicFn:
    """The closed propagator trace as a MeromorphicFn in z, or in w = 2n - z."""
    poles = tuple((2 * spec.n + 2 * k, dimreg_pole_residue(spec, k)) for k in range(n_poles))
    if variable == "z":
        return MeromorphicFn(lambda z: dimreg_propagator_closed(spec, z), "dimension_z", poles, "dimreg(z)")
    if variable == "w":
        # z = 2n - w flips the sign of every residue
        wpoles = tuple((2 * spec.n - loc, -res) for loc, res in poles)
        return MeromorphicFn(
            lambda w: dimreg_propagator_closed(spec, 2 * spec.n - w), "dimension_z", wpoles, "dimreg(w)"
        )
    raise PreconditionError(f"unknown variable {variable!r}")


def dimreg_propagator_numeric(spec: PropagatorSpec, z, cfg: QuadratureConfig = TRACE_CONFIG) -> float:
    """tau_z((D_z^2 + m^2)^(-n)) by quadrature; needs z < 2n."""
    zp = z if isinstance(z, DimensionParameter) else DimensionParameter(float(z))
    if zp.z >= 2 * spec.n:
        raise OutsideConvergence(f"the trace diverges for z >= 2n = {2 * spec.n}")
    m2 = spec.m * spec.m
    n = spec.n
    return trace_of_function(tz_triple(zp), lambda y: (y * y + m2) ** (-n), cfg, even=True).real


def renormalize(
    r: MeromorphicFn, physical_point: complex, cfg: QuadratureConfig | None = None, radius: float = 0.25
) -> RegularizationResult:
    """Subtract the simple pole of ``r`` at the physical point.

    The renormalised value is the finite part of the Laurent expansion; at a
    regular point it is just the value.
    """
    data = contour_residue(r.func, physical_point, radius=radius)
    return RegularizationResult(r.regulator, r, complex(physical_point), data, data.finite_part)


def zeta_reg_gamma(s: complex, cfg: QuadratureConfig = SCHWINGER_CONFIG) -> complex:
    """Gamma(s) as int t^(s-1) e^(-t) dt for Re(s) > 0.1, by continuation elsewhere."""
    s = complex(s)
    if s.real > 0.1:
        return mellin_integral(lambda t: np.exp(-t), 2.0 * s, cfg)
    return specfun.gamma(s)


def zeta_reg_fn(n_poles: int = 4) -> MeromorphicFn:
    poles = tuple((-k, specfun.gamma_residue(k)) for k in range(n_poles))
    return MeromorphicFn(zeta_reg_gamma, "zeta_s", poles, "Gamma")


def _positive_modulus_handle(base: DiscreteTriple):
    h = base.zeta_handle
    if h is None or h.convention != "modulus":
        raise UnsupportedSpectrum("need a modulus-convention zeta handle")
    ks = base.indices(base.first, base.first + 64)
    if np.any(np.asarray(base.eigenvalue(ks), dtype=float) <= 0):
        raise UnsupportedSpectrum("the shifted zeta needs a positive spectrum")
    return h


def nc_integral(base: DiscreteTriple, a, n: int, cfg: QuadratureConfig | None = None) -> float:
    """Noncommutative integral of (a D^(-1))^n: a^n res_{s=0} zeta_base(s + n)."""
    a = _a(a)
    if n < 1:
        raise PreconditionError("n must be >= 1")
    h = _positive_modulus_handle(base)
    if a == 0:
        return 0.0
    data = contour_residue(lambda s: a**n * h(s + n), 0.0, abs_tol=1e-13)
    return float(data.residue.real)


def _is_integer_spectrum(base: DiscreteTriple) -> bool:
    ks = base.indices(base.first, base.first + 64)
    lam = np.asarray(base.eigenvalue(ks), dtype=float)
    mult = np.asarray(base.multiplicity(ks), dtype=float)
    return base.first == 1 and np.array_equal(lam, ks) and np.all(mult == 1)


def spectral_action_check(base: DiscreteTriple, a, cfg: QuadratureConfig | None = None) -> tuple[float, float]:
    """zeta_{D+a}(0) - zeta_D(0) against sum_n (-1)^n/n of the nc integrals.

    On the spectrum {1, 2, 3, ...} the left side is a difference of Hurwitz
    zeta values.  The series stops past the top pole of the base zeta, where
    every further nc integral vanishes.
    """
    a = _a(a)
    if not _is_integer_spectrum(base):
        raise UnsupportedSpectrum("spectral_action_check needs the spectrum {1, 2, 3, ...}")
    lhs = (specfun.hurwitz_zeta(0.0, 1.0 + a) - specfun.riemann_zeta(0.0)).real
    top = math.ceil(base.abscissa)
    rhs = sum((-1) ** n / n * nc_integral(base, a, n) for n in range(1, top + 2))
    if abs(lhs - rhs) > 1e-9:
        raise IdentityViolated(f"zeta variation {lhs} differs from the nc-integral series {rhs}")
    return lhs, rhs


def dimreg_vs_ncintegral(base: DiscreteTriple, a, n: int, cfg: QuadratureConfig | None = None) -> tuple[float, float]:
    """Residue at z = 0 of a^n pi^(z/2) Gamma((n-z)/2)/Gamma(n/2) zeta_base(n-z), and -nc_integral."""
    a = _a(a)
    h = _positive_modulus_handle(base)
    minus_nc = -nc_integral(base, a, n)
    if a == 0:
        return 0.0, minus_nc

    def moment(z):
        return (
            a**n
            * math.pi ** (0.5 * z)
            * specfun.gamma_ratio(0.5 * (n - z), 0.5 * n)
            * h(n - z)
        )

    data = contour_residue(moment, 0.0, abs_tol=1e-13)
    res_z0 = float(data.residue.real)
    if abs(res_z0 - minus_nc) > 1e-8:
        raise IdentityViolated(f"z-residue {res_z0} differs from -nc integral {minus_nc}")
    return res_z0, minus_nc


__all__ = [
    "PropagatorSpec",
    "GaugeScalar",
    "MeromorphicFn",
    "RegularizationResult",
    "schwinger_check",
    "dimreg_pole_residue",
    "dimreg_propagator_closed",
    "dimreg_fn",
    "dimreg_propagator_numeric",
    "renormalize",
    "zeta_reg_gamma",
    "zeta_reg_fn",
    "nc_integral",
    "spectral_action_check",
    "dimreg_vs_ncintegral",
]
