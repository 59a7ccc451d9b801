"""Adaptive quadrature, Mellin integrals and contour-based Laurent data.

Every integral in the package ends up here.  The panel rule is a pair of
Gauss-Legendre rules (15 and 7 points) evaluated on the same panel; the
difference of the two is the panel error estimate, and the worst panel is
bisected until the global estimate meets the tolerance.  Complex integrands
share panels, so the error control stays scalar.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    Inconsistent,
    InvalidInterval,
    NonConvergent,
    OutsideConvergence,
    PoleTooClose,
    PreconditionError,
    ZTripleError,
)

TAIL_TRANSFORMS = ("rational", "exp_decay", "log_rational")

_X_HI, _W_HI = np.polynomial.legendre.leggauss(15)
_X_LO, _W_LO = np.polynomial.legendre.leggauss(7)
_NODES = np.concatenate([_X_HI, _X_LO])
_N_HI = len(_X_HI)


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    tail_transform: str = "rational"

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise PreconditionError("abs_tol and rel_tol must be positive")
        if self.max_subdivisions < 1:
            raise PreconditionError("max_subdivisions must be >= 1")
        if self.tail_transform not in TAIL_TRANSFORMS:
            raise PreconditionError(f"unknown tail_transform {self.tail_transform!r}")

    def with_transform(self, tail_transform: str) -> "QuadratureConfig":
        return QuadratureConfig(self.abs_tol, self.rel_tol, self.max_subdivisions, tail_transform)


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class LaurentData:
    """Leading Laurent data of a meromorphic function at ``location``.

    ``order`` is 1 for a simple pole and 0 for a regular point, in which case
    ``residue`` is zero and ``finite_part`` is the function value.
    """

    location: complex
    order: int
    residue: complex
    finite_part: complex

    def __post_init__(self):
        if self.order < 0:
            raise PreconditionError("order must be >= 0")
        if self.order == 0 and self.residue != 0:
            raise PreconditionError("a regular point carries no residue")


def _evaluate(f: Callable, x: np.ndarray) -> np.ndarray:
    with np.errstate(all="ignore"):
        try:
            y = np.asarray(f(x), dtype=complex)
            if y.shape != x.shape:
                y = np.broadcast_to(y, x.shape).astype(complex)
        except (TypeError, ValueError):
            # scalar-only integrand
            y = np.array([complex(f(float(xi))) for xi in x])
    return y


def _panel(f: Callable, a: float, b: float) -> tuple[complex, float]:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    y = _evaluate(f, mid + half * _NODES)
    if not np.all(np.isfinite(y)):
        bad = (mid + half * _NODES)[~np.isfinite(y)][0]
        raise NonConvergent(f"integrand is not finite at x={bad!r}")
    hi = half * complex(_W_HI @ y[:_N_HI])
    lo = half * complex(_W_LO @ y[_N_HI:])
    return hi, abs(hi - lo)


def _adaptive(f: Callable, a: float, b: float, cfg: QuadratureConfig) -> complex:
    counter = itertools.count()
    value, err = _panel(f, a, b)
    heap = [(-err, next(counter), a, b, value, err)]
    total, total_err = value, err
    n_panels = 1
    while True:
        if total_err <= cfg.abs_tol + cfg.rel_tol * abs(total):
            # resum to shed drift from the running updates
            total = sum(p[4] for p in heap)
            total_err = sum(p[5] for p in heap)
            if total_err <= cfg.abs_tol + cfg.rel_tol * abs(total):
                return total
        if n_panels >= cfg.max_subdivisions:
            raise NonConvergent(
                f"subdivision budget {cfg.max_subdivisions} exhausted on [{a}, {b}]; "
                f"error estimate {total_err:.3e}"
            )
        _, _, a0, b0, v0, e0 = heapq.heappop(heap)
        m = 0.5 * (a0 + b0)
        if not a0 < m < b0:
            raise NonConvergent(f"panel [{a0}, {b0}] can no longer be bisected")
        v1, e1 = _panel(f, a0, m)
        v2, e2 = _panel(f, m, b0)
        heapq.heappush(heap, (-e1, next(counter), a0, m, v1, e1))
        heapq.heappush(heap, (-e2, next(counter), m, b0, v2, e2))
        total += v1 + v2 - v0
        total_err += e1 + e2 - e0
        n_panels += 1


def _masked(x: np.ndarray, jac: np.ndarray, fx: np.ndarray) -> np.ndarray:
    out = fx * jac
    # mapped points beyond the float range carry no mass under the decay assumption
    far = ~np.isfinite(x) | ~np.isfinite(jac)
    out[far] = 0.0
    return out


def _upper_tail(f: Callable, a: float, cfg: QuadratureConfig) -> complex:
    """Integral of f over [a, inf) via the configured variable change."""
    if cfg.tail_transform == "rational":
        def g(t):
            with np.errstate(all="ignore"):
                x = a + t / (1.0 - t)
                jac = 1.0 / (1.0 - t) ** 2
            return _masked(x, jac, _evaluate(f, x))
        return _adaptive(g, 0.0, 1.0, cfg)

    if cfg.tail_transform == "exp_decay":
        # x = a - ln(v) on [a, a + cut]; 1 - t would not resolve anything past
        # x ~ 37, so the remote remainder goes through the rational map
        cut = 40.0

        def g(v):
            x = a - np.log(v)
            return _evaluate(f, x) / v

        bulk = _adaptive(g, math.exp(-cut), 1.0, cfg)
        return bulk + _upper_tail(f, a + cut, cfg.with_transform("rational"))

    # log_rational: [a, a+1] directly, then x = a + exp(u / (1 - u)) up to
    # x ~ e^600; the remote remainder comes from a power law fitted there
    head = _adaptive(f, a, a + 1.0, cfg)
    y_max = _LOG_TAIL_CUT

    def g(u):
        with np.errstate(all="ignore"):
            y = u / (1.0 - u)
            ey = np.exp(y)
            x = a + ey
            jac = ey / (1.0 - u) ** 2
        return _masked(x, jac, _evaluate(f, x))

    bulk = _adaptive(g, 0.0, y_max / (1.0 + y_max), cfg)
    return head + bulk + _power_law_remainder(f, a + math.exp(y_max))


_LOG_TAIL_CUT = 600.0


def _power_law_remainder(f: Callable, x1: float) -> complex:
    """Integral of f over [x1, inf) assuming f ~ C x^(-p) there."""
    x0 = x1 / math.e
    f0, f1 = _evaluate(f, np.array([x0, x1]))
    if f1 == 0:
        return 0j
    if f0 == 0 or not np.isfinite(f0 * f1):
        raise NonConvergent("irregular integrand far out in the tail")
    p = math.log(abs(f0) / abs(f1))
    if p <= 1.0 + 1e-6:
        raise NonConvergent(f"tail decays like x^-{p:.4g}; not integrable")
    return complex(f1) * x1 / (p - 1.0)


def integrate(f: Callable, a: float, b: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Integrate a (possibly complex-valued) function over [a, b].

    Either endpoint may be infinite.  ``f`` is called with numpy arrays of
    abscissae when it supports that, otherwise point by point.

    Raises
    ------
    InvalidInterval
        if ``a >= b``.
    NonConvergent
        if the subdivision budget runs out before the tolerance is met.
    """
    a = float(a)
    b = float(b)
    if math.isnan(a) or math.isnan(b) or not a < b:
        raise InvalidInterval(f"need a < b, got a={a}, b={b}")
    if math.isinf(a) and math.isinf(b):
        return integrate(f, a, 0.0, cfg) + integrate(f, 0.0, b, cfg)
    if math.isinf(a):
        return integrate(lambda x: f(-x), -b, math.inf, cfg)
    if math.isinf(b):
        return _upper_tail(f, a, cfg)
    return _adaptive(f, a, b, cfg)


def _circle(f: Callable, s0: complex, radius: float, n_points: int):
    theta = 2.0 * np.pi * np.arange(n_points) / n_points
    phase = np.exp(1j * theta)
    values = np.empty(n_points, dtype=complex)
    for k, w in enumerate(phase):
        try:
            values[k] = complex(f(s0 + radius * w))
        except (ZTripleError, ZeroDivisionError, OverflowError) as exc:
            raise PoleTooClose(
                f"evaluation failed at s={s0 + radius * w} on the circle |s-{s0}|={radius}: {exc}"
            ) from exc
    if not np.all(np.isfinite(values)):
        raise PoleTooClose(f"non-finite value on the circle |s-{s0}|={radius}")
    residue = complex(radius * np.mean(values * phase))
    # zeroth Fourier coefficient of f - residue/(s - s0)
    finite = complex(np.mean(values - residue / (radius * phase)))
    return residue, finite


def contour_residue(
    f: Callable,
    s0: complex,
    radius: float = 0.25,
    n_points: int = 64,
    abs_tol: float = 1e-10,
    check: bool = True,
) -> LaurentData:
    """Residue and finite part of ``f`` at ``s0`` from trapezoid sums on circles.

    ``f`` may have at most a simple pole at ``s0`` and must be holomorphic
    elsewhere in the disk.  With ``check`` the computation is repeated at
    half the radius and the two residues must agree to 1e-6 relative.
    """
    if radius <= 0 or n_points < 4:
        raise PreconditionError("radius must be positive and n_points >= 4")
    s0 = complex(s0)
    residue, finite = _circle(f, s0, radius, n_points)
    if check:
        residue2, finite2 = _circle(f, s0, 0.5 * radius, n_points)
        scale = max(abs(residue), abs(residue2))
        if abs(residue - residue2) > 1e-6 * scale + abs_tol:
            raise Inconsistent(
                f"residue at {s0} unstable under radius change: {residue} vs {residue2}"
            )
    if abs(residue) <= abs_tol:
        return LaurentData(s0, 0, 0j, finite)
    return LaurentData(s0, 1, residue, finite)


def mellin_integral(h: Callable, s: complex, cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Integral of h(t) t^(s/2 - 1) over (0, inf).

    ``h`` must stay bounded as t -> 0 and decay exponentially as t -> inf;
    Re(s) > 0.  On (0, 1] the substitution t = u^(2/Re s) removes the
    algebraic endpoint singularity, leaving a bounded integrand.
    """
    s = complex(s)
    sigma = s.real
    if not sigma > 0:
        raise OutsideConvergence(f"Mellin integral needs Re(s) > 0, got s={s}")
    p = 2.0 / sigma
    tiny = np.finfo(float).tiny
    omega = s.imag / sigma

    def near(u):
        with np.errstate(all="ignore"):
            t = np.maximum(u**p, tiny)
            return p * _evaluate(h, t) * np.exp(1j * omega * np.log(u))

    def far(t):
        with np.errstate(all="ignore"):
            return _evaluate(h, t) * np.exp((s / 2.0 - 1.0) * np.log(t))

    return _adaptive(near, 0.0, 1.0, cfg) + _upper_tail(far, 1.0, cfg)


__all__ = [
    "QuadratureConfig",
    "LaurentData",
    "DEFAULT_CONFIG",
    "integrate",
    "contour_residue",
    "mellin_integral",
]
