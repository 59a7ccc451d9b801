"""Computable trace models.

Three kinds of triple are supported:

* :class:`MultiplicationTriple` -- the Dirac operator is multiplication by an
  odd increasing profile ``f`` on L^2(R) and the trace is ``weight * dx``.
  Then tau(g(D)) is simply the integral of g(f(x)) against ``weight * dx``;
  the spectral measure is never built.
* :class:`DiscreteTriple` -- eigenvalue and multiplicity sequences, with an
  optional closed-form zeta continuation and an optional heat-trace formula.
* :class:`MatrixTriple` -- a finite hermitian Dirac matrix with a grading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import specfun
from .errors import (
    NonConvergent,
    OutsideConvergence,
    PreconditionError,
    UnsupportedSpectrum,
)
from .quadrature import QuadratureConfig, integrate

CONVENTIONS = ("resolvent", "modulus")

TRACE_CONFIG = QuadratureConfig(
    abs_tol=1e-15, rel_tol=1e-11, max_subdivisions=4000, tail_transform="log_rational"
)


@dataclass(frozen=True)
class SpectrumProfile:
    forward: Callable
    inverse: Callable
    label: str = ""

    def __post_init__(self):
        self.validate()

    def __call__(self, x):
        return self.forward(x)

    def validate(self) -> None:
        """Check oddness, strict monotonicity and inverse consistency on samples."""
        x = np.logspace(-6, 6, 241)
        with np.errstate(all="ignore"):
            fx = np.asarray(self.forward(x), dtype=float)
            fmx = np.asarray(self.forward(-x), dtype=float)
            back = np.asarray(self.inverse(fx), dtype=float)
        if not np.allclose(fmx, -fx, rtol=1e-14, atol=0.0):
            raise PreconditionError(f"profile {self.label!r} is not odd")
        grid = np.concatenate([-x[::-1], x])
        fg = np.asarray(self.forward(grid), dtype=float)
        if not np.all(np.diff(fg) > 0):
            raise PreconditionError(f"profile {self.label!r} is not strictly increasing")
        if np.any(np.abs(back - x) > 1e-10 * (1.0 + x)):
            raise PreconditionError(f"profile {self.label!r}: inverse is inconsistent")


@dataclass(frozen=True)
class MultiplicationTriple:
    profile: SpectrumProfile
    weight: float = 0.5
    abscissa: float | None = None  # zeta converges for Re(s) > abscissa

    def __post_init__(self):
        if not self.weight > 0:
            raise PreconditionError("weight must be positive")


@dataclass(frozen=True)
class ZetaHandle:
    """Closed-form continuation of a discrete zeta function.

    ``poles`` lists (location, residue) pairs; ``convention`` says whether the
    handle continues sum m_k (1 + l_k^2)^(-s/2) ("resolvent") or
    sum m_k |l_k|^(-s) ("modulus").
    """

    func: Callable[[complex], complex]
    convention: str
    poles: tuple = ()

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise PreconditionError(f"unknown convention {self.convention!r}")

    def __call__(self, s):
        return self.func(s)

    @property
    def abscissa(self) -> float:
        return max((complex(p).real for p, _ in self.poles), default=-math.inf)

    @property
    def leading_pole(self) -> tuple[complex, complex]:
        if not self.poles:
            raise PreconditionError("handle declares no poles")
        return max(self.poles, key=lambda pr: complex(pr[0]).real)


@dataclass(frozen=True)
class DiscreteTriple:
    eigenvalue: Callable  # k -> lambda_k, vectorised over numpy arrays
    multiplicity: Callable  # k -> m_k
    first: int = 0
    count: int | None = None  # None for an infinite spectrum
    zeta_handle: ZetaHandle | None = None
    heat_handle: Callable | None = None
    summability: float | None = None
    label: str = ""

    @property
    def finite(self) -> bool:
        return self.count is not None

    @property
    def abscissa(self) -> float:
        if self.zeta_handle is not None and self.zeta_handle.poles:
            return self.zeta_handle.abscissa
        if self.summability is not None:
            return self.summability
        if self.finite:
            return -math.inf
        raise PreconditionError(f"{self.label or 'triple'}: abscissa of convergence unknown")

    def indices(self, start: int, stop: int) -> np.ndarray:
        if self.finite:
            stop = min(stop, self.first + self.count)
        return np.arange(start, stop, dtype=float)


@dataclass(frozen=True, eq=False)
class MatrixTriple:
    dirac: np.ndarray
    grading: np.ndarray | None = None
    label: str = ""
    _checked: bool = field(default=False, repr=False)

    def __post_init__(self):
        d = np.array(self.dirac, dtype=complex)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise PreconditionError("Dirac matrix must be square")
        norm = np.linalg.norm(d, 2)
        if np.linalg.norm(d - d.conj().T, 2) > 1e-12 * max(norm, 1.0):
            raise PreconditionError("Dirac matrix is not hermitian")
        d.setflags(write=False)
        object.__setattr__(self, "dirac", d)
        if self.grading is not None:
            g = np.array(self.grading, dtype=complex)
            if g.shape != d.shape:
                raise PreconditionError("grading and Dirac shapes differ")
            if np.linalg.norm(g - g.conj().T, 2) > 1e-14:
                raise PreconditionError("grading is not hermitian")
            if np.linalg.norm(g @ g - np.eye(len(g)), 2) > 1e-14:
                raise PreconditionError("grading does not square to the identity")
            if np.linalg.norm(g @ d + d @ g, 2) > 1e-12 * max(norm, 1.0):
                raise PreconditionError("grading does not anticommute with the Dirac matrix")
            g.setflags(write=False)
            object.__setattr__(self, "grading", g)

    @property
    def dim(self) -> int:
        return self.dirac.shape[0]

    @property
    def graded(self) -> bool:
        return self.grading is not None


def trace_of_function(
    t: MultiplicationTriple,
    g: Callable,
    cfg: QuadratureConfig = TRACE_CONFIG,
    even: bool = False,
) -> complex:
    """tau(g(D)) for a multiplication triple: the integral of g(f(x)) weight dx.

    With ``even`` the integrand g(f(x)) is taken to be even in x (true
    whenever g is even, since f is odd) and only the half line is integrated.
    """
    f = t.profile.forward
    pos = integrate(lambda x: g(f(x)), 0.0, math.inf, cfg)
    if even:
        return 2.0 * t.weight * pos
    neg = integrate(lambda x: g(-f(x)), 0.0, math.inf, cfg)
    return t.weight * (pos + neg)


_CHUNK = 4096
_MAX_TERMS = 2_000_000


def _discrete_heat(t: DiscreteTriple, time) -> np.ndarray:
    time = np.atleast_1d(np.asarray(time, dtype=float))
    total = np.zeros_like(time)
    k = t.first
    while True:
        ks = t.indices(k, k + _CHUNK)
        if ks.size == 0:
            return total
        lam = np.asarray(t.eigenvalue(ks), dtype=float)
        mult = np.asarray(t.multiplicity(ks), dtype=float)
        terms = mult[None, :] * np.exp(-np.outer(time, lam**2))
        total += terms.sum(axis=1)
        if np.all(terms[:, -1] < 1e-16):
            return total
        k += _CHUNK
        if k - t.first > _MAX_TERMS:
            raise NonConvergent("discrete heat trace needs too many terms; supply a heat_handle")


def heat_trace(t, time, cfg: QuadratureConfig = TRACE_CONFIG):
    """tau(exp(-time D^2)).

    For discrete triples ``time`` may be a numpy array; the heat_handle is
    used when present, otherwise the eigenvalue sum is truncated once the
    terms drop below 1e-16.
    """
    if np.any(np.asarray(time) <= 0):
        raise PreconditionError("time must be positive")
    if isinstance(t, DiscreteTriple):
        if t.heat_handle is not None:
            out = np.asarray(t.heat_handle(np.asarray(time, dtype=float)), dtype=float)
        else:
            out = _discrete_heat(t, time)
        return float(out.reshape(-1)[0]) if np.ndim(time) == 0 else out.reshape(np.shape(time))
    time = float(time)
    return trace_of_function(t, lambda y: np.exp(-time * y * y), cfg, even=True).real


def counting_function(t, lam: float) -> float:
    """tau(E([-lam, lam])), the spectral counting function."""
    if not lam > 0:
        raise PreconditionError("lam must be positive")
    if isinstance(t, DiscreteTriple):
        total = 0.0
        k = t.first
        while True:
            ks = t.indices(k, k + _CHUNK)
            if ks.size == 0:
                return total
            lv = np.abs(np.asarray(t.eigenvalue(ks), dtype=float))
            total += float(np.asarray(t.multiplicity(ks), dtype=float)[lv <= lam].sum())
            if lv[-1] > lam:
                return total
            k += _CHUNK
    inv = t.profile.inverse
    return float(t.weight * (inv(lam) - inv(-lam)))


def _log_zeta_weight(lam: np.ndarray, s: complex, convention: str) -> np.ndarray:
    a = np.abs(lam)
    if convention == "resolvent":
        big = a > 1e150
        safe = np.where(big, 1.0, a)
        return -0.5 * s * np.where(big, 2.0 * np.log(np.where(big, a, 1.0)), np.log1p(safe * safe))
    return -s * np.log(a)


def _zeta_weight(lam: np.ndarray, s: complex, convention: str) -> np.ndarray:
    return np.exp(_log_zeta_weight(lam, s, convention))


def _direct_zeta(t: DiscreteTriple, s: complex, convention: str, cfg: QuadratureConfig) -> complex:
    head_terms = 2000
    ks = t.indices(t.first, t.first + head_terms)
    lam = np.asarray(t.eigenvalue(ks), dtype=float)
    if convention == "modulus" and np.any(lam == 0):
        raise UnsupportedSpectrum("modulus zeta needs an invertible spectrum")
    total = complex(np.sum(np.asarray(t.multiplicity(ks), dtype=float) * _zeta_weight(lam, s, convention)))
    if t.finite:
        return total
    # midpoint tail: sum_{k >= K} F(k) ~ integral of F from K - 1/2
    start = t.first + head_terms - 0.5

    def tail(x):
        # combine in log space: multiplicity and weight can overflow separately far out
        with np.errstate(divide="ignore", over="ignore"):
            mult = np.asarray(t.multiplicity(x), dtype=float)
            logw = _log_zeta_weight(np.asarray(t.eigenvalue(x), dtype=float), s, convention)
            out = np.exp(np.log(np.where(mult > 0, mult, 1.0)) + logw)
        return np.where(mult > 0, out, 0.0)

    # next Euler-Maclaurin term of the midpoint rule, +F'(K - 1/2)/24
    edge = np.array([start - 0.5, start + 0.5])
    fe = tail(edge)
    try:
        rest = integrate(tail, start, math.inf, cfg)
    except NonConvergent:
        # growing multiplicities overflow far out; the rational map stays closer in
        rest = integrate(tail, start, math.inf, cfg.with_transform("rational"))
    return total + rest + (fe[1] - fe[0]) / 24.0


def zeta_trace(t, s: complex, cfg: QuadratureConfig = TRACE_CONFIG, convention: str = "resolvent") -> complex:
    """Spectral zeta function in the given convention.

    Multiplication triples only support the resolvent convention,
    tau((1 + D^2)^(-s/2)), by quadrature where it converges.  Discrete
    triples use their zeta_handle when its convention matches, otherwise a
    truncated sum with a midpoint tail integral inside the convergence
    half-plane.
    """
    s = complex(s)
    if convention not in CONVENTIONS:
        raise PreconditionError(f"unknown convention {convention!r}")
    if isinstance(t, DiscreteTriple):
        h = t.zeta_handle
        if h is not None and h.convention == convention:
            return complex(h(s))
        if s.real <= t.abscissa + 0.1:
            raise OutsideConvergence(f"s={s} outside the convergence half-plane Re(s) > {t.abscissa}")
        return _direct_zeta(t, s, convention, cfg)
    if convention != "resolvent":
        raise PreconditionError("multiplication triples use the resolvent convention")
    if t.abscissa is not None and s.real <= t.abscissa + 0.1:
        raise OutsideConvergence(f"s={s} outside the convergence half-plane Re(s) > {t.abscissa}")
    return trace_of_function(t, lambda y: np.exp(-0.5 * s * np.log1p(y * y)), cfg, even=True)


# -- stock discrete triples -------------------------------------------------


def _theta_tail(time) -> np.ndarray:
    """sum_{k>=1} exp(-time k^2), switching to the Jacobi transform below time=1."""
    shape = np.shape(time)
    time = np.atleast_1d(np.asarray(time, dtype=float))
    out = np.empty_like(time)
    big = time >= 1.0
    k = np.arange(1, 8, dtype=float)
    if np.any(big):
        out[big] = np.exp(-np.outer(time[big], k * k)).sum(axis=1)
    small = ~big
    if np.any(small):
        ts = time[small]
        kk = np.arange(1, 4, dtype=float)
        dual = np.exp(-np.outer(np.pi**2 / ts, kk * kk)).sum(axis=1)
        out[small] = 0.5 * (np.sqrt(np.pi / ts) * (1.0 + 2.0 * dual) - 1.0)
    return out.reshape(shape)


_RESOLVENT_HEAD = 10


def _circle_resolvent_zeta(s: complex) -> complex:
    # 2 sum_{k>=1} (1+k^2)^(-s/2): explicit head, then
    # (1+k^2)^(-s/2) = sum_j binom(-s/2, j) k^(-s-2j) summed with Hurwitz zetas
    s = complex(s)
    ks = np.arange(1, _RESOLVENT_HEAD + 1, dtype=float)
    total = complex(np.sum(np.exp(-0.5 * s * np.log1p(ks * ks))))
    q = _RESOLVENT_HEAD + 1.0
    coeff = 1.0 + 0j
    for j in range(80):
        if j > 0:
            coeff *= (-0.5 * s - (j - 1)) / j
        term = coeff * specfun.hurwitz_zeta(s + 2 * j, q)
        total += term
        if j > 2 and abs(term) < 1e-17 * abs(total):
            break
    return 2.0 * total


def _binom(alpha: complex, j: int) -> complex:
    return specfun.falling_factorial(alpha, j) / math.factorial(j)


def circle_triple(convention: str = "resolvent") -> DiscreteTriple:
    """Dirac operator of the circle: eigenvalues +-k for k >= 1.

    Stored as lambda_k = k with multiplicity 2.  The resolvent handle has
    poles at 1 - 2j with residue 2 binom(-(1-2j)/2, j); the modulus handle
    is 2 zeta_R(s), with a single pole at 1 of residue 2.
    """
    if convention == "resolvent":
        poles = tuple((1.0 - 2 * j, 2.0 * _binom(-(1.0 - 2 * j) / 2.0, j).real) for j in range(4))
        handle = ZetaHandle(_circle_resolvent_zeta, "resolvent", poles)
    elif convention == "modulus":
        handle = ZetaHandle(lambda s: 2.0 * specfun.riemann_zeta(s), "modulus", ((1.0, 2.0),))
    else:
        raise PreconditionError(f"unknown convention {convention!r}")
    return DiscreteTriple(
        eigenvalue=lambda k: k,
        multiplicity=lambda k: 2.0 * np.ones_like(np.asarray(k, dtype=float)),
        first=1,
        zeta_handle=handle,
        heat_handle=lambda time: 2.0 * _theta_tail(time),
        summability=1.0,
        label=f"circle/{convention}",
    )


def power_triple(d: int = 1) -> DiscreteTriple:
    """Eigenvalues k >= 1 with multiplicity k^(d-1); modulus zeta zeta_R(s-d+1).

    d = 1 is the positive-integer spectrum {1, 2, 3, ...}.
    """
    if d < 1:
        raise PreconditionError("d must be >= 1")
    return DiscreteTriple(
        eigenvalue=lambda k: k,
        multiplicity=lambda k: np.asarray(k, dtype=float) ** (d - 1),
        first=1,
        zeta_handle=ZetaHandle(lambda s: specfun.riemann_zeta(complex(s) - d + 1), "modulus", ((float(d), 1.0),)),
        summability=float(d),
        label=f"integers^{d}",
    )


def integer_triple() -> DiscreteTriple:
    return power_triple(1)


def unit_triple() -> DiscreteTriple:
    """A single eigenvalue 0 of multiplicity 1: zeta identically 1, heat trace 1."""
    return DiscreteTriple(
        eigenvalue=lambda k: 0.0 * np.asarray(k, dtype=float),
        multiplicity=lambda k: np.ones_like(np.asarray(k, dtype=float)),
        first=0,
        count=1,
        zeta_handle=ZetaHandle(lambda s: 1.0 + 0j, "resolvent", ()),
        label="unit",
    )
