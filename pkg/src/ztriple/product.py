"""Products of an even base triple with T_z.

The product Dirac operator is D x 1 + gamma x D_z with trace tau x tau_z.
Its square splits as D^2 x 1 + 1 x D_z^2, so heat traces factorise and the
product zeta is the base zeta shifted by z:

    zeta_1(s) = pi^(z/2) Gamma((s-z)/2) / Gamma(s/2) * zeta_base(s - z).

The finite-matrix helpers check the operator identities behind that
factorisation on explicit graded matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import (
    AtPole,
    IdentityViolated,
    Inconsistent,
    NotGraded,
    NotUnitary,
    OutsideConvergence,
    PreconditionError,
)
from .quadrature import LaurentData, QuadratureConfig, contour_residue, mellin_integral
from .triples import TRACE_CONFIG, DiscreteTriple, MatrixTriple, heat_trace, zeta_trace
from .zdim import DimensionParameter, _z, heat_trace_closed, zeta_closed

MAX_MATRIX_DIM = 64
_POLE_TOL = 1e-13

MELLIN_CONFIG = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-11, max_subdivisions=4000)


@dataclass(frozen=True)
class ProductZeta:
    base: DiscreteTriple
    z: DimensionParameter

    def __post_init__(self):
        if self.base.zeta_handle is None:
            raise PreconditionError("product zeta needs a base zeta_handle")
        if not isinstance(self.z, DimensionParameter):
            object.__setattr__(self, "z", DimensionParameter(float(self.z)))

    @property
    def convention(self) -> str:
        return self.base.zeta_handle.convention

    def __call__(self, s: complex) -> complex:
        return product_zeta_closed(self, s)


def product_heat_trace(base: DiscreteTriple, z, t: float, cfg: QuadratureConfig = TRACE_CONFIG) -> float:
    """Heat trace of the product: base heat trace times (pi/t)^(z/2)."""
    if not t > 0:
        raise PreconditionError("t must be positive")
    return heat_trace(base, t, cfg) * heat_trace_closed(z, t)


def product_zeta_closed(pz: ProductZeta, s: complex) -> complex:
    """pi^(z/2) Gamma((s-z)/2) / Gamma(s/2) * zeta_base(s - z)."""
    z = pz.z.z
    s = complex(s)
    for w, _ in pz.base.zeta_handle.poles:
        if abs(s - z - w) < _POLE_TOL:
            raise AtPole(f"product zeta has a pole at s={s} (base pole {w} shifted by z={z})")
    return zeta_closed(z, s) * complex(pz.base.zeta_handle(s - z))


def _heat_exponent(base: DiscreteTriple) -> float:
    # t^(-w/2) growth of the base heat trace at t -> 0; bounded for finite spectra
    if base.finite:
        return 0.0
    return max(0.0, base.abscissa)


def product_zeta_mellin(base: DiscreteTriple, z, s: complex, cfg: QuadratureConfig = MELLIN_CONFIG) -> complex:
    """Product zeta as (1/Gamma(s/2)) int e^(-t) heat_base(t) (pi/t)^(z/2) t^(s/2-1) dt.

    The base heat trace enters in resolvent form e^(-t(1 + D^2)), so the
    result compares with :func:`product_zeta_closed` only for a base whose
    handle uses the resolvent convention.
    """
    z = _z(z)
    s = complex(s)
    w = _heat_exponent(base)
    if s.real <= w + z + 0.1:
        raise OutsideConvergence(f"need Re(s) > {w + z + 0.1}, got s={s}")
    pref = math.pi ** (0.5 * z)

    def h(t):
        t = np.asarray(t, dtype=float)
        return pref * np.exp(-t) * np.asarray(heat_trace(base, t), dtype=float) * t ** (0.5 * w)

    return mellin_integral(h, s - z - w, cfg) * specfun.rgamma(0.5 * s)


def expected_shift_residue(w: complex, r_w: complex, z: float) -> complex:
    """Residue of the product zeta at s = w + z: pi^(z/2) Gamma(w/2)/Gamma((w+z)/2) r_w."""
    return math.pi ** (0.5 * z) * specfun.gamma_ratio(0.5 * w, 0.5 * (w + z)) * r_w


def pole_shift_check(pz: ProductZeta, cfg: QuadratureConfig | None = None, rtol: float = 1e-8) -> LaurentData:
    """Contour residue of the product zeta at the shifted leading pole.

    Requires 0 < z <= Re(w) for the leading base pole w.  Raises
    Inconsistent when the residue misses the expected Gamma-weighted value.
    """
    z = pz.z.z
    w, r_w = pz.base.zeta_handle.leading_pole
    w = complex(w)
    if not (w.real > 0 and z <= w.real):
        raise PreconditionError(f"need 0 < z <= Re(w); z={z}, w={w}")
    data = contour_residue(lambda s: product_zeta_closed(pz, s), w + z, radius=0.25)
    expected = expected_shift_residue(w, r_w, z)
    if abs(data.residue - expected) > rtol * abs(expected):
        raise Inconsistent(f"pole-shift residue {data.residue} differs from {expected}")
    return data


def summability_bound_check(
    base: DiscreteTriple, z, p1: float | None = None, cfg: QuadratureConfig = TRACE_CONFIG
) -> bool:
    """Product bound zeta_1(p1 + z + 1/2) <= zeta_base(p1 + 1/2) zeta_z(z + 1/2)."""
    z = _z(z)
    if p1 is None:
        p1 = max(0.0, base.abscissa)
    h = base.zeta_handle
    convention = h.convention if h is not None else "resolvent"
    base_val = zeta_trace(base, p1 + 0.5, cfg, convention=convention)
    lhs = product_zeta_closed(ProductZeta(base, DimensionParameter(z)), p1 + z + 0.5)
    rhs = base_val * zeta_closed(z, z + 0.5)
    if not (np.isfinite(lhs) and np.isfinite(rhs)):
        return False
    return bool(lhs.real <= rhs.real * (1.0 + 1e-12))


# -- finite matrices --------------------------------------------------------


def _check_dims(*ts: MatrixTriple) -> None:
    for t in ts:
        if t.dim > MAX_MATRIX_DIM:
            raise PreconditionError(f"matrix dimension {t.dim} exceeds {MAX_MATRIX_DIM}")


def matrix_product(t1: MatrixTriple, t2: MatrixTriple) -> MatrixTriple:
    """Product triple D1 x 1 + gamma1 x D2, graded by gamma1 x gamma2 when t2 is graded."""
    if not t1.graded:
        raise NotGraded("the first factor needs a grading")
    _check_dims(t1, t2)
    one1 = np.eye(t1.dim)
    one2 = np.eye(t2.dim)
    a = np.kron(t1.dirac, one2)
    b = np.kron(t1.grading, t2.dirac)
    d = a + b
    scale = max(np.linalg.norm(d, 2) ** 2, 1.0)
    square = np.kron(t1.dirac @ t1.dirac, one2) + np.kron(one1, t2.dirac @ t2.dirac)
    if np.linalg.norm(d @ d - square, 2) > 1e-12 * scale:
        raise IdentityViolated("D^2 differs from D1^2 x 1 + 1 x D2^2")
    if np.linalg.norm(a @ b + b @ a, 2) > 1e-12 * scale:
        raise IdentityViolated("D1 x 1 and gamma1 x D2 do not anticommute")
    grading = np.kron(t1.grading, t2.grading) if t2.graded else None
    return MatrixTriple(d, grading)


def matrix_heat_trace(t: MatrixTriple, time: float) -> float:
    eig = np.linalg.eigvalsh(t.dirac)
    return float(np.sum(np.exp(-time * eig * eig)))


def conjugating_unitary(g1: np.ndarray, g2: np.ndarray, coeff: float = 0.5) -> np.ndarray:
    """coeff (1 x 1 + g1 x 1 + 1 x g2 - g1 x g2); unitary exactly when coeff = 1/2."""
    n1, n2 = len(g1), len(g2)
    one1, one2 = np.eye(n1), np.eye(n2)
    return coeff * (np.kron(one1, one2) + np.kron(g1, one2) + np.kron(one1, g2) - np.kron(g1, g2))


def unitary_equivalence_check(t1: MatrixTriple, t2: MatrixTriple) -> float:
    """Defect of U (D1 x 1 + g1 x D2) U* = D1 x g2 + 1 x D2.

    Raises NotUnitary when U U* misses the identity by more than 1e-12.
    """
    if not (t1.graded and t2.graded):
        raise NotGraded("both factors need a grading")
    _check_dims(t1, t2)
    u = conjugating_unitary(t1.grading, t2.grading)
    n = len(u)
    if np.linalg.norm(u @ u.conj().T - np.eye(n), 2) > 1e-12:
        raise NotUnitary("U U* is not the identity")
    left = np.kron(t1.dirac, np.eye(t2.dim)) + np.kron(t1.grading, t2.dirac)
    right = np.kron(t1.dirac, t2.grading) + np.kron(np.eye(t1.dim), t2.dirac)
    return float(np.linalg.norm(u @ left @ u.conj().T - right, 2))


def random_graded_triple(rng: np.random.Generator, dim: int, rotate: bool = True) -> MatrixTriple:
    """Random even triple: gamma = diag(+1.., -1..) and D off-diagonal in that splitting.

    With ``rotate`` both are conjugated by a random unitary, so the grading
    is no longer diagonal.
    """
    if dim < 1:
        raise PreconditionError("dim must be >= 1")
    p = int(rng.integers(0, dim + 1))
    q = dim - p
    gamma = np.diag(np.concatenate([np.ones(p), -np.ones(q)])).astype(complex)
    d = np.zeros((dim, dim), dtype=complex)
    if p and q:
        b = rng.normal(size=(p, q)) + 1j * rng.normal(size=(p, q))
        d[:p, p:] = b
        d[p:, :p] = b.conj().T
    if rotate:
        m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        v, r = np.linalg.qr(m)
        v = v * (np.diag(r) / np.abs(np.diag(r)))
        d = v @ d @ v.conj().T
        gamma = v @ gamma @ v.conj().T
        d = 0.5 * (d + d.conj().T)
        gamma = 0.5 * (gamma + gamma.conj().T)
    return MatrixTriple(d, gamma)


__all__ = [
    "ProductZeta",
    "product_heat_trace",
    "product_zeta_closed",
    "product_zeta_mellin",
    "expected_shift_residue",
    "pole_shift_check",
    "summability_bound_check",
    "matrix_product",
    "matrix_heat_trace",
    "conjugating_unitary",
    "unitary_equivalence_check",
    "random_graded_triple",
]
