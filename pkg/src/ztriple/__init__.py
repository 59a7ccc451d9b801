"""Numerical toolkit for z-dimensional spectral triples."""

from __future__ import annotations

from .errors import *  # noqa: F401,F403
from .quadrature import DEFAULT_CONFIG, LaurentData, QuadratureConfig, contour_residue, integrate, mellin_integral

__version__ = "0.1.0"
