"""Exact normalized-volume computations for cone singularities.

Rational-arithmetic tools for valuations on cones over polarized bases:
volume curves of graded filtrations, limit measures, interpolation
functionals and their derivatives, divisorial invariants, quasi-monomial
and key-polynomial valuations, and two-dimensional convex-body volumes.
"""

from .errors import ConsistencyError, ValidationError

__version__ = "0.1.0"

__all__ = ["ConsistencyError", "ValidationError", "__version__"]
