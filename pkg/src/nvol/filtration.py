"""Graded filtrations as data: volume curves, minima, limit measures.

A filtration of a graded ring is represented either in closed form (an
exact piecewise-polynomial volume curve) or as a tabulation (a callback
giving the dimension of each filtration piece at finite level, together
with degree dimensions and the candidate values where those dimensions
can jump).  The tabulated form supports successive minima, empirical
measures, per-level slope estimates, and the summation-lemma check; the
closed form supports their exact limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import ConsistencyError, ValidationError
from .exact import (
    INF,
    Measure1D,
    PiecewisePolynomial,
    Polynomial,
    neg_differential,
    pp_integrate_kernel,
    q,
    validate_volume_curve,
)


@dataclass(frozen=True)
class ClosedFormFiltration:
    """Exact volume curve of a good filtration, with ambient dimension data."""

    curve: PiecewisePolynomial
    n: int
    Lvol: Fraction

    def __post_init__(self):
        object.__setattr__(self, "Lvol", q(self.Lvol))
        if self.n < 1:
            raise ValidationError("dimension must be at least 1")
        validate_volume_curve(self.curve, self.n, self.Lvol)


@dataclass(frozen=True, eq=False)
class TabulatedFiltration:
    """Finite-level filtration data.

    ``dims(m, k)`` is the dimension of the level-m piece in degree k,
    non-increasing in m with ``dims(m, k) == level_dim(k)`` for m <= 0;
    ``value_candidates(k)`` returns a finite superset of the values where
    ``dims(., k)`` jumps (it must include the minimum, so the staircase
    can be inverted exactly).
    """

    dims: Callable[[Fraction, int], int]
    level_dim: Callable[[int], int]
    value_candidates: Callable[[int], Sequence[Fraction]]
    n: int
    Lvol: Fraction
    max_level: int

    def __post_init__(self):
        object.__setattr__(self, "Lvol", q(self.Lvol))
        if self.n < 1:
            raise ValidationError("dimension must be at least 1")
        if self.max_level < 1:
            raise ValidationError("max_level must be at least 1")


@dataclass(frozen=True)
class SuccessiveMinima:
    """Decreasing values lambda_1 >= ... >= lambda_N of a degree-m piece."""

    m: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        for a, b in zip(self.values, self.values[1:]):
            if b > a:
                raise ValidationError("successive minima must be non-increasing")

    @property
    def top(self) -> Fraction:
        return self.values[0]

    @property
    def bottom(self) -> Fraction:
        return self.values[-1]


@dataclass(frozen=True)
class VolCurveReport:
    """Sampled volume curve of a tabulation, with a half-level comparison."""

    curve: PiecewisePolynomial
    grid: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    half_values: tuple[Fraction, ...]
    level: int
    half_level: int


def _sample(src: TabulatedFiltration, t: Fraction, m: int) -> Fraction:
    return (
        Fraction(math.factorial(src.n - 1))
        * src.dims(t * m, m)
        / m ** (src.n - 1)
    )


def vol_curve(src, grid: Sequence | None = None):
    """Volume curve of a filtration source.

    ClosedForm sources return their exact curve.  Tabulated sources return
    a :class:`VolCurveReport` whose curve linearly interpolates the level
    ``max_level`` samples ``(n-1)! * dims(m t, m) / m^(n-1)`` over the
    grid, carrying the half-level samples as a convergence indicator.
    """
    if isinstance(src, ClosedFormFiltration):
        return src.curve
    if not isinstance(src, TabulatedFiltration):
        raise ValidationError(f"not a filtration source: {src!r}")
    if src.max_level < 10:
        raise ValidationError("tabulated volume curve requires max_level >= 10")
    if not grid:
        raise ValidationError("tabulated volume curve requires a non-empty grid")
    ts = sorted({q(t) for t in grid})
    m, half = src.max_level, src.max_level // 2
    values = tuple(_sample(src, t, m) for t in ts)
    half_values = tuple(_sample(src, t, half) for t in ts)
    if len(ts) == 1:
        curve = PiecewisePolynomial.step(ts[0], values[0], values[0])
    else:
        pieces = []
        for (t0, v0), (t1, v1) in zip(zip(ts, values), zip(ts[1:], values[1:])):
            slope = (v1 - v0) / (t1 - t0)
            pieces.append(Polynomial([v0 - slope * t0, slope]))
        curve = PiecewisePolynomial(ts, pieces, values[0], values[-1])
    return VolCurveReport(curve, tuple(ts), values, half_values, m, half)


def successive_minima(src: TabulatedFiltration, m: int) -> SuccessiveMinima:
    """Invert the dims staircase: lambda_j = max{v : dims(v, m) >= j}."""
    if m < 1:
        raise ValidationError("level must be at least 1")
    n_m = src.level_dim(m)
    cands = sorted({q(c) for c in src.value_candidates(m)}, reverse=True)
    if not cands:
        raise ValidationError(f"no value candidates at level {m}")
    counts = [src.dims(c, m) for c in cands]
    if counts[-1] != n_m:
        raise ConsistencyError(
            f"value candidates at level {m} do not reach the full dimension "
            f"({counts[-1]} != {n_m})"
        )
    values = []
    i = 0
    for j in range(1, n_m + 1):
        while counts[i] < j:
            i += 1
        values.append(cands[i])
    return SuccessiveMinima(m, tuple(values))


def dh_empirical(src: TabulatedFiltration, m: int) -> Measure1D:
    """Uniform atoms at lambda_j / m: the level-m empirical measure (mass 1)."""
    sm = successive_minima(src, m)
    n_m = len(sm.values)
    return Measure1D(atoms=[(v / m, Fraction(1, n_m)) for v in sm.values])


def dh_limit(curve: PiecewisePolynomial, Lvol) -> Measure1D:
    """Limit measure -d(vol)/Lvol of a volume curve; a probability measure."""
    Lvol = q(Lvol)
    if Lvol <= 0:
        raise ValidationError("Lvol must be positive")
    mu = neg_differential(curve).scale(Fraction(1) / Lvol)
    if mu.mass() != 1:
        raise ConsistencyError(f"limit measure has mass {mu.mass()}, expected 1")
    return mu


def support_bounds(curve: PiecewisePolynomial) -> tuple[Fraction, Fraction]:
    """(lambda_min, lambda_max): where the curve starts dropping and stops."""
    return neg_differential(curve).support_bounds()


@dataclass(frozen=True)
class EminEmaxReport:
    """Per-level slope bounds lambda_bottom/m and lambda_top/m of a tabulation."""

    levels: tuple[int, ...]
    emin_values: tuple[Fraction, ...]
    emax_values: tuple[Fraction, ...]
    emin_last: Fraction
    emax_last: Fraction
    emax_sup: Fraction


def emin_emax(src: TabulatedFiltration, levels: Sequence[int]) -> EminEmaxReport:
    """Per-level e_min/m and e_max/m; the e_max estimate is the running sup."""
    if not levels:
        raise ValidationError("levels must be non-empty")
    emin, emax = [], []
    for m in levels:
        sm = successive_minima(src, m)
        emin.append(sm.bottom / m)
        emax.append(sm.top / m)
    return EminEmaxReport(
        tuple(levels), tuple(emin), tuple(emax), emin[-1], emax[-1], max(emax)
    )


@dataclass(frozen=True)
class LemlimReport:
    lhs: Fraction
    rhs: Fraction

    @property
    def gap(self) -> Fraction:
        return abs(self.lhs - self.rhs)


def lemlim_check(
    curve: PiecewisePolynomial,
    n: int,
    dims: Callable[[Fraction, int], int],
    c1,
    alpha,
    beta,
    p: int,
) -> LemlimReport:
    """Finite sum vs kernel integral of the summation lemma.

    lhs = (n!/p^n) * sum_{i=0}^{floor(alpha p / (beta + c1))} dims(alpha p - beta i, i)
    rhs = n alpha^n * integral_{c1}^inf vol(x) dx / (beta + x)^{n+1}

    The sum stops where the pieces become full (level below c1 * degree);
    the two sides agree in the limit p -> infinity.
    """
    c1, alpha, beta = q(c1), q(alpha), q(beta)
    if alpha < 0:
        raise ValidationError("alpha must be non-negative")
    if beta <= -c1:
        raise ValidationError(f"beta must exceed -c1 = {-c1}")
    if p < 1:
        raise ValidationError("p must be a positive integer")
    top = math.floor(alpha * p / (beta + c1))
    total = sum(dims(alpha * p - beta * i, i) for i in range(top + 1))
    lhs = Fraction(math.factorial(n)) * total / p**n
    if alpha == 0:
        rhs = Fraction(0)
    else:
        rhs = n * alpha**n * pp_integrate_kernel(
            curve, beta, 1, n, lo=c1, hi=INF
        )
    return LemlimReport(lhs, rhs)
