"""Monomial valuations on affine space: volume, log discrepancy, counting.

A monomial valuation is determined by a positive rational weight vector
``gamma``; it sends a monomial ``x^e`` to the weighted degree ``<e, gamma>``.
Its volume and log discrepancy have closed forms, and the volume can be
cross-checked against a direct lattice-point count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import ValidationError
from .exact import q

COUNT_CAP = 100_000_000


@dataclass(frozen=True)
class MonomialValuation:
    """Weight vector of a monomial valuation, all entries positive rationals."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(q(w) for w in self.weights)
        if not ws:
            raise ValidationError("weight vector must be non-empty")
        for w in ws:
            if w <= 0:
                raise ValidationError(f"weights must be positive, got {w}")
        object.__setattr__(self, "weights", ws)

    @property
    def dim(self) -> int:
        return len(self.weights)


def mono_vol(val: MonomialValuation) -> Fraction:
    """Volume of a monomial valuation: the reciprocal product of weights."""
    p = Fraction(1)
    for w in val.weights:
        p *= w
    return 1 / p


def mono_logdisc(val: MonomialValuation) -> Fraction:
    """Log discrepancy: the sum of the weights."""
    return sum(val.weights, Fraction(0))


def mono_nvol(val: MonomialValuation) -> Fraction:
    """Normalized volume ``A^n * vol``; minimized (= n^n) at equal weights."""
    return mono_logdisc(val) ** val.dim * mono_vol(val)


def mono_count_oracle(val: MonomialValuation, m) -> int:
    """Count lattice points ``e >= 0`` with ``<e, gamma> < m`` (strict).

    ``n! * count / m^n`` converges to ``mono_vol`` as ``m`` grows.  The
    enumeration is refused when the predicted size exceeds ``COUNT_CAP``.
    """
    m = q(m)
    if m <= 0:
        return 0
    ws = val.weights
    est = 1.0
    for w in ws[:-1]:
        est *= float(m / w) + 1
    if est > COUNT_CAP:
        raise ValidationError(
            f"lattice enumeration would exceed cap {COUNT_CAP}; "
            "reduce m or the dimension"
        )

    last = ws[-1]

    def rec(axis: int, remaining: Fraction) -> int:
        if remaining <= 0:
            return 0
        if axis == len(ws) - 1:
            # integers e >= 0 with e * last < remaining
            return math.ceil(remaining / last)
        total = 0
        e = 0
        w = ws[axis]
        while e * w < remaining:
            total += rec(axis + 1, remaining - e * w)
            e += 1
        return total

    return rec(0, m)


def mono_min_scan(n: int, resolution: int) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Minimize ``mono_nvol`` over the grid of positive weight vectors.

    Scans all positive integer tuples summing to ``n * resolution``
    (normalized by ``resolution``; ``nvol`` is scale-invariant, so this
    sweeps a simplex grid).  Returns ``(min_nvol, argmin_weights)``.
    """
    if n < 1:
        raise ValidationError("dimension must be at least 1")
    if resolution < 1:
        raise ValidationError("resolution must be at least 1")
    total = n * resolution
    best = None
    best_w = None
    # compositions of `total` into n positive parts, via cut positions
    for cuts in combinations(range(1, total), n - 1):
        parts = []
        prev = 0
        for c in cuts:
            parts.append(c - prev)
            prev = c
        parts.append(total - prev)
        ws = tuple(Fraction(p, resolution) for p in parts)
        v = mono_nvol(MonomialValuation(ws))
        if best is None or v < best:
            best, best_w = v, ws
    return best, best_w


def wtbeta_logdisc(weights: tuple[int, ...], beta) -> Fraction:
    """Log discrepancy of the wedge perturbation of integer torus weights.

    For weights ``lam_i`` with mean ``lam_bar``, the perturbed valuation has
    weight vector ``(1 + beta * (lam_i - lam_bar))_i``; its log discrepancy
    ``sum_i (1 + beta * (lam_i - lam_bar))`` collapses to ``n`` identically.
    The sum is evaluated literally rather than simplified in advance.
    """
    if not weights:
        raise ValidationError("weight vector must be non-empty")
    if not all(isinstance(w, int) for w in weights):
        raise ValidationError("perturbation weights must be integers")
    beta = q(beta)
    n = len(weights)
    mean = Fraction(sum(weights), n)
    return sum((1 + beta * (w - mean) for w in weights), Fraction(0))
