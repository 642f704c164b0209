"""Exact rational arithmetic core: polynomials, piecewise polynomials,
one-dimensional measures, and the integration primitives everything else
is built on.

Conventions for a piecewise polynomial f with breakpoints b₀ < … < b_N:

* f(x) = head for x < b₀ (a constant),
* f(x) = pieces[i](x) for b_i ≤ x < b_{i+1} (right-continuous),
* f(b_N) = left limit at b_N (the tail constant takes over strictly after),
* f(x) = tail for x > b_N.

"Volume curves" are the non-increasing case with head = L^{n-1} and
tail = 0; their difference measure −df (computed by ``neg_differential``)
consists of a piecewise-polynomial density −f′ plus point masses at the
downward jumps, including the final drop onto the tail.

All arithmetic is exact: ``fractions.Fraction`` throughout, no floats in
any decision. Monotonicity checks are certified by Sturm-sequence root
isolation, not sampling heuristics.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import ValidationError

Q = Fraction
QLike = Union[Fraction, int, str]

INF = float("inf")
NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# rational helpers
# ---------------------------------------------------------------------------

def q(value: QLike) -> Fraction:
    """Coerce to an exact rational; accepts ints, Fractions and 'p/q' text."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational: {value!r}") from exc
    if isinstance(value, float):
        raise ValidationError(
            f"refusing float {value!r}: pass an int, Fraction or 'p/q' string"
        )
    raise ValidationError(f"not a rational: {value!r}")


def format_q(value: Fraction) -> str:
    """Serialize as 'p/q' (or bare 'p' for integers)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def decimal_str(value: QLike, places: int = 6, trim: bool = False) -> str:
    """Faithful decimal rendering, round-half-even, via integer arithmetic.

    The result is presentation only and is never fed back into computation.
    With trim=True trailing zeros (and a bare trailing dot) are removed,
    so Fraction(19, 25) renders as '0.76' at places=5.
    """
    if places < 0:
        raise ValidationError("places must be >= 0")
    r = round(q(value), places)  # Fraction.__round__ is exact half-even
    sign = "-" if r < 0 else ""
    scaled = abs(r) * 10**places
    assert scaled.denominator == 1
    ip, fp = divmod(scaled.numerator, 10**places)
    if places == 0:
        return f"{sign}{ip}"
    text = f"{sign}{ip}.{str(fp).zfill(places)}"
    if trim:
        text = text.rstrip("0").rstrip(".")
    return text


def _is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Dense univariate polynomial with exact rational coefficients.

    Coefficients are stored in ascending order; the zero polynomial has an
    empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[QLike] = ()):
        cs = [q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- basics ------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValidationError("polynomial is not constant")
        return self.coeffs[0] if self.coeffs else Q(0)

    def __call__(self, x: QLike) -> Fraction:
        x = q(x)
        acc = Q(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "Polynomial(0)"
        terms = " + ".join(
            f"{format_q(c)}*x^{i}" if i else format_q(c)
            for i, c in enumerate(self.coeffs)
            if c != 0
        )
        return f"Polynomial({terms})"

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Q(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValidationError("polynomial powers must be non-negative integers")
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c: QLike) -> "Polynomial":
        c = q(c)
        return Polynomial(c * a for a in self.coeffs)

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def antiderivative(self) -> "Polynomial":
        return Polynomial([Q(0)] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def integrate(self, lo: QLike, hi: QLike) -> Fraction:
        F = self.antiderivative()
        return F(hi) - F(lo)

    def compose_affine(self, u: QLike, v: QLike) -> "Polynomial":
        """Return p(u·x + v) as a polynomial in x."""
        u, v = q(u), q(v)
        lin = Polynomial([v, u])
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * lin + Polynomial([c])
        return acc

    @staticmethod
    def constant(c: QLike) -> "Polynomial":
        return Polynomial([q(c)])


# ---------------------------------------------------------------------------
# Sturm-certificate nonnegativity
# ---------------------------------------------------------------------------

def _poly_divmod(a: Polynomial, b: Polynomial):
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    quo = [Q(0)] * max(0, len(rem) - len(b.coeffs) + 1)
    db, lead = b.degree, b.coeffs[-1]
    while len(rem) - 1 >= db and any(c != 0 for c in rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < db:
            break
        shift = len(rem) - 1 - db
        factor = rem[-1] / lead
        quo[shift] = factor
        for i, c in enumerate(b.coeffs):
            rem[shift + i] -= factor * c
        rem.pop()
    return Polynomial(quo), Polynomial(rem)


def _sturm_chain(p: Polynomial) -> list[Polynomial]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        _, r = _poly_divmod(chain[-2], chain[-1])
        if r.is_zero():
            break
        chain.append(-r)
    return [f for f in chain if not f.is_zero()]


def _sign_variations(chain: Sequence[Polynomial], x: Fraction) -> int:
    signs = []
    for f in chain:
        v = f(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_roots_halfopen(chain, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in (lo, hi]."""
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def poly_nonneg_on(p: Polynomial, lo: QLike, hi: QLike) -> bool:
    """Exact decision: is p(x) ≥ 0 for every x in [lo, hi]?

    Certificate: isolate the distinct roots of p in intervals with
    non-root rational endpoints (Sturm bisection, nudging any split point
    that happens to be a root), then check p ≥ 0 at every interval
    endpoint and at a sample inside every root-free gap. A negative dip
    on a root-free gap must show at its sample; inside an isolating
    interval both flanks carry the (checked, positive) endpoint signs, so
    no dip can hide there either.
    """
    lo, hi = q(lo), q(hi)
    if lo > hi:
        raise ValidationError("empty interval")
    if p.is_zero():
        return True
    if p.is_constant():
        return p.coeffs[0] >= 0
    if p(lo) < 0 or p(hi) < 0:
        return False
    if lo == hi:
        return True

    chain = _sturm_chain(p)

    def nudge_right(x: Fraction, limit: Fraction) -> Fraction:
        # non-root point just right of x with (x, result] root-free
        step = (limit - x) / 2
        while True:
            cand = x + step
            if p(cand) != 0 and _count_roots_halfopen(chain, x, cand) == 0:
                return cand
            step /= 2

    def nudge_left(x: Fraction, limit: Fraction) -> Fraction:
        # non-root point just left of x with (result, x) root-free
        # (the count over (result, x] is exactly the root at x itself)
        step = (x - limit) / 2
        while True:
            cand = x - step
            if p(cand) != 0 and _count_roots_halfopen(chain, cand, x) == 1:
                return cand
            step /= 2

    checks: list[Fraction] = [lo, hi]
    a, b = lo, hi
    if p(a) == 0:
        a = nudge_right(a, b)
        checks.append(a)
        checks.append((lo + a) / 2)  # sample the root-free gap (lo, a)
    if p(b) == 0 and a < b:
        b = nudge_left(b, a)
        checks.append(b)
        checks.append((b + hi) / 2)  # sample the root-free gap (b, hi)
    if a >= b:
        return all(p(x) >= 0 for x in checks)

    # worklist of intervals with non-root endpoints
    work = [(a, b)]
    while work:
        u, v = work.pop()
        c = _count_roots_halfopen(chain, u, v)
        checks.append(u)
        checks.append(v)
        if c == 0:
            checks.append((u + v) / 2)
            continue
        if c == 1:
            continue  # isolating interval: endpoint checks suffice
        m = (u + v) / 2
        if p(m) == 0:
            # nudge the split point off the root
            delta = (v - u) / 4
            while p(m) == 0:
                m = m + delta
                delta /= 2
        work.append((u, m))
        work.append((m, v))
    return all(p(x) >= 0 for x in checks)


# ---------------------------------------------------------------------------
# piecewise polynomials
# ---------------------------------------------------------------------------

class PiecewisePolynomial:
    """Piecewise polynomial with constant head/tail, exact breakpoints.

    Construction canonicalizes: adjacent identical pieces are merged, and
    leading/trailing constant pieces equal to head/tail are absorbed, so
    b₀ is the first point where the function can change and b_N the last.
    """

    __slots__ = ("breakpoints", "pieces", "head", "tail")

    def __init__(
        self,
        breakpoints: Iterable[QLike],
        pieces: Iterable[Polynomial],
        head: QLike,
        tail: QLike,
    ):
        bps = [q(b) for b in breakpoints]
        ps = list(pieces)
        if len(bps) != len(ps) + 1:
            raise ValidationError(
                f"need len(breakpoints) == len(pieces)+1, got {len(bps)} and {len(ps)}"
            )
        if any(x >= y for x, y in zip(bps, bps[1:])):
            raise ValidationError("breakpoints must be strictly increasing")
        head, tail = q(head), q(tail)

        # merge adjacent identical pieces
        i = 0
        while i + 1 < len(ps):
            if ps[i] == ps[i + 1]:
                del ps[i + 1]
                del bps[i + 1]
            else:
                i += 1
        # absorb constant pieces equal to head (from the left) / tail (right)
        while ps and ps[0] == Polynomial.constant(head):
            del ps[0]
            del bps[0]
        while ps and ps[-1] == Polynomial.constant(tail):
            del ps[-1]
            del bps[-1]

        self.breakpoints = tuple(bps)
        self.pieces = tuple(ps)
        self.head = head
        self.tail = tail

    # -- basic queries -------------------------------------------------------

    @property
    def b0(self) -> Fraction:
        return self.breakpoints[0]

    @property
    def bN(self) -> Fraction:
        return self.breakpoints[-1]

    def __call__(self, x: QLike) -> Fraction:
        x = q(x)
        if x < self.b0:
            return self.head
        if x > self.bN:
            return self.tail
        if x == self.bN:
            return self.left_limit(self.bN)
        # binary search for the piece with b_i <= x < b_{i+1}
        lo, hi = 0, len(self.pieces) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.breakpoints[mid] <= x:
                lo = mid
            else:
                hi = mid - 1
        return self.pieces[lo](x)

    def left_limit(self, b: QLike) -> Fraction:
        """Limit of f(x) as x → b from the left."""
        b = q(b)
        if b <= self.b0:
            return self.head
        if b > self.bN:
            return self.tail
        idx = max(i for i, bp in enumerate(self.breakpoints) if bp < b)
        return self.pieces[idx](b)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PiecewisePolynomial)
            and self.breakpoints == other.breakpoints
            and self.pieces == other.pieces
            and self.head == other.head
            and self.tail == other.tail
        )

    def __repr__(self):
        return (
            f"PiecewisePolynomial(breakpoints={[format_q(b) for b in self.breakpoints]}, "
            f"pieces={len(self.pieces)}, head={format_q(self.head)}, tail={format_q(self.tail)})"
        )

    # -- transforms ----------------------------------------------------------

    def scale_values(self, c: QLike) -> "PiecewisePolynomial":
        """c·f pointwise."""
        c = q(c)
        return PiecewisePolynomial(
            self.breakpoints,
            [p.scale(c) for p in self.pieces],
            c * self.head,
            c * self.tail,
        )

    def substitute_affine(self, u: QLike, v: QLike) -> "PiecewisePolynomial":
        """Return g with g(x) = f((x − v)/u); requires u > 0."""
        u, v = q(u), q(v)
        if u <= 0:
            raise ValidationError("substitute_affine needs u > 0")
        return PiecewisePolynomial(
            [v + u * b for b in self.breakpoints],
            [p.compose_affine(Q(1) / u, -v / u) for p in self.pieces],
            self.head,
            self.tail,
        )

    def is_nonincreasing(self) -> bool:
        """Exact global monotonicity check (pieces and jumps)."""
        prev_left = self.head
        for i, piece in enumerate(self.pieces):
            b_lo, b_hi = self.breakpoints[i], self.breakpoints[i + 1]
            if piece(b_lo) > prev_left:
                return False
            if not poly_nonneg_on(-piece.derivative(), b_lo, b_hi):
                return False
            prev_left = piece(b_hi)
        return self.tail <= prev_left

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "breakpoints": [format_q(b) for b in self.breakpoints],
            "pieces": [[format_q(c) for c in p.coeffs] for p in self.pieces],
            "head": format_q(self.head),
            "tail": format_q(self.tail),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def from_json_dict(d: dict) -> "PiecewisePolynomial":
        return PiecewisePolynomial(
            [q(b) for b in d["breakpoints"]],
            [Polynomial(q(c) for c in cs) for cs in d["pieces"]],
            q(d["head"]),
            q(d["tail"]),
        )

    @staticmethod
    def from_json(text: str) -> "PiecewisePolynomial":
        return PiecewisePolynomial.from_json_dict(json.loads(text))

    @staticmethod
    def step(b: QLike, head: QLike, tail: QLike = 0) -> "PiecewisePolynomial":
        """Single jump from head to tail at b."""
        return PiecewisePolynomial([q(b)], [], head, tail)


def validate_volume_curve(f: PiecewisePolynomial, n: int, Lvol: QLike) -> None:
    """Check the volume-curve contract: head = L^{n-1}, tail = 0,
    non-increasing, piece degrees ≤ n−1."""
    Lvol = q(Lvol)
    if f.head != Lvol:
        raise ValidationError(f"volume curve head {format_q(f.head)} != {format_q(Lvol)}")
    if f.tail != 0:
        raise ValidationError("volume curve tail must be 0")
    for i, p in enumerate(f.pieces):
        if p.degree > n - 1:
            raise ValidationError(
                f"volume-curve piece {i} has degree {p.degree} > n-1 = {n - 1}"
            )
    if not f.is_nonincreasing():
        raise ValidationError("volume curve must be non-increasing")


# ---------------------------------------------------------------------------
# integration
# ---------------------------------------------------------------------------

def _segments(f: PiecewisePolynomial, lo, hi):
    """Yield (polynomial, u, v) covering [lo, hi]; u/v may be ±inf only for
    the constant head/tail segments."""
    if lo > hi:
        raise ValidationError("integration bounds out of order")
    out = []
    if lo < f.b0:
        out.append((Polynomial.constant(f.head), lo, min(hi, f.b0)))
    for i, p in enumerate(f.pieces):
        u, v = f.breakpoints[i], f.breakpoints[i + 1]
        u2, v2 = max(u, lo), min(v, hi)
        if u2 < v2:
            out.append((p, u2, v2))
    if hi > f.bN:
        out.append((Polynomial.constant(f.tail), max(lo, f.bN), hi))
    return out


def pp_integrate(f: PiecewisePolynomial, lo, hi) -> Fraction:
    """Exact ∫_lo^hi f. Bounds may be ±inf only where the corresponding
    constant (head/tail) vanishes; otherwise the integral is divergent and
    a ValidationError is raised."""
    lo = lo if _is_inf(lo) else q(lo)
    hi = hi if _is_inf(hi) else q(hi)
    total = Q(0)
    for p, u, v in _segments(f, lo, hi):
        if _is_inf(u) or _is_inf(v):
            if p.is_zero() or (p.is_constant() and p.constant_value() == 0):
                continue
            raise ValidationError(
                "improper integral of a nonzero constant segment diverges"
            )
        total += p.integrate(u, v)
    return total


def _kernel_segment(p: Polynomial, a: Fraction, b: Fraction, order: int, u, v,
                    label: str) -> Fraction:
    """Exact ∫_u^v p(t) / (a + b·t)^order dt for one polynomial segment.

    Requires a + b·t > 0 on [u, v]. Re-expands p in powers of w = a + b·t;
    a term w^{-1} would integrate to a logarithm, which exact rational
    output cannot represent, so that case is an error naming the segment.
    v may be +inf when b > 0 and every antiderivative term decays.
    """
    if p.is_zero():
        return Q(0)
    if b == 0:
        if a <= 0:
            raise ValidationError(f"kernel base {format_q(a)} <= 0 on {label}")
        if _is_inf(v):
            raise ValidationError(f"improper plain integral on {label}")
        return p.integrate(u, v) / a**order
    # positivity of a + b t on the segment
    w_u = None if _is_inf(u) else a + b * q(u)
    w_v = None if _is_inf(v) else a + b * q(v)
    for w_end in (w_u, w_v):
        if w_end is not None and w_end <= 0:
            raise ValidationError(f"kernel a+bt <= 0 on {label}")
    if _is_inf(v) and b < 0:
        raise ValidationError(f"kernel a+bt <= 0 on {label}")
    if _is_inf(u):
        raise ValidationError(f"kernel a+bt <= 0 on {label}")
    # substitute w = a + b t: ∫ p((w-a)/b) w^{-order} dw / b
    pw = p.compose_affine(Q(1) / b, -a / b)  # p as polynomial in w
    if len(pw.coeffs) >= order and pw.coeffs[order - 1] != 0:
        raise ValidationError(
            f"kernel integral has a logarithmic term on {label} "
            f"(numerator degree {p.degree} >= order-1 = {order - 1})"
        )
    total = Q(0)
    for j, c in enumerate(pw.coeffs):
        if c == 0:
            continue
        e = j - order  # exponent of w after integration is e+1
        # antiderivative c * w^{e+1}/(e+1)
        hi_val = Q(0)
        if _is_inf(v):
            if e + 1 >= 0:
                raise ValidationError(
                    f"kernel integral diverges at infinity on {label}"
                )
            # w -> +inf, negative exponent -> 0
        else:
            hi_val = c * w_v ** (e + 1) / (e + 1)
        lo_val = c * w_u ** (e + 1) / (e + 1)
        total += hi_val - lo_val
    return total / b


def pp_integrate_kernel(
    f: PiecewisePolynomial,
    a: QLike,
    b: QLike,
    n: int,
    lo=None,
    hi=None,
    mul: Optional[Polynomial] = None,
) -> Fraction:
    """Exact ∫ f(t)·mul(t) / (a + b·t)^{n+1} dt over [lo, hi].

    Bounds default to the support [b₀, b_N]; hi may be +inf when the tail
    contribution converges (tail = 0, or b > 0). Raises ValidationError if
    a + b·t ≤ 0 anywhere on the integration range or if any segment's
    numerator degree reaches the kernel order (logarithmic term).
    """
    a, b = q(a), q(b)
    if n < 1:
        raise ValidationError("kernel order parameter n must be >= 1")
    lo = f.b0 if lo is None else (lo if _is_inf(lo) else q(lo))
    hi = f.bN if hi is None else (hi if _is_inf(hi) else q(hi))
    total = Q(0)
    for i, (p, u, v) in enumerate(_segments(f, lo, hi)):
        if mul is not None:
            p = p * mul
        if p.is_zero():
            continue
        label = f"segment {i} [{u}, {v}] (degree {p.degree})"
        total += _kernel_segment(p, a, b, n + 1, u, v, label)
    return total


# ---------------------------------------------------------------------------
# measures
# ---------------------------------------------------------------------------

class Measure1D:
    """Finite measure on the line: piecewise-polynomial density + atoms.

    Atoms are stored sorted by location with exact masses; the density may
    be None (purely atomic measure). This representation is absolutely
    continuous except at finitely many points by construction.
    """

    __slots__ = ("density", "atoms")

    def __init__(
        self,
        density: Optional[PiecewisePolynomial] = None,
        atoms: Iterable[tuple[QLike, QLike]] = (),
    ):
        if density is not None and (density.head != 0 or density.tail != 0):
            raise ValidationError("measure density must vanish outside its support")
        merged: dict[Fraction, Fraction] = {}
        for x, m in atoms:
            x, m = q(x), q(m)
            if m < 0:
                raise ValidationError("negative atom mass")
            if m:
                merged[x] = merged.get(x, Q(0)) + m
        self.density = density
        self.atoms = tuple(sorted(merged.items()))

    def mass(self) -> Fraction:
        total = sum((m for _, m in self.atoms), Q(0))
        if self.density is not None and self.density.pieces:
            total += pp_integrate(self.density, self.density.b0, self.density.bN)
        return total

    def scale(self, c: QLike) -> "Measure1D":
        c = q(c)
        if c < 0:
            raise ValidationError("measure scaling must be nonnegative")
        dens = self.density.scale_values(c) if self.density is not None else None
        return Measure1D(dens, [(x, c * m) for x, m in self.atoms])

    def support_bounds(self) -> tuple[Fraction, Fraction]:
        lows, highs = [], []
        if self.atoms:
            lows.append(self.atoms[0][0])
            highs.append(self.atoms[-1][0])
        if self.density is not None and self.density.pieces:
            lows.append(self.density.b0)
            highs.append(self.density.bN)
        if not lows:
            raise ValidationError("empty measure has no support")
        return min(lows), max(highs)

    def to_json_dict(self) -> dict:
        return {
            "density": self.density.to_json_dict() if self.density else None,
            "atoms": [[format_q(x), format_q(m)] for x, m in self.atoms],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "Measure1D":
        dens = (
            PiecewisePolynomial.from_json_dict(d["density"])
            if d.get("density")
            else None
        )
        return Measure1D(dens, [(q(x), q(m)) for x, m in d.get("atoms", ())])


def neg_differential(f: PiecewisePolynomial) -> Measure1D:
    """The difference measure −df of a non-increasing piecewise polynomial:
    density −f′ on each piece plus an atom (left limit − right value) at
    every downward jump, including the final drop onto the tail.

    Total mass is head − tail (= head for volume curves). Raises
    ValidationError if f increases anywhere (certified exactly).
    """
    if not f.is_nonincreasing():
        raise ValidationError("neg_differential requires a non-increasing function")
    atoms = []
    prev_left = f.head
    for i, piece in enumerate(f.pieces):
        b = f.breakpoints[i]
        right = piece(b)
        if prev_left > right:
            atoms.append((b, prev_left - right))
        prev_left = piece(f.breakpoints[i + 1])
    if prev_left > f.tail:
        atoms.append((f.bN, prev_left - f.tail))
    density = None
    if f.pieces:
        density = PiecewisePolynomial(
            f.breakpoints, [-p.derivative() for p in f.pieces], 0, 0
        )
        if not density.pieces:
            density = None
    return Measure1D(density, atoms)


def measure_moment(
    mu: Measure1D,
    power: int,
    kernel: Optional[tuple[QLike, QLike, int]] = None,
) -> Fraction:
    """Exact ∫ x^power dμ, or ∫ x^power / (a + b·x)^n dμ with kernel=(a,b,n).

    Atoms are evaluated pointwise; the kernel must be positive on the whole
    support of μ.
    """
    if power < 0:
        raise ValidationError("moment power must be a natural number")
    xp = Polynomial([0] * power + [1]) if power else Polynomial.constant(1)
    total = Q(0)
    if kernel is None:
        for x, m in mu.atoms:
            total += m * x**power
        if mu.density is not None and mu.density.pieces:
            # unit kernel: plain ∫ density(x)·x^power dx
            total += pp_integrate_kernel(mu.density, 1, 0, 1, mul=xp)
        return total
    a, b, n = q(kernel[0]), q(kernel[1]), kernel[2]
    if n < 0:
        raise ValidationError("kernel order must be >= 0")
    for x, m in mu.atoms:
        base = a + b * x
        if n > 0 and base <= 0:
            raise ValidationError(
                f"kernel a+bx vanishes or is negative at atom x={format_q(x)}"
            )
        total += m * x**power / (base**n if n else Q(1))
    if mu.density is not None and mu.density.pieces:
        if n == 0:
            total += pp_integrate_kernel(mu.density, 1, 0, 1, mul=xp)
        else:
            total += pp_integrate_kernel(mu.density, a, b, n - 1, mul=xp)
    return total
