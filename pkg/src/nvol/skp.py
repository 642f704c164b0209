"""A plane valuation built from a sequence of key polynomials.

The data is a pair of sequences ``c_1..c_K`` (integers > 1) and
``beta_1..beta_K`` (rationals), encoding key polynomials ``q_0 = y``,
``q_1 = x``, ``q_{i+1} = q_i^{c_i} + y^{beta_i c_i}`` with values
``v(q_i) = beta_i`` and ``v(y) = 1``.  Products ``q^a`` with bounded
exponents form a vector-space basis with pairwise distinct values, which
makes valuation-ideal codimensions and graded-piece dimensions exactly
countable.  The depth-limited volume approximants ``d_k / beta_k`` are
strictly decreasing, and the log discrepancy grows like the partial sums
of ``1/c_i``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConsistencyError, ValidationError
from .exact import q


def _primes(count: int) -> list[int]:
    """First `count` primes by trial division (depths here are tiny)."""
    out: list[int] = []
    n = 2
    while len(out) < count:
        if all(n % p for p in out):
            out.append(n)
        n += 1
    return out


@dataclass(frozen=True)
class SKPData:
    """Key-polynomial sequence data ``(c_i, beta_i)`` with derived degrees ``d_i``."""

    c: tuple[int, ...]
    beta: tuple[Fraction, ...]
    d: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        cs = tuple(self.c)
        bs = tuple(q(b) for b in self.beta)
        if len(cs) != len(bs) or not cs:
            raise ValidationError("c and beta must be non-empty and equal length")
        ds = [1]
        prev_c, prev_b = 1, Fraction(1)
        for i, (ci, bi) in enumerate(zip(cs, bs), start=1):
            if not isinstance(ci, int) or ci <= 1:
                raise ValidationError(f"c_{i} must be an integer > 1, got {ci}")
            if bi.denominator != ci:
                raise ValidationError(
                    f"beta_{i} = {bi} must have denominator exactly c_{i} = {ci}"
                )
            if math.gcd(ci, ds[-1]) != 1:
                raise ValidationError(
                    f"c_{i} = {ci} must be coprime to d_{i} = {ds[-1]}"
                )
            if bi <= prev_c * prev_b:
                raise ValidationError(
                    f"beta_{i} = {bi} must exceed c_{i-1}*beta_{i-1} = {prev_c * prev_b}"
                )
            ds.append(ds[-1] * ci)
            prev_c, prev_b = ci, bi
        object.__setattr__(self, "c", cs)
        object.__setattr__(self, "beta", bs)
        object.__setattr__(self, "d", tuple(ds[:-1]))
        object.__setattr__(self, "_d_top", ds[-1])

    @property
    def depth(self) -> int:
        return len(self.c)

    @property
    def max_x_degree(self) -> int:
        """Largest x-exponent representable at this depth (= d_K * c_K - 1)."""
        return self._d_top - 1


@dataclass(frozen=True)
class QMonomialExponent:
    """Exponent of a standard q-monomial: free a0 (on y), capped a_i (on q_i)."""

    a0: int
    a: tuple[int, ...]

    def __post_init__(self):
        if self.a0 < 0 or any(ai < 0 for ai in self.a):
            raise ValidationError("exponents must be non-negative")


def _check_exponent(data: SKPData, exp: QMonomialExponent) -> None:
    if len(exp.a) > data.depth:
        raise ValidationError(
            f"exponent has {len(exp.a)} entries but depth is {data.depth}"
        )
    for i, (ai, ci) in enumerate(zip(exp.a, data.c), start=1):
        if ai >= ci:
            raise ValidationError(f"a_{i} = {ai} must be < c_{i} = {ci}")


def qmon_value(data: SKPData, exp: QMonomialExponent) -> Fraction:
    """Value of ``y^{a0} q_1^{a1} ... q_K^{aK}``: a0 + sum a_i * beta_i."""
    _check_exponent(data, exp)
    return exp.a0 + sum(
        (ai * bi for ai, bi in zip(exp.a, data.beta)), Fraction(0)
    )


def qmon_order(data: SKPData, exp: QMonomialExponent) -> int:
    """Degree of the initial monomial ``y^{a0} x^{sum a_i d_i}``: a0 + sum a_i d_i."""
    _check_exponent(data, exp)
    return exp.a0 + sum(ai * di for ai, di in zip(exp.a, data.d))


def initial_monomial(data: SKPData, exp: QMonomialExponent) -> tuple[int, int]:
    """(x-exponent, y-exponent) of the lowest-degree homogeneous component."""
    _check_exponent(data, exp)
    return sum(ai * di for ai, di in zip(exp.a, data.d)), exp.a0


def _box(data: SKPData):
    """Iterate all capped exponent vectors (a1,...,aK) with their values."""

    def rec(i: int, acc: tuple[int, ...], val: Fraction):
        if i == data.depth:
            yield acc, val
            return
        for ai in range(data.c[i]):
            yield from rec(i + 1, acc + (ai,), val + ai * data.beta[i])

    yield from rec(0, (), Fraction(0))


def skp_codim(data: SKPData, m) -> int:
    """Codimension of the valuation ideal: #{q-monomials with value < m}.

    Requires ``c_K * beta_K >= m``; a deeper key polynomial would add
    q-monomials of value ``beta_{K+1} > c_K beta_K``, which cannot fall
    below such m, so the enumeration at this depth is complete.
    """
    m = q(m)
    if m <= 0:
        raise ValidationError("m must be positive")
    top = data.c[-1] * data.beta[-1]
    if top < m:
        raise ValidationError(
            f"depth {data.depth} insufficient for m = {m}: "
            f"c_K*beta_K = {top} < m; extend the sequence until c_K*beta_K >= m"
        )
    total = 0
    for _, val in _box(data):
        rem = m - val
        if rem > 0:
            total += math.ceil(rem)
    return total


def mixed_radix(data: SKPData, e: int) -> tuple[int, ...]:
    """Digits (a1,...,aK) of the unique expansion e = sum a_i d_i, a_i < c_i."""
    if e < 0:
        raise ValidationError("x-exponent must be non-negative")
    if e > data.max_x_degree:
        raise ValidationError(
            f"x-exponent {e} not representable at depth {data.depth} "
            f"(max {data.max_x_degree})"
        )
    return tuple((e // di) % ci for di, ci in zip(data.d, data.c))


def skp_filtration_dim(data: SKPData, m, k: int) -> int:
    """dim of the degree-k filtration piece at level m.

    Counts pairs (a0, a) with a0 + sum a_i d_i = k and value >= m; each
    degree-k monomial ``x^e y^{k-e}`` contributes through the mixed-radix
    digits of e (the best value with that initial monomial).
    """
    m = q(m)
    if k < 0:
        raise ValidationError("degree must be non-negative")
    count = 0
    for e in range(k + 1):
        digits = mixed_radix(data, e)
        val = (k - e) + sum(
            (ai * bi for ai, bi in zip(digits, data.beta)), Fraction(0)
        )
        if val >= m:
            count += 1
    return count


def skp_degree_values(data: SKPData, k: int) -> tuple[Fraction, ...]:
    """Values of the k+1 degree-k basis monomials, sorted descending."""
    if k < 0:
        raise ValidationError("degree must be non-negative")
    vals = []
    for e in range(k + 1):
        digits = mixed_radix(data, e)
        vals.append(
            (k - e)
            + sum((ai * bi for ai, bi in zip(digits, data.beta)), Fraction(0))
        )
    return tuple(sorted(vals, reverse=True))


def skp_vol_approx(data: SKPData, k: int) -> Fraction:
    """Depth-k volume approximant d_k / beta_k (strictly decreasing in k)."""
    if not 1 <= k <= data.depth:
        raise ValidationError(f"k must be in 1..{data.depth}")
    seq = [Fraction(data.d[i]) / data.beta[i] for i in range(k)]
    for prev, nxt in zip(seq, seq[1:]):
        if not nxt < prev:
            raise ConsistencyError("volume approximants failed to decrease")
    return seq[-1]


def skp_logdisc(data: SKPData, k: int) -> Fraction:
    """Log-discrepancy partial sum A_k = 2 + sum_{i<=k} (beta_i - c_{i-1} beta_{i-1})."""
    if not 0 <= k <= data.depth:
        raise ValidationError(f"k must be in 0..{data.depth}")
    total = Fraction(2)
    prev_c, prev_b = 1, Fraction(1)
    for i in range(k):
        total += data.beta[i] - prev_c * prev_b
        prev_c, prev_b = data.c[i], data.beta[i]
    return total


# ---------------------------------------------------------------------------
# q-monomial expansion of bivariate polynomials
#
# Polynomials in x, y are sparse maps {(ex, ey): coefficient}.  Division by
# q_K, ..., q_2 in the x-variable (each q_i monic in x of degree d_i) peels
# off the capped exponents; what remains has x-degree < d_2 = c_1 and reads
# off a_1 and a0 directly.

XYPoly = dict


def _xy_add(f: XYPoly, g: XYPoly, sign: int = 1) -> XYPoly:
    out = dict(f)
    for e, c in g.items():
        nc = out.get(e, Fraction(0)) + sign * c
        if nc:
            out[e] = nc
        else:
            out.pop(e, None)
    return out


def _xy_mul(f: XYPoly, g: XYPoly) -> XYPoly:
    out: XYPoly = {}
    for (ax, ay), ac in f.items():
        for (bx, by), bc in g.items():
            e = (ax + bx, ay + by)
            nc = out.get(e, Fraction(0)) + ac * bc
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
    return out


def _xy_pow(f: XYPoly, e: int) -> XYPoly:
    out: XYPoly = {(0, 0): Fraction(1)}
    for _ in range(e):
        out = _xy_mul(out, f)
    return out


def _xy_deg_x(f: XYPoly) -> int:
    return max((ex for ex, _ in f), default=-1)


def _xy_divmod_x(f: XYPoly, g: XYPoly) -> tuple[XYPoly, XYPoly]:
    """Division with remainder in x by g, monic in x; deg_x(rem) < deg_x(g)."""
    dg = _xy_deg_x(g)
    quo: XYPoly = {}
    rem = dict(f)
    while _xy_deg_x(rem) >= dg:
        dr = _xy_deg_x(rem)
        lead = {(dr - dg, ey): c for (ex, ey), c in rem.items() if ex == dr}
        quo = _xy_add(quo, lead)
        rem = _xy_add(rem, _xy_mul(lead, g), sign=-1)
    return quo, rem


def key_polynomials(data: SKPData, top: int | None = None) -> list[XYPoly]:
    """[q_2, ..., q_top] as sparse polynomials (q_0 = y and q_1 = x are implicit).

    Building q_{i+1} = q_i^{c_i} + y^{b_i} multiplies term counts, so the
    ladder is cut at ``top`` (default: the full depth).
    """
    if top is None:
        top = data.depth
    qs = []
    qi: XYPoly = {(1, 0): Fraction(1)}  # q_1 = x
    for i in range(top - 1):
        b = data.beta[i] * data.c[i]
        qi = _xy_add(_xy_pow(qi, data.c[i]), {(0, int(b)): Fraction(1)})
        qs.append(qi)
    return qs


def skp_expand(
    data: SKPData, poly: XYPoly
) -> list[tuple[Fraction, QMonomialExponent]]:
    """Unique expansion f = sum b_a q^a, by iterated x-division by q_K..q_2.

    Terms come back sorted lexicographically by exponent (a0, a1, ..., aK).
    """
    poly = {e: q(c) for e, c in poly.items() if q(c)}
    deg = _xy_deg_x(poly)
    if deg > data.max_x_degree:
        raise ValidationError(
            f"x-degree {deg} not representable at depth {data.depth} "
            f"(max {data.max_x_degree})"
        )
    # q_i can only carry a nonzero exponent when d_i <= deg_x(f); higher
    # levels get digit 0, so the expensive upper ladder is never built.
    top = 1
    while top < data.depth and data.d[top] <= deg:
        top += 1
    qs = key_polynomials(data, top)
    pad = (0,) * (data.depth - top)
    terms: list[tuple[Fraction, QMonomialExponent]] = []

    def rec(f: XYPoly, level: int, suffix: tuple[int, ...]):
        if not f:
            return
        if level == 0:
            # x-degree < c_1 now: monomials read off a1 (x) and a0 (y)
            for (ex, ey), c in f.items():
                exp = QMonomialExponent(ey, (ex,) + suffix + pad)
                _check_exponent(data, exp)
                terms.append((c, exp))
            return
        digit = 0
        rem = f
        parts = []
        while rem:
            quo, r = _xy_divmod_x(rem, qs[level - 1])
            parts.append((digit, r))
            rem = quo
            digit += 1
        if digit > data.c[level]:
            raise ConsistencyError("division produced an out-of-range exponent")
        for dg, part in parts:
            rec(part, level - 1, (dg,) + suffix)

    rec(poly, top - 1, ())
    terms.sort(key=lambda t: (t[1].a0, t[1].a))
    return terms


def skp_value(data: SKPData, poly: XYPoly) -> Fraction:
    """Valuation of a polynomial: min of qmon_value over its expansion terms."""
    terms = skp_expand(data, poly)
    if not terms:
        raise ValidationError("the zero polynomial has no value")
    return min(qmon_value(data, exp) for _, exp in terms)


_TERM_RE = re.compile(r"[+-]?[^+-]+")
_FACTOR_RE = re.compile(r"^([xy])(?:\^(\d+))?$")


def parse_xy_poly(text: str) -> XYPoly:
    """Parse strings like ``"4*x^2+8*y^3"`` or ``"x^2 + y^3"`` to a sparse map."""
    s = text.replace(" ", "")
    if not s:
        raise ValidationError("empty polynomial")
    out: XYPoly = {}
    consumed = 0
    for mt in _TERM_RE.finditer(s):
        if mt.start() != consumed:
            raise ValidationError(f"cannot parse polynomial near {text!r}")
        consumed = mt.end()
        chunk = mt.group(0)
        sign = -1 if chunk.startswith("-") else 1
        chunk = chunk.lstrip("+-")
        coeff = Fraction(sign)
        ex = ey = 0
        for factor in chunk.split("*"):
            fm = _FACTOR_RE.match(factor)
            if fm:
                e = int(fm.group(2)) if fm.group(2) else 1
                if fm.group(1) == "x":
                    ex += e
                else:
                    ey += e
            else:
                try:
                    coeff *= Fraction(factor)
                except (ValueError, ZeroDivisionError):
                    raise ValidationError(
                        f"cannot parse factor {factor!r} in {text!r}"
                    ) from None
        key = (ex, ey)
        nc = out.get(key, Fraction(0)) + coeff
        if nc:
            out[key] = nc
        else:
            out.pop(key, None)
    if consumed != len(s):
        raise ValidationError(f"cannot parse polynomial near {text!r}")
    return out


def zariski_primes(depth: int) -> SKPData:
    """The prime-denominator sequence: c_i = i-th prime, beta_{i+1} = c_i beta_i + 1/c_{i+1}."""
    if depth < 1:
        raise ValidationError("depth must be at least 1")
    primes = _primes(depth)
    betas = [Fraction(3, 2)]
    for i in range(1, depth):
        betas.append(primes[i - 1] * betas[-1] + Fraction(1, primes[i]))
    return SKPData(tuple(primes), tuple(betas))


def skp_presets() -> dict:
    """Named SKPData builders keyed by preset name; builders take a depth."""
    return {"zariski-primes": zariski_primes}
