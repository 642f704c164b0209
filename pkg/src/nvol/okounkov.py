"""Two-dimensional lattice-valuation geometry: semigroups, coconvex regions.

A flag valuation sends monomials (ordinary or key-polynomial) to lattice
points (V0, V1) in the cone C = {0 <= mu <= tau}.  A valuation-ideal level
m carves a finite complement out of the value semigroup; in the rescaled
limit the carved region is an explicit triangle, so covolumes, slices and
the H-function all have exact closed forms that the finite data must
converge to (and stay inside of).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, ValidationError
from .exact import PiecewisePolynomial, Polynomial, decimal_str, pp_integrate_kernel, q
from .monomial import MonomialValuation, mono_count_oracle
from .skp import SKPData, mixed_radix, skp_codim, skp_vol_approx

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class MonomialFlag:
    """Flag valuation of a monomial source: x^a y^b -> (a+b, b)."""

    gamma: tuple[Fraction, Fraction]

    def __post_init__(self):
        val = MonomialValuation(self.gamma)
        if val.dim != 2:
            raise ValidationError("flag valuations are two-dimensional")
        object.__setattr__(self, "gamma", val.weights)


@dataclass(frozen=True)
class SKPFlag:
    """Flag valuation of a key-polynomial source: q^a -> (a0 + sum a_i d_i, a0)."""

    data: SKPData


def semigroup_points(fv, degree_bound: int) -> tuple[tuple[int, int], ...]:
    """All semigroup points with V0 <= degree_bound, deduplicated and sorted.

    Both families fill the whole lattice cone {0 <= V1 <= V0}; for the
    key-polynomial family that needs V0 within the representable range.
    """
    if degree_bound < 0:
        raise ValidationError("degree bound must be non-negative")
    if isinstance(fv, SKPFlag) and degree_bound > fv.data.max_x_degree:
        raise ValidationError(
            f"degree bound {degree_bound} exceeds the representable "
            f"x-degree {fv.data.max_x_degree}"
        )
    if not isinstance(fv, (MonomialFlag, SKPFlag)):
        raise ValidationError(f"not a flag valuation: {fv!r}")
    return tuple(
        (v0, v1) for v0 in range(degree_bound + 1) for v1 in range(v0 + 1)
    )


def primary_complement(fv, m) -> tuple[tuple[tuple[int, int], ...], int]:
    """Lattice points realizable only below valuation level m, with count.

    The count is independently cross-checked against the codimension
    oracle of the source family; a mismatch is a consistency error.
    """
    m = q(m)
    if m <= 0:
        raise ValidationError("m must be positive")
    points: set[tuple[int, int]] = set()
    if isinstance(fv, MonomialFlag):
        g1, g2 = fv.gamma
        a = 0
        while a * g1 < m:
            b = 0
            while a * g1 + b * g2 < m:
                points.add((a + b, b))
                b += 1
            a += 1
        expected = mono_count_oracle(MonomialValuation(fv.gamma), m)
    elif isinstance(fv, SKPFlag):
        data = fv.data
        top = data.c[-1] * data.beta[-1]
        if top < m:
            raise ValidationError(
                f"depth {data.depth} insufficient for m = {m}: "
                f"c_K*beta_K = {top} < m"
            )

        def rec(i: int, order: int, value: Fraction):
            if i == data.depth:
                a0 = 0
                while a0 + value < m:
                    points.add((order + a0, a0))
                    a0 += 1
                return
            for ai in range(data.c[i]):
                rec(i + 1, order + ai * data.d[i], value + ai * data.beta[i])

        rec(0, 0, Fraction(0))
        expected = skp_codim(data, m)
    else:
        raise ValidationError(f"not a flag valuation: {fv!r}")
    if len(points) != expected:
        raise ConsistencyError(
            f"complement has {len(points)} points but the codimension "
            f"oracle gives {expected}"
        )
    return tuple(sorted(points)), expected


@dataclass(frozen=True)
class ConvexRegion2D:
    """The carved region Gamma = C /\\ {c_tau * tau + c_mu * mu >= 1}.

    ``removed`` lists the counterclockwise vertices of the coconvex
    complement C \\ Gamma (a triangle for both source families).
    """

    removed: tuple[Point, ...]
    c_tau: Fraction
    c_mu: Fraction

    def slice(self, tau) -> tuple[Fraction, Fraction] | None:
        """Gamma /\\ {V0 = tau} as a mu-interval, or None when empty."""
        tau = q(tau)
        if tau < 0:
            raise ValidationError("tau must be non-negative")
        lo, hi = Fraction(0), tau
        rhs = 1 - self.c_tau * tau
        if self.c_mu > 0:
            lo = max(lo, rhs / self.c_mu)
        elif self.c_mu < 0:
            hi = min(hi, rhs / self.c_mu)
        elif rhs > 0:
            return None
        if lo > hi:
            return None
        return lo, hi


def gamma_region(fv) -> ConvexRegion2D:
    """Exact carved region of a flag valuation (depth approximant for SKP)."""
    if isinstance(fv, MonomialFlag):
        g1, g2 = fv.gamma
        o = (Fraction(0), Fraction(0))
        a = (1 / g1, Fraction(0))
        b = (1 / g2, 1 / g2)
        return ConvexRegion2D((o, a, b), g1, g2 - g1)
    if isinstance(fv, SKPFlag):
        alpha_inv = skp_vol_approx(fv.data, fv.data.depth)
        o = (Fraction(0), Fraction(0))
        a = (alpha_inv, Fraction(0))
        b = (Fraction(1), Fraction(1))
        return ConvexRegion2D(
            (o, a, b), 1 / alpha_inv, -(1 - alpha_inv) / alpha_inv
        )
    raise ValidationError(f"not a flag valuation: {fv!r}")


def covolume(region: ConvexRegion2D, n: int = 2) -> Fraction:
    """Shoelace area of the removed polygon; vol = n! * covolume."""
    if n != 2:
        raise ValidationError("only the two-dimensional covolume is defined")
    pts = region.removed
    if len(pts) < 3 or len(set(pts)) != len(pts):
        raise ValidationError("removed region must be a simple polygon")
    twice = Fraction(0)
    for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
        twice += x0 * y1 - x1 * y0
    if twice <= 0:
        raise ValidationError("polygon must be counterclockwise and non-degenerate")
    return twice / 2


def _finite_slice(fv, t: Fraction, k: int) -> tuple[Fraction, Fraction] | None:
    """[min, max] of V1/(kt) over the degree-k basis with value >= kt."""
    vals: list[int] = []
    if isinstance(fv, MonomialFlag):
        g1, g2 = fv.gamma
        for b in range(k + 1):
            if g1 * (k - b) + g2 * b >= k * t:
                vals.append(b)
    else:
        data = fv.data
        if k > data.max_x_degree:
            raise ValidationError(
                f"level {k} exceeds the representable x-degree "
                f"{data.max_x_degree}"
            )
        for e in range(k + 1):
            digits = mixed_radix(data, e)
            value = (k - e) + sum(
                (ai * bi for ai, bi in zip(digits, data.beta)), Fraction(0)
            )
            if value >= k * t:
                vals.append(k - e)
    if not vals:
        return None
    return Fraction(min(vals), 1) / (k * t), Fraction(max(vals), 1) / (k * t)


@dataclass(frozen=True)
class SliceReport:
    t: Fraction
    tau: Fraction
    exact: tuple[Fraction, Fraction] | None
    levels: tuple[int, ...]
    finite: tuple[tuple[Fraction, Fraction] | None, ...]
    gaps: tuple[Fraction | None, ...]
    included: tuple[bool, ...]

    @property
    def all_included(self) -> bool:
        return all(self.included)


def slice_check(fv, t, m_levels) -> SliceReport:
    """Compare the exact Gamma-slice at V0 = 1/t with finite-level segments.

    Each level k contributes the normalized segment of the level-kt piece
    in degree k; the report carries per-level Hausdorff gaps and whether
    the finite segment sits inside the exact one.
    """
    t = q(t)
    if t <= 0:
        raise ValidationError("t must be positive")
    if not m_levels:
        raise ValidationError("need at least one level")
    tau = 1 / t
    exact = gamma_region(fv).slice(tau)
    finite, gaps, included = [], [], []
    for k in m_levels:
        if k < 1:
            raise ValidationError("levels must be positive")
        seg = _finite_slice(fv, t, k)
        finite.append(seg)
        if seg is None or exact is None:
            gaps.append(None)
            included.append(seg is None)
        else:
            gaps.append(max(abs(seg[0] - exact[0]), abs(seg[1] - exact[1])))
            included.append(seg[0] >= exact[0] and seg[1] <= exact[1])
    return SliceReport(
        t, tau, exact, tuple(m_levels), tuple(finite), tuple(gaps), tuple(included)
    )


def h_function(fv, x) -> Fraction:
    """Exit time of the ray {(tau, x*tau)} from the removed region.

    With the carving halfplane c_tau*tau + c_mu*mu >= 1 this is
    1 / (c_tau + c_mu * x), for x in the unit Okounkov segment.
    """
    x = q(x)
    if not 0 <= x <= 1:
        raise ValidationError("x must lie in [0, 1]")
    region = gamma_region(fv)
    return 1 / (region.c_tau + region.c_mu * x)


def form3_check(fv) -> Fraction:
    """Assert integral_0^1 H(x)^2 dx = 2 * covolume; return the common value."""
    region = gamma_region(fv)
    unit = PiecewisePolynomial([0, 1], [Polynomial([1])], 1, 0)
    integral = pp_integrate_kernel(
        unit, region.c_tau, region.c_mu, 1, lo=0, hi=1
    )
    vol = 2 * covolume(region)
    if integral != vol:
        raise ConsistencyError(
            f"H-integral {integral} disagrees with 2*covolume = {vol}"
        )
    return vol


def emit_figure(path: str, points=(), polygons=(), canvas: int = 640) -> str:
    """Write a deterministic SVG of lattice points and/or polygons.

    Identical inputs produce identical bytes: points are deduplicated and
    sorted, coordinates are emitted at six decimals on a fixed canvas.
    """
    pts = sorted({(q(x), q(y)) for x, y in points})
    polys = [tuple((q(x), q(y)) for x, y in poly) for poly in polygons]
    xs = [p[0] for p in pts] + [v[0] for poly in polys for v in poly]
    ys = [p[1] for p in pts] + [v[1] for poly in polys for v in poly]
    if not xs:
        xs, ys = [Fraction(0), Fraction(1)], [Fraction(0), Fraction(1)]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    if xmax == xmin:
        xmax = xmin + 1
    if ymax == ymin:
        ymax = ymin + 1
    pad = Fraction(canvas, 10)
    span = canvas - 2 * pad

    def sx(x: Fraction) -> str:
        return decimal_str(pad + span * (x - xmin) / (xmax - xmin), 6)

    def sy(y: Fraction) -> str:
        return decimal_str(canvas - pad - span * (y - ymin) / (ymax - ymin), 6)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{canvas}" '
        f'height="{canvas}" viewBox="0 0 {canvas} {canvas}">',
        f'<rect width="{canvas}" height="{canvas}" fill="#ffffff"/>',
    ]
    for poly in polys:
        coords = " ".join(f"{sx(x)},{sy(y)}" for x, y in poly)
        lines.append(
            f'<polygon points="{coords}" fill="#e8e8e8" '
            f'stroke="#444444" stroke-width="1"/>'
        )
    for x, y in pts:
        lines.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="2" fill="#000000"/>')
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    return path
