"""Cone-over-a-Fano computations: interpolation functional and invariants.

Everything here lives on the affine cone X over a polarized base (V, L)
with L a fraction 1/r of the anticanonical class.  A valuation on the
cone induces a filtration of the section ring whose volume curve drives:

* the interpolation functional ``phi(lam, s)`` between the canonical
  valuation (s = 0) and a rescaled target (s = 1), with its first
  derivative at 0 and second derivative — each by two independent
  integral routes that must agree exactly;
* the divisorial invariant ``theta`` and its rescaling identity;
* the one-parameter families v_alpha (additive) and w_beta (wedge), with
  exact derivative formulas at the trivial member;
* weight-type quantities: the CM weight from a moment of the limit
  measure, and the boundary exponent ``d_infinity``.

All arithmetic is exact; any disagreement between redundant routes is a
hard :class:`ConsistencyError`, never a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, ValidationError
from .exact import (
    INF,
    Measure1D,
    PiecewisePolynomial,
    Polynomial,
    measure_moment,
    neg_differential,
    pp_integrate,
    pp_integrate_kernel,
    q,
    validate_volume_curve,
)
from .filtration import support_bounds


@dataclass(frozen=True)
class ConeSetup:
    """Volume-curve data of a valuation on the cone.

    ``vol_curve`` is t -> vol(R^(t)) for the induced filtration; it must
    sit at the full volume ``Lvol`` up to ``c1`` (the minimal normalized
    value), and ``A1`` is the log discrepancy of the target valuation.
    """

    n: int
    r: Fraction
    Lvol: Fraction
    c1: Fraction
    A1: Fraction
    vol_curve: PiecewisePolynomial
    label: str = ""

    def __post_init__(self):
        for name in ("r", "Lvol", "c1", "A1"):
            object.__setattr__(self, name, q(getattr(self, name)))
        if self.n < 1:
            raise ValidationError("dimension must be at least 1")
        if self.r <= 0:
            raise ValidationError("r must be positive")
        if self.c1 <= 0:
            raise ValidationError("c1 must be positive")
        validate_volume_curve(self.vol_curve, self.n, self.Lvol)
        if self.vol_curve.b0 < self.c1 or self.vol_curve(self.c1) != self.Lvol:
            raise ValidationError("volume curve must equal Lvol up to c1")
        if self.A1 < self.r * self.c1:
            raise ValidationError("A1 must be at least r*c1")

    @property
    def lambda_star(self) -> Fraction:
        return self.r / self.A1

    def dh(self) -> Measure1D:
        return neg_differential(self.vol_curve)


@dataclass(frozen=True)
class DivisorialData:
    """Divisorial filtration data on the base: curve of vol(F-filtration).

    ``A_F`` is the log discrepancy of the divisor on the base, ``q`` its
    multiplicity against the cone grading, and ``a1 = -q*A_F/r`` the
    induced shift.
    """

    n: int
    r: Fraction
    Lvol: Fraction
    A_F: Fraction
    q: Fraction
    vol_curve_F: PiecewisePolynomial
    label: str = ""

    def __post_init__(self):
        for name in ("r", "Lvol", "A_F", "q"):
            object.__setattr__(self, name, q(getattr(self, name)))
        if self.n < 1:
            raise ValidationError("dimension must be at least 1")
        if self.r <= 0 or self.q <= 0:
            raise ValidationError("r and q must be positive")
        if self.A_F <= 0:
            raise ValidationError("A_F must be positive")
        validate_volume_curve(self.vol_curve_F, self.n, self.Lvol)
        if self.vol_curve_F.b0 < 0:
            raise ValidationError("divisorial curve must be supported in t >= 0")

    @property
    def a1(self) -> Fraction:
        return -self.q * self.A_F / self.r

    @property
    def KVn1(self) -> Fraction:
        """Anticanonical volume of the base, (-K_V)^{n-1} = r^{n-1} * Lvol."""
        return self.r ** (self.n - 1) * self.Lvol


def vol_v1(setup: ConeSetup) -> Fraction:
    """Volume of the target valuation, by two integral routes (must agree).

    Route 1: Lvol/c1^n - n * integral_{c1}^inf vol(t) dt / t^{n+1}.
    Route 2: integral t^{-n} d(-vol).
    """
    n = setup.n
    route1 = setup.Lvol / setup.c1**n - n * pp_integrate_kernel(
        setup.vol_curve, 0, 1, n, lo=setup.c1, hi=INF
    )
    route2 = measure_moment(setup.dh(), 0, (0, 1, n))
    if route1 != route2:
        raise ConsistencyError(
            f"volume routes disagree: {route1} (kernel) vs {route2} (measure)"
        )
    return route1


def phi(setup: ConeSetup, lam, s) -> Fraction:
    """Interpolation functional between vol(v0) (s=0) and vol(lam*v1) (s=1).

    Computed as Lvol/(lam c1 s + (1-s))^n minus a kernel integral, and
    again as the measure integral of ((1-s) + lam s t)^{-n}; exact
    agreement of the two is enforced.
    """
    lam, s = q(lam), q(s)
    if lam <= 0:
        raise ValidationError("lambda must be positive")
    if not 0 <= s <= 1:
        raise ValidationError("s must lie in [0, 1]")
    n = setup.n
    a, b = 1 - s, lam * s
    route1 = setup.Lvol / (lam * setup.c1 * s + (1 - s)) ** n
    route1 -= (
        n
        * lam
        * s
        * pp_integrate_kernel(setup.vol_curve, a, b, n, lo=setup.c1, hi=INF)
    )
    route2 = measure_moment(setup.dh(), 0, (a, b, n))
    if route1 != route2:
        raise ConsistencyError(
            f"phi routes disagree at (lam={lam}, s={s}): {route1} vs {route2}"
        )
    return route1


def phi_s_at_0(setup: ConeSetup, lam) -> Fraction:
    """One-sided derivative of phi in s at s = 0 (closed form)."""
    lam = q(lam)
    if lam <= 0:
        raise ValidationError("lambda must be positive")
    total = pp_integrate(setup.vol_curve, setup.c1, INF)
    return (
        setup.n
        * lam
        * setup.Lvol
        * (1 / lam - setup.c1 - total / setup.Lvol)
    )


def phi_second(setup: ConeSetup, lam, s) -> Fraction:
    """Second derivative of phi in s, exact and nonnegative.

    Measure route: n(n+1) * integral (lam t - 1)^2 d(-vol) / ((1-s)+lam s t)^{n+2}.
    Cross-checked against the differentiated kernel route.
    """
    lam, s = q(lam), q(s)
    if lam <= 0:
        raise ValidationError("lambda must be positive")
    if not 0 <= s <= 1:
        raise ValidationError("s must lie in [0, 1]")
    n = setup.n
    a, b = 1 - s, lam * s
    dh = setup.dh()
    kernel = (a, b, n + 2)
    m0 = measure_moment(dh, 0, kernel)
    m1 = measure_moment(dh, 1, kernel)
    m2 = measure_moment(dh, 2, kernel)
    value = n * (n + 1) * (lam**2 * m2 - 2 * lam * m1 + m0)

    u = lam * setup.c1 - 1
    lead = n * (n + 1) * u**2 * setup.Lvol / (1 + s * u) ** (n + 2)
    lin = Polynomial([-1, lam])  # lam*t - 1
    mul = (lin * (lin.scale(q(n) * s) + Polynomial.constant(-2))).scale(lam)
    tail = n * (n + 1) * pp_integrate_kernel(
        setup.vol_curve, a, b, n + 2, lo=setup.c1, hi=INF, mul=mul
    )
    check = lead - tail
    if value != check:
        raise ConsistencyError(
            f"phi_second routes disagree at (lam={lam}, s={s}): {value} vs {check}"
        )
    if value < 0:
        raise ConsistencyError(f"phi_second came out negative: {value}")
    return value


def vs_interpolation(setup: ConeSetup, s) -> Fraction:
    """Volume of the interpolated valuation v_s; equals phi(setup, 1, s)."""
    s = q(s)
    if not 0 <= s <= 1:
        raise ValidationError("s must lie in [0, 1]")
    value = measure_moment(setup.dh(), 0, (1 - s, s, setup.n))
    other = phi(setup, 1, s)
    if value != other:
        raise ConsistencyError(
            f"v_s volume {value} disagrees with phi(1, {s}) = {other}"
        )
    return value


def uniqueness_detector(setup: ConeSetup) -> bool:
    """True iff the limit measure is a single Dirac (lambda_min = lambda_max)."""
    lo, hi = support_bounds(setup.vol_curve)
    return lo == hi


def theta(div: DivisorialData) -> Fraction:
    """Divisorial invariant A_F - (r^n / (-K_V)^{n-1}) * integral of the curve."""
    total = pp_integrate(div.vol_curve_F, 0, INF)
    return div.A_F - div.r**div.n * total / div.KVn1


def rescale_divisorial(div: DivisorialData, sigma: int) -> DivisorialData:
    """The same divisor against the polarization L/sigma."""
    if not isinstance(sigma, int) or sigma < 1:
        raise ValidationError("sigma must be a positive integer")
    scale = Fraction(1, sigma ** (div.n - 1))
    curve = div.vol_curve_F.substitute_affine(Fraction(1, sigma), 0).scale_values(
        scale
    )
    return DivisorialData(
        n=div.n,
        r=div.r * sigma,
        Lvol=div.Lvol * scale,
        A_F=div.A_F,
        q=div.q,
        vol_curve_F=curve,
        label=f"{div.label}/sigma={sigma}" if div.label else f"sigma={sigma}",
    )


def theta_rescale_check(div: DivisorialData, sigma: int) -> bool:
    """Assert theta is invariant under the L -> L/sigma rescaling."""
    t0 = theta(div)
    t1 = theta(rescale_divisorial(div, sigma))
    if t0 != t1:
        raise ConsistencyError(
            f"theta changed under sigma={sigma} rescaling: {t0} -> {t1}"
        )
    return True


def valpha(div: DivisorialData, alpha) -> tuple[Fraction, Fraction]:
    """(vol, nvol) of the additive family member v_alpha, exactly.

    vol(v_alpha) = Lvol - n alpha * integral vol_F(t) dt / (1 + alpha t)^{n+1},
    with log discrepancy r + alpha * A_F.
    """
    alpha = q(alpha)
    if alpha < 0:
        raise ValidationError("alpha must be non-negative")
    n = div.n
    vol = div.Lvol - n * alpha * pp_integrate_kernel(
        div.vol_curve_F, 1, alpha, n, lo=0, hi=INF
    )
    logdisc = div.r + alpha * div.A_F
    return vol, logdisc**n * vol


def valpha_setup(div: DivisorialData, alpha) -> ConeSetup:
    """ConeSetup whose target valuation is v_alpha (normalized so c1 = 1)."""
    alpha = q(alpha)
    if alpha < 0:
        raise ValidationError("alpha must be non-negative")
    if alpha == 0:
        curve = PiecewisePolynomial.step(Fraction(1), div.Lvol)
    else:
        curve = div.vol_curve_F.substitute_affine(alpha, 1)
    return ConeSetup(
        n=div.n,
        r=div.r,
        Lvol=div.Lvol,
        c1=Fraction(1),
        A1=div.r + alpha * div.A_F,
        vol_curve=curve,
        label=f"{div.label}:alpha={alpha}" if div.label else f"alpha={alpha}",
    )


def wbeta_vol(div: DivisorialData, beta) -> Fraction:
    """Volume of the wedge family member w_beta.

    vol(w_beta) = Lvol/(1+beta a1)^n
                  - n beta * integral vol_F(s) ds / ((1+beta a1) + beta s)^{n+1}.
    """
    beta = q(beta)
    head = 1 + beta * div.a1
    if beta < 0 or head <= 0:
        raise ValidationError(
            f"beta must be in [0, {-1/div.a1}) for this divisor"
        )
    n = div.n
    return div.Lvol / head**n - n * beta * pp_integrate_kernel(
        div.vol_curve_F, head, beta, n, lo=0, hi=INF
    )


def wbeta_nvol(div: DivisorialData, beta) -> Fraction:
    """Normalized volume of w_beta; its log discrepancy is identically r."""
    return div.r**div.n * wbeta_vol(div, beta)


def dvol_dbeta0(div: DivisorialData) -> Fraction:
    """d/dbeta vol(w_beta) at beta = 0: -n a1 Lvol - n * integral vol_F."""
    total = pp_integrate(div.vol_curve_F, 0, INF)
    return -div.n * div.a1 * div.Lvol - div.n * total


def dnvol_dbeta0(div: DivisorialData) -> Fraction:
    """d/dbeta nvol(w_beta) at beta = 0 (= r^n times the volume derivative)."""
    return div.r**div.n * dvol_dbeta0(div)


def dnvol_dalpha0(div: DivisorialData) -> Fraction:
    """d/dalpha nvol(v_alpha) at alpha = 0, from the literal expansion."""
    total = pp_integrate(div.vol_curve_F, 0, INF)
    n = div.n
    return (
        n * div.r ** (n - 1) * div.A_F * div.Lvol - n * div.r**n * total
    )


def wbeta_logdisc(r, beta, q_mult, A_F) -> Fraction:
    """Log discrepancy (1 + beta a1) r + beta q A_F of w_beta; identically r.

    Evaluated literally (a1 = -q A_F / r substituted, nothing cancelled in
    advance) so the constancy is an arithmetic fact, not a rewrite.
    """
    r, beta, q_mult, A_F = q(r), q(beta), q(q_mult), q(A_F)
    if r <= 0 or q_mult <= 0 or A_F <= 0:
        raise ValidationError("r, q and A_F must be positive")
    a1 = -q_mult * A_F / r
    if beta < 0 or 1 + beta * a1 <= 0:
        raise ValidationError("beta must satisfy 0 <= beta and 1 + beta*a1 > 0")
    return (1 + beta * a1) * r + beta * q_mult * A_F


def shifted_divisorial_dh(div: DivisorialData) -> Measure1D:
    """The measure -d vol of the a1-shifted divisorial curve (mass Lvol).

    Shifting by a1 recenters the curve at the wedge normalization, which
    is the measure whose first moment carries the CM weight.
    """
    shifted = div.vol_curve_F.substitute_affine(Fraction(1), div.a1)
    return neg_differential(shifted)


def cm_from_dh(dh: Measure1D, n: int, r, KVn1) -> Fraction:
    """CM weight -r^n * (first moment of dh) / KVn1.

    ``dh`` must be an un-normalized limit measure of total mass
    KVn1 / r^{n-1} (= Lvol).
    """
    r, KVn1 = q(r), q(KVn1)
    if n < 1 or r <= 0 or KVn1 <= 0:
        raise ValidationError("need n >= 1, r > 0, KVn1 > 0")
    expected_mass = KVn1 / r ** (n - 1)
    if dh.mass() != expected_mass:
        raise ValidationError(
            f"measure mass {dh.mass()} differs from Lvol = {expected_mass}"
        )
    return -(r**n) * measure_moment(dh, 1) / KVn1


def d_infinity(
    curve: PiecewisePolynomial, n: int, r, KVn1, e_plus: int, e_minus: int
) -> Fraction:
    """Boundary exponent 1 - r(e+ - e-) + (r^n/KVn1) * integral over [e-, e+].

    The window must contain the support of -d vol: e+ >= lambda_max and
    e- <= lambda_min.
    """
    r, KVn1 = q(r), q(KVn1)
    if not isinstance(e_plus, int) or not isinstance(e_minus, int):
        raise ValidationError("e_plus and e_minus must be integers")
    if n < 1 or r <= 0 or KVn1 <= 0:
        raise ValidationError("need n >= 1, r > 0, KVn1 > 0")
    lo, hi = support_bounds(curve)
    if e_plus < hi:
        raise ValidationError(f"e_plus = {e_plus} is below lambda_max = {hi}")
    if e_minus > lo:
        raise ValidationError(f"e_minus = {e_minus} is above lambda_min = {lo}")
    integral = pp_integrate(curve, e_minus, e_plus)
    return 1 - r * (e_plus - e_minus) + r**n * integral / KVn1
