"""Built-in cone models with exact volume curves and section tabulations.

Each preset bundles a divisorial datum (volume curve, log discrepancy,
multiplicity) with the matching graded-section dimension counts, so the
closed-form and counting routes to every invariant can be compared.  The
string forms accepted by :func:`parse_preset_spec` are the configuration
surface of the command-line tool.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .cone import (
    ConeSetup,
    DivisorialData,
    dnvol_dbeta0,
    dvol_dbeta0,
    theta,
    valpha_setup,
)
from .errors import ValidationError
from .exact import PiecewisePolynomial, Polynomial, q
from .filtration import TabulatedFiltration
from .okounkov import MonomialFlag, SKPFlag
from .skp import skp_degree_values, skp_filtration_dim, skp_presets

MAX_TAB_LEVEL = 60


@dataclass(frozen=True)
class ConePreset:
    """A named cone model: closed forms plus (optional) section counts."""

    name: str
    n: int
    r: Fraction
    KVn1: Fraction
    setup: ConeSetup
    div: DivisorialData | None
    curve: PiecewisePolynomial
    window: tuple[int, int]
    tab_F: TabulatedFiltration | None
    tab_v1: TabulatedFiltration | None


def _binom(a: int, b: int) -> int:
    return math.comb(a, b) if 0 <= b <= a else 0


def trivial_step(n: int = 2, c: int = 1) -> ConePreset:
    """The trivially filtered cone: volume curve a single step at c."""
    if n < 2 or c < 1:
        raise ValidationError("need n >= 2 and c >= 1")
    curve = PiecewisePolynomial.step(c, Fraction(1))
    setup = ConeSetup(n, Fraction(1), Fraction(1), Fraction(c), Fraction(c),
                      curve, label=f"trivial:{n},{c}")

    def dims(y, k):
        return _binom(k + n - 1, n - 1) if q(y) <= c * k else 0

    tab = TabulatedFiltration(
        dims, lambda k: _binom(k + n - 1, n - 1), lambda k: [c * k],
        n, Fraction(1), MAX_TAB_LEVEL,
    )
    return ConePreset(f"trivial:{n},{c}", n, Fraction(1), Fraction(1),
                      setup, None, curve, (c, c), tab, tab)


def pn_hyperplane(n: int) -> ConePreset:
    """Cone over projective space, filtered by a hyperplane section."""
    if n < 2:
        raise ValidationError("need n >= 2")
    Lvol = Fraction(n) ** (n - 1)
    curve = PiecewisePolynomial(
        [0, n], [Polynomial([Fraction(n), Fraction(-1)]) ** (n - 1)], Lvol, 0
    )
    name = f"pn-hyperplane:{n}"
    div = DivisorialData(n, Fraction(1), Lvol, Fraction(1), Fraction(1),
                         curve, label=name)

    def dims_F(y, k):
        top = n * k - math.ceil(q(y))
        return _binom(top + n - 1, n - 1) if top >= 0 else 0

    def dims_v1(y, k):
        return dims_F(q(y) - k, k)

    def level_dim(k):
        return _binom(n * k + n - 1, n - 1)

    tab_F = TabulatedFiltration(
        dims_F, level_dim, lambda k: list(range(n * k + 1)),
        n, Lvol, MAX_TAB_LEVEL,
    )
    tab_v1 = TabulatedFiltration(
        dims_v1, level_dim, lambda k: [k + j for j in range(n * k + 1)],
        n, Lvol, MAX_TAB_LEVEL,
    )
    return ConePreset(name, n, Fraction(1), div.KVn1, valpha_setup(div, 1),
                      div, curve, (0, n), tab_F, tab_v1)


def normal_cone(n: int, p: int, lam) -> ConePreset:
    """Deformation to the normal cone of a degree-lambda hypersurface.

    Section counts are tabulated when the base is projective space
    (lambda*n integer) or a product of lines (2*lambda integer); other
    lambda keep the closed-form curve with unit leading volume.  The
    construction cross-checks its own derivative and Theta closed forms.
    """
    lam = q(lam)
    if n < 2 or p < 1 or lam <= 0:
        raise ValidationError("need n >= 2, p >= 1, lambda > 0")
    if 1 / lam > n:
        warnings.warn(
            f"normal-cone with 1/lambda = {1 / lam} > n = {n}: the "
            f"beta-derivative of the normalized volume is negative",
            stacklevel=2,
        )
    tab_F = tab_v1 = None
    cut = math.ceil(p / lam)

    def candidates_F(k):
        return list(range(math.floor(k * p / lam) + 1))

    def candidates_v1(k):
        return [k + j for j in range(math.floor(k * p / lam) + 1)]

    if (lam * n).denominator == 1:
        Lvol = Fraction(p * n) ** (n - 1)
        ln = int(lam * n)

        def dims_F(y, k):
            top = p * n * k - ln * math.ceil(q(y))
            return _binom(top + n - 1, n - 1) if top >= 0 else 0

        def level_dim(k):
            return _binom(p * n * k + n - 1, n - 1)

    elif (2 * lam).denominator == 1:
        Lvol = math.factorial(n - 1) * Fraction(2 * p) ** (n - 1)
        l2 = int(2 * lam)

        def dims_F(y, k):
            return max(0, 2 * p * k - l2 * math.ceil(q(y)) + 1) ** (n - 1)

        def level_dim(k):
            return (2 * p * k + 1) ** (n - 1)

    else:
        Lvol = Fraction(1)
        dims_F = level_dim = None

    poly = (Polynomial([Fraction(1), -lam / p]) ** (n - 1)).scale(Lvol)
    curve = PiecewisePolynomial([0, p / lam], [poly], Lvol, 0)
    name = f"normal-cone:{n},{p},{lam}"
    div = DivisorialData(n, Fraction(1, p), Lvol, Fraction(1), Fraction(1),
                         curve, label=name)
    if dims_F is not None:
        def dims_v1(y, k):
            return dims_F(q(y) - k, k)

        tab_F = TabulatedFiltration(dims_F, level_dim, candidates_F,
                                    n, Lvol, MAX_TAB_LEVEL)
        tab_v1 = TabulatedFiltration(dims_v1, level_dim, candidates_v1,
                                     n, Lvol, MAX_TAB_LEVEL)

    want = (n - 1 / lam) * Lvol
    if dvol_dbeta0(div) != p * want:
        raise ValidationError("volume derivative disagrees with closed form")
    if dnvol_dbeta0(div) != Fraction(p) ** (1 - n) * want:
        raise ValidationError("normalized derivative disagrees with closed form")
    if theta(div) != (n - 1 / lam) / n:
        raise ValidationError("Theta disagrees with closed form")
    return ConePreset(name, n, div.r, div.KVn1, valpha_setup(div, 1),
                      div, curve, (0, cut), tab_F, tab_v1)


def skp_cone_tab(data, max_level: int = MAX_TAB_LEVEL) -> TabulatedFiltration:
    """Section counts of the key-polynomial filtration on the plane."""
    return TabulatedFiltration(
        lambda m, k: skp_filtration_dim(data, m, k),
        lambda k: k + 1,
        lambda k: skp_degree_values(data, k),
        2, Fraction(1), max_level,
    )


def source_tab(fv, max_level: int = MAX_TAB_LEVEL) -> TabulatedFiltration:
    """Section counts of a flag-valuation filtration on the plane."""
    if isinstance(fv, SKPFlag):
        return skp_cone_tab(fv.data, max_level)
    if not isinstance(fv, MonomialFlag):
        raise ValidationError(f"not a flag valuation: {fv!r}")
    g1, g2 = fv.gamma

    def dims(m, k):
        mm = q(m)
        return sum(1 for b in range(k + 1) if g1 * (k - b) + g2 * b >= mm)

    def candidates(k):
        return sorted({g1 * (k - b) + g2 * b for b in range(k + 1)})

    return TabulatedFiltration(dims, lambda k: k + 1, candidates,
                               2, Fraction(1), max_level)


def _parse_params(text: str, allowed: dict[str, bool]) -> dict[str, Fraction]:
    """Parse "k1=v1,k2=v2" with rational values; unknown keys rejected."""
    out: dict[str, Fraction] = {}
    if not text:
        return out
    for part in text.split(","):
        key, sep, raw = part.partition("=")
        key = key.strip()
        if not sep or key not in allowed:
            raise ValidationError(f"unknown or malformed parameter {part!r}")
        if key in out:
            raise ValidationError(f"duplicate parameter {key!r}")
        try:
            out[key] = q(raw.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad value for {key!r}: {raw!r}") from exc
    return out


def _as_int(params: dict[str, Fraction], key: str, default: int | None = None) -> int:
    if key not in params:
        if default is None:
            raise ValidationError(f"missing required parameter {key!r}")
        return default
    value = params[key]
    if value.denominator != 1:
        raise ValidationError(f"parameter {key!r} must be an integer")
    return int(value)


def parse_preset_spec(text: str) -> ConePreset:
    """Build a preset from its string form.

    Accepted: ``trivial[:n=..,c=..]``, ``pn-hyperplane:n=..``,
    ``normal-cone:n=..,p=..,lambda=..``.
    """
    name, _, rest = text.partition(":")
    name = name.strip()
    if name == "trivial":
        params = _parse_params(rest, {"n": True, "c": True})
        return trivial_step(_as_int(params, "n", 2), _as_int(params, "c", 1))
    if name == "pn-hyperplane":
        params = _parse_params(rest, {"n": True})
        return pn_hyperplane(_as_int(params, "n"))
    if name == "normal-cone":
        params = _parse_params(rest, {"n": True, "p": True, "lambda": True})
        if "lambda" not in params:
            raise ValidationError("missing required parameter 'lambda'")
        return normal_cone(_as_int(params, "n"), _as_int(params, "p"),
                           params["lambda"])
    raise ValidationError(
        f"unknown preset {name!r}; choose trivial, pn-hyperplane or normal-cone"
    )


def parse_source_spec(text: str):
    """Build a flag valuation from ``monomial:g1,g2`` or ``skp:<preset>:<depth>``."""
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    if kind == "monomial":
        parts = [p.strip() for p in rest.split(",")]
        if len(parts) != 2:
            raise ValidationError("monomial source needs exactly two weights")
        try:
            return MonomialFlag((q(parts[0]), q(parts[1])))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad monomial weights {rest!r}") from exc
    if kind == "skp":
        preset, _, depth = rest.partition(":")
        registry = skp_presets()
        if preset not in registry:
            raise ValidationError(
                f"unknown key-polynomial preset {preset!r}; "
                f"choose from {sorted(registry)}"
            )
        try:
            k = int(depth)
        except ValueError as exc:
            raise ValidationError(f"bad depth {depth!r}") from exc
        return SKPFlag(registry[preset](k))
    raise ValidationError(f"unknown source kind {kind!r}; choose monomial or skp")
