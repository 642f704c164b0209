"""Command-line front end: exact tables with faithful decimal renderings.

Every value is computed exactly; decimals are display-only roundings at
the configured precision.  Identical invocations produce identical bytes
(the verify subcommand keeps its timings on stderr for that reason).
Exit codes: 0 success, 1 invalid input, 2 internal-consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

from .cone import (
    cm_from_dh,
    d_infinity,
    dnvol_dalpha0,
    dnvol_dbeta0,
    dvol_dbeta0,
    phi,
    phi_s_at_0,
    phi_second,
    shifted_divisorial_dh,
    theta,
    theta_rescale_check,
    valpha,
    vol_v1,
    wbeta_logdisc,
    wbeta_nvol,
    wbeta_vol,
)
from .errors import ConsistencyError, ValidationError
from .exact import decimal_str, format_q, measure_moment, q
from .filtration import dh_empirical, dh_limit, emin_emax, lemlim_check, vol_curve
from .monomial import (
    MonomialValuation,
    mono_count_oracle,
    mono_logdisc,
    mono_min_scan,
    mono_nvol,
    mono_vol,
)
from .okounkov import (
    covolume,
    emit_figure,
    form3_check,
    gamma_region,
    h_function,
    primary_complement,
    slice_check,
)
from .presets import parse_preset_spec, parse_source_spec, source_tab
from .skp import (
    initial_monomial,
    parse_xy_poly,
    qmon_value,
    skp_codim,
    skp_expand,
    skp_filtration_dim,
    skp_logdisc,
    skp_presets,
    skp_value,
    skp_vol_approx,
)
from .verify import run_suite


def _parse_q(text: str) -> Fraction:
    try:
        return q(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational: {text!r}") from exc


def _parse_list(text: str) -> list[Fraction]:
    return [_parse_q(part) for part in text.split(",")]


def _parse_range(text: str) -> list[Fraction]:
    """"a", "a,b,c", "a:b" (unit step) or "a:b:step", endpoints inclusive."""
    if ":" not in text:
        return _parse_list(text)
    parts = text.split(":")
    if len(parts) == 2:
        start, stop, step = _parse_q(parts[0]), _parse_q(parts[1]), Fraction(1)
    elif len(parts) == 3:
        start, stop, step = (_parse_q(parts[0]), _parse_q(parts[1]),
                             _parse_q(parts[2]))
    else:
        raise ValidationError(f"bad range {text!r}; use start:stop[:step]")
    if step <= 0 or stop < start:
        raise ValidationError(f"bad range {text!r}; need step > 0, stop >= start")
    out, x = [], start
    while x <= stop:
        out.append(x)
        x += step
    return out


def _parse_int_list(text: str) -> list[int]:
    out = []
    for value in _parse_range(text):
        if value.denominator != 1:
            raise ValidationError(f"expected integers, got {value}")
        out.append(int(value))
    return out


class Table:
    """A deterministic table: string cells only, one emitter per format."""

    def __init__(self, columns: list[str]):
        self.columns = columns
        self.rows: list[list[str]] = []

    def add(self, *cells) -> None:
        if len(cells) != len(self.columns):
            raise ValueError("row width mismatch")
        self.rows.append([str(c) for c in cells])

    def emit(self, fmt: str, out) -> None:
        if fmt == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(self.columns)
            writer.writerows(self.rows)
        else:
            json.dump({"columns": self.columns, "rows": self.rows}, out, indent=2)
            out.write("\n")


def _report(precision: int) -> tuple[Table, callable]:
    table = Table(["label", "exact", "decimal", "note"])

    def add(label: str, value, note: str = "") -> None:
        value = q(value)
        table.add(label, format_q(value), decimal_str(value, precision, trim=True),
                  note)

    return table, add


def _get_skp_data(args):
    registry = skp_presets()
    if args.preset not in registry:
        raise ValidationError(
            f"unknown key-polynomial preset {args.preset!r}; "
            f"choose from {sorted(registry)}"
        )
    return registry[args.preset](args.depth)


# ---------------------------------------------------------------- monomial

def cmd_monomial(args, out) -> None:
    if (args.weights is None) == (args.scan is None):
        raise ValidationError("give exactly one of --weights or --scan")
    table, add = _report(args.precision)
    if args.weights is not None:
        val = MonomialValuation(tuple(_parse_list(args.weights)))
        n = val.dim
        add("vol", mono_vol(val), "1 / product(weights)")
        add("log-discrepancy", mono_logdisc(val), "sum(weights)")
        add("nvol", mono_nvol(val), "sum(weights)^n / product(weights)")
        if args.count_at is not None:
            m = _parse_q(args.count_at)
            count = mono_count_oracle(val, m)
            add("count", count, f"monomials with value < {m}")
            add("count-ratio", Fraction(math.factorial(n) * count) / m ** n,
                "n! count / m^n, tends to vol")
    else:
        best, arg = mono_min_scan(args.scan, args.resolution)
        add("min-nvol", best, f"grid scan, step 1/{args.resolution}")
        table.add("argmin", ",".join(format_q(a) for a in arg), "",
                  "weights normalized to sum n")
    table.emit(args.format, out)


# --------------------------------------------------------------------- skp

def cmd_skp_table(args, out) -> None:
    data = _get_skp_data(args)
    table = Table(["k", "c_k", "beta_k", "m", "count", "ratio"])
    for k in range(1, data.depth + 1):
        m = data.c[k - 1] * data.beta[k - 1]
        count = skp_codim(data, m)
        ratio = Fraction(2 * count) / (m * m)
        table.add(k, data.c[k - 1], format_q(data.beta[k - 1]), format_q(m),
                  count, decimal_str(ratio, args.precision, trim=True))
    table.emit(args.format, out)


def cmd_skp_dims(args, out) -> None:
    data = _get_skp_data(args)
    m = _parse_q(args.m)
    table = Table(["k", "dim", "full"])
    for k in _parse_int_list(args.k):
        dim = skp_filtration_dim(data, m, k)
        table.add(k, dim, "yes" if dim == k + 1 else "no")
    table.emit(args.format, out)


def cmd_skp_codim(args, out) -> None:
    data = _get_skp_data(args)
    m = _parse_q(args.m)
    count = skp_codim(data, m)
    table, add = _report(args.precision)
    add("count", count, "lattice points below the value cut")
    add("ratio", Fraction(2 * count) / (m * m), "2 count / m^2, tends to vol")
    table.emit(args.format, out)


def cmd_skp_vol(args, out) -> None:
    data = _get_skp_data(args)
    table = Table(["k", "vol-approx", "vol-decimal", "logdisc-sum", "logdisc-decimal"])
    for k in range(1, data.depth + 1):
        vk, ak = skp_vol_approx(data, k), skp_logdisc(data, k)
        table.add(k, format_q(vk), decimal_str(vk, args.precision, trim=True),
                  format_q(ak), decimal_str(ak, args.precision, trim=True))
    table.emit(args.format, out)


def cmd_skp_value(args, out) -> None:
    data = _get_skp_data(args)
    poly = parse_xy_poly(args.poly)
    value = skp_value(data, poly)
    terms = skp_expand(data, poly)
    lead = min(terms, key=lambda t: (qmon_value(data, t[1]), t[1].a0, t[1].a))
    v0, v1 = initial_monomial(data, lead[1])
    table, add = _report(args.precision)
    add("value", value, "min value over the key-monomial expansion")
    table.add("initial-point", f"({v0}, {v1})", "", "lattice point of the minimum")
    table.add("terms", str(len(terms)), "", "key-monomial expansion size")
    table.emit(args.format, out)


# -------------------------------------------------------------- filtration

def _tabulated(preset):
    if preset.tab_F is None:
        raise ValidationError(
            f"preset {preset.name!r} has no section tabulation"
        )
    return preset.tab_F


def cmd_filtration_curve(args, out) -> None:
    preset = parse_preset_spec(args.preset)
    grid = _parse_range(args.grid)
    table = Table(["t", "exact", "decimal", "sampled", "half-sampled"])
    sampled = half = None
    if preset.tab_F is not None:
        rep = vol_curve(preset.tab_F, grid=grid)
        sampled, half = rep.values, rep.half_values
    for i, t in enumerate(grid):
        exact = preset.curve(t)
        table.add(format_q(t), format_q(exact),
                  decimal_str(exact, args.precision, trim=True),
                  "" if sampled is None else decimal_str(sampled[i], args.precision, trim=True),
                  "" if half is None else decimal_str(half[i], args.precision, trim=True))
    table.emit(args.format, out)


def cmd_filtration_dh(args, out) -> None:
    preset = parse_preset_spec(args.preset)
    tab = _tabulated(preset)
    emp = dh_empirical(tab, args.level)
    limit = dh_limit(preset.curve, preset.div.Lvol if preset.div else preset.setup.Lvol)
    mean = measure_moment(emp, 1)
    lmean = measure_moment(limit, 1)
    table, add = _report(args.precision)
    add("level", args.level, "")
    add("atoms", len(emp.atoms), "distinct jump values at this level")
    add("mean", mean, "first moment of the empirical measure")
    add("limit-mean", lmean, "first moment of -d vol / vol(0)")
    add("gap", abs(mean - lmean), "shrinks as the level grows")
    table.emit(args.format, out)


def cmd_filtration_extremes(args, out) -> None:
    if (args.preset is None) == (args.source is None):
        raise ValidationError("give exactly one of --preset or --source")
    if args.source is not None:
        tab = source_tab(parse_source_spec(args.source))
    else:
        tab = _tabulated(parse_preset_spec(args.preset))
    rep = emin_emax(tab, _parse_int_list(args.levels))
    table = Table(["level", "e_min", "e_max"])
    for lvl, lo, hi in zip(rep.levels, rep.emin_values, rep.emax_values):
        table.add(lvl, format_q(lo), format_q(hi))
    table.add("sup", "", format_q(rep.emax_sup))
    table.emit(args.format, out)


def cmd_filtration_lemlim(args, out) -> None:
    preset = parse_preset_spec(args.preset)
    if preset.tab_v1 is None:
        raise ValidationError(f"preset {preset.name!r} has no section tabulation")
    alpha, beta, c1 = _parse_q(args.alpha), _parse_q(args.beta), _parse_q(args.c1)
    table = Table(["p", "lhs", "rhs", "gap"])
    for p in _parse_int_list(args.p):
        rep = lemlim_check(preset.setup.vol_curve, preset.n, preset.tab_v1.dims,
                           c1, alpha, beta, p)
        table.add(p, decimal_str(rep.lhs, args.precision, trim=True),
                  format_q(rep.rhs),
                  decimal_str(rep.gap, args.precision, trim=True))
    table.emit(args.format, out)


# -------------------------------------------------------------------- cone

def cmd_cone_volume(args, out) -> None:
    preset = parse_preset_spec(args.preset)
    st = preset.setup
    v1 = vol_v1(st)
    table, add = _report(args.precision)
    add("r", st.r, "log discrepancy of the apex valuation per degree")
    add("Lvol", st.Lvol, "leading volume of the section ring")
    add("A1", st.A1, "log discrepancy of the filtration valuation")
    add("vol(v1)", v1, "two integral routes, compared exactly")
    add("nvol(v1)", st.A1 ** st.n * v1, "A1^n vol(v1)")
    add("lambda-star", st.lambda_star, "r / A1")
    table.emit(args.format, out)


def cmd_cone_phi(args, out) -> None:
    preset = parse_preset_spec(args.preset)
    st = preset.setup
    if (args.lam is None) == (not args.lambda_star):
        raise ValidationError("give exactly one of --lam or --lambda-star")
    lam = st.lambda_star if args.lambda_star else _parse_q(args.lam)
    table = Table(["s", "phi", "decimal", "phi-second"])
    for s in _parse_range(args.s):
        value = phi(st, lam, s)
        table.add(format_q(s), format_q(value),
                  decimal_str(value, args.precision, trim=True),
                  decimal_str(phi_second(st, lam, s), args.precision, trim=True))
    table.emit(args.format, out)


def _require_div(preset):
    if preset.div is None:
        raise ValidationError(
            f"preset {preset.name!r} carries no divisorial datum"
        )
    return preset.div


def cmd_cone_theta(args, out) -> None:
    div = _require_div(parse_preset_spec(args.preset))
    table, add = _report(args.precision)
    add("theta", theta(div), "A_F minus the normalized volume integral")
    for sigma in _parse_int_list(args.sigma):
        ok = theta_rescale_check(div, sigma)
        table.add(f"rescale sigma={sigma}", "pass" if ok else "fail",
                  "", "Theta invariant under polarization rescaling")
    table.emit(args.format, out)


def cmd_cone_derivative(args, out) -> None:
    preset = parse_preset_spec(args.preset)
    div = _require_div(preset)
    table, add = _report(args.precision)
    add("dvol-dbeta", dvol_dbeta0(div), "slope of vol(w_beta) at beta = 0")
    add("dnvol-dbeta", dnvol_dbeta0(div), "slope of nvol(w_beta) at beta = 0")
    add("dnvol-dalpha", dnvol_dalpha0(div), "slope of nvol(v_alpha) at alpha = 0")
    dh = shifted_divisorial_dh(div)
    add("moment-functional", cm_from_dh(dh, div.n, div.r, div.KVn1),
        "negative first moment of the shifted measure, equals theta")
    table.emit(args.format, out)


def cmd_cone_dinf(args, out) -> None:
    preset = parse_preset_spec(args.preset)
    if args.window is not None:
        lohi = _parse_int_list(args.window.replace(":", ","))
        if len(lohi) != 2:
            raise ValidationError("window must be e_minus:e_plus")
        em, ep = lohi
    else:
        em, ep = preset.window
    value = d_infinity(preset.curve, preset.n, preset.r, preset.KVn1, ep, em)
    table, add = _report(args.precision)
    add("d-infinity", value, f"window [{em}, {ep}]")
    table.emit(args.format, out)


def cmd_cone_valpha(args, out) -> None:
    div = _require_div(parse_preset_spec(args.preset))
    alpha = _parse_q(args.alpha)
    vol, nv = valpha(div, alpha)
    table, add = _report(args.precision)
    add("vol", vol, "kernel integral against the divisorial curve")
    add("log-discrepancy", div.r + alpha * div.A_F, "r + alpha A_F")
    add("nvol", nv, "(r + alpha A_F)^n vol")
    table.emit(args.format, out)


def cmd_cone_wbeta(args, out) -> None:
    div = _require_div(parse_preset_spec(args.preset))
    beta = _parse_q(args.beta)
    table, add = _report(args.precision)
    add("vol", wbeta_vol(div, beta), "kernel integral against the divisorial curve")
    add("log-discrepancy", wbeta_logdisc(div.r, beta, div.q, div.A_F),
        "constant in beta")
    add("nvol", wbeta_nvol(div, beta), "r^n vol(w_beta)")
    table.emit(args.format, out)


# ---------------------------------------------------------------- okounkov

def cmd_okounkov_region(args, out) -> None:
    fv = parse_source_spec(args.source)
    region = gamma_region(fv)
    cov = covolume(region)
    table, add = _report(args.precision)
    for i, (x, y) in enumerate(region.removed):
        table.add(f"vertex-{i}", f"({format_q(x)}, {format_q(y)})", "",
                  "removed triangle")
    add("covolume", cov, "shoelace area of the removed triangle")
    add("vol", 2 * cov, "2! covolume")
    add("H(0)", h_function(fv, 0), "boundary value on the first edge")
    add("H(1)", h_function(fv, 1), "boundary value on the diagonal")
    add("form3", form3_check(fv), "integral of H^2 over [0, 1], equals vol")
    if args.svg:
        emit_figure(args.svg, polygons=[region.removed])
    table.emit(args.format, out)


def cmd_okounkov_complement(args, out) -> None:
    fv = parse_source_spec(args.source)
    m = _parse_q(args.m)
    points, count = primary_complement(fv, m)
    if args.svg:
        region = gamma_region(fv)
        scaled = [(x * m, y * m) for x, y in region.removed]
        emit_figure(args.svg, points=points, polygons=[scaled])
    if args.points:
        table = Table(["v0", "v1"])
        for v0, v1 in points:
            table.add(v0, v1)
    else:
        table, add = _report(args.precision)
        add("count", count, "matches the codimension of the value-m piece")
        add("ratio", Fraction(2 * count) / (m * m), "2 count / m^2, tends to vol")
    table.emit(args.format, out)


def cmd_okounkov_slice(args, out) -> None:
    fv = parse_source_spec(args.source)
    rep = slice_check(fv, _parse_q(args.t), _parse_int_list(args.levels))
    table = Table(["level", "lo", "hi", "gap", "included"])
    if rep.exact is None:
        table.add("exact", "", "", "", "")
    else:
        table.add("exact", format_q(rep.exact[0]), format_q(rep.exact[1]), "", "")
    for lvl, seg, gap, inc in zip(rep.levels, rep.finite, rep.gaps, rep.included):
        if seg is None:
            table.add(lvl, "", "", "", "empty")
        else:
            table.add(lvl, format_q(seg[0]), format_q(seg[1]),
                      "" if gap is None else format_q(gap),
                      "yes" if inc else "no")
    table.emit(args.format, out)


def cmd_okounkov_h(args, out) -> None:
    fv = parse_source_spec(args.source)
    table = Table(["x", "H", "decimal"])
    for x in _parse_range(args.x):
        value = h_function(fv, x)
        table.add(format_q(x), format_q(value),
                  decimal_str(value, args.precision, trim=True))
    table.emit(args.format, out)


# ------------------------------------------------------------------ verify

def cmd_verify(args, out) -> int:
    report = run_suite(args.suite)
    for r in report.results:
        flag = "PASS" if r.passed else "FAIL"
        print(f"[{flag}] criterion {r.cid}: {r.name} ({r.seconds:.2f}s)",
              file=sys.stderr)
        if not r.passed:
            for c in r.checks:
                if not c.passed:
                    print(f"       failed: {c.label} {c.note}", file=sys.stderr)
    print(f"suite {report.suite}: {'pass' if report.passed else 'FAIL'} "
          f"({report.seconds:.2f}s)", file=sys.stderr)
    json.dump(report.to_json(), out, indent=2)
    out.write("\n")
    return 0 if report.passed else 2


# ---------------------------------------------------------------- plumbing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(f"{message}\n{self.format_usage().rstrip()}")


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="output format (default csv)")
    common.add_argument("--precision", type=int, default=6,
                        help="decimal places for renderings (default 6)")

    parser = _Parser(prog="nvol", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    mono = sub.add_parser("monomial", parents=[common],
                          help="normalized volumes of monomial valuations")
    mono.add_argument("--weights", help="comma list of positive rationals")
    mono.add_argument("--count-at", help="also count monomials below this value")
    mono.add_argument("--scan", type=int, help="grid-scan dimension")
    mono.add_argument("--resolution", type=int, default=6,
                      help="grid steps per unit weight (default 6)")
    mono.set_defaults(fn=cmd_monomial)

    skp = sub.add_parser("skp", help="key-polynomial valuations")
    skp_sub = skp.add_subparsers(dest="subcommand", required=True)
    for name, fn, extra in (
        ("table", cmd_skp_table, ()),
        ("dims", cmd_skp_dims, ("m", "k")),
        ("codim", cmd_skp_codim, ("m",)),
        ("vol", cmd_skp_vol, ()),
        ("value", cmd_skp_value, ("poly",)),
    ):
        p = skp_sub.add_parser(name, parents=[common])
        p.add_argument("--preset", default="zariski-primes")
        p.add_argument("--depth", type=int, required=True)
        if "m" in extra:
            p.add_argument("--m", required=True, help="valuation level")
        if "k" in extra:
            p.add_argument("--k", default="0:12", help="degree range")
        if "poly" in extra:
            p.add_argument("--poly", required=True,
                           help='polynomial in x, y, e.g. "4*x^2+8*y^3"')
        p.set_defaults(fn=fn)

    filt = sub.add_parser("filtration", help="graded filtrations and measures")
    filt_sub = filt.add_subparsers(dest="subcommand", required=True)
    p = filt_sub.add_parser("curve", parents=[common])
    p.add_argument("--preset", required=True)
    p.add_argument("--grid", default="0:4:1/2")
    p.set_defaults(fn=cmd_filtration_curve)
    p = filt_sub.add_parser("dh", parents=[common])
    p.add_argument("--preset", required=True)
    p.add_argument("--level", type=int, required=True)
    p.set_defaults(fn=cmd_filtration_dh)
    p = filt_sub.add_parser("extremes", parents=[common])
    p.add_argument("--preset")
    p.add_argument("--source", help="flag-valuation source instead of a preset")
    p.add_argument("--levels", required=True)
    p.set_defaults(fn=cmd_filtration_extremes)
    p = filt_sub.add_parser("lemlim", parents=[common])
    p.add_argument("--preset", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--p", required=True, help="comma list of denominators")
    p.add_argument("--c1", default="1")
    p.set_defaults(fn=cmd_filtration_lemlim)

    cone = sub.add_parser("cone", help="cone valuations and invariants")
    cone_sub = cone.add_subparsers(dest="subcommand", required=True)
    p = cone_sub.add_parser("volume", parents=[common])
    p.add_argument("--preset", required=True)
    p.set_defaults(fn=cmd_cone_volume)
    p = cone_sub.add_parser("phi", parents=[common])
    p.add_argument("--preset", required=True)
    p.add_argument("--lam", help="interpolation scale")
    p.add_argument("--lambda-star", action="store_true",
                   help="use the preset's critical scale r/A1")
    p.add_argument("--s", default="0:1:1/20")
    p.set_defaults(fn=cmd_cone_phi)
    p = cone_sub.add_parser("theta", parents=[common])
    p.add_argument("--preset", required=True)
    p.add_argument("--sigma", default="1,2,3,5")
    p.set_defaults(fn=cmd_cone_theta)
    p = cone_sub.add_parser("derivative", parents=[common])
    p.add_argument("--preset", required=True)
    p.set_defaults(fn=cmd_cone_derivative)
    p = cone_sub.add_parser("dinf", parents=[common])
    p.add_argument("--preset", required=True)
    p.add_argument("--window", help="integer window e_minus:e_plus")
    p.set_defaults(fn=cmd_cone_dinf)
    p = cone_sub.add_parser("valpha", parents=[common])
    p.add_argument("--preset", required=True)
    p.add_argument("--alpha", required=True)
    p.set_defaults(fn=cmd_cone_valpha)
    p = cone_sub.add_parser("wbeta", parents=[common])
    p.add_argument("--preset", required=True)
    p.add_argument("--beta", required=True)
    p.set_defaults(fn=cmd_cone_wbeta)

    oko = sub.add_parser("okounkov", help="lattice semigroups and coconvex bodies")
    oko_sub = oko.add_subparsers(dest="subcommand", required=True)
    p = oko_sub.add_parser("region", parents=[common])
    p.add_argument("--source", required=True)
    p.add_argument("--svg")
    p.set_defaults(fn=cmd_okounkov_region)
    p = oko_sub.add_parser("complement", parents=[common])
    p.add_argument("--source", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--points", action="store_true",
                   help="list the lattice points instead of the summary")
    p.add_argument("--svg")
    p.set_defaults(fn=cmd_okounkov_complement)
    p = oko_sub.add_parser("slice", parents=[common])
    p.add_argument("--source", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--levels", default="10,20,30")
    p.set_defaults(fn=cmd_okounkov_slice)
    p = oko_sub.add_parser("h", parents=[common])
    p.add_argument("--source", required=True)
    p.add_argument("--x", default="0:1:1/8")
    p.set_defaults(fn=cmd_okounkov_h)

    ver = sub.add_parser("verify", parents=[common],
                         help="run the self-check battery")
    ver.add_argument("--suite", default="all",
                     choices=("paper-table", "identities", "convergence", "all"))
    ver.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.fn(args, sys.stdout)
        return int(result) if result is not None else 0
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
