"""Self-check battery: every headline number recomputed and compared.

Each criterion recomputes a published value or identity through the
library's independent routes and reports exact pass/fail per check.
Suites group the criteria; ``all`` runs the full battery.  Results are
structured so the command-line front end can emit a deterministic JSON
report (timings are reported separately, never inside the report body).
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .cone import (
    cm_from_dh,
    d_infinity,
    dnvol_dbeta0,
    dvol_dbeta0,
    phi,
    phi_s_at_0,
    phi_second,
    shifted_divisorial_dh,
    theta,
    theta_rescale_check,
    uniqueness_detector,
    vol_v1,
    wbeta_logdisc,
)
from .exact import decimal_str, measure_moment, neg_differential, q
from .filtration import dh_empirical, dh_limit, lemlim_check
from .monomial import (
    MonomialValuation,
    mono_count_oracle,
    mono_min_scan,
    mono_nvol,
    mono_vol,
    wtbeta_logdisc,
)
from .okounkov import (
    MonomialFlag,
    SKPFlag,
    covolume,
    form3_check,
    gamma_region,
    primary_complement,
    slice_check,
)
from .presets import normal_cone, pn_hyperplane, trivial_step
from .skp import skp_codim, skp_filtration_dim, skp_logdisc, skp_vol_approx, zariski_primes

SEED = 20260815

TABLE_COUNTS = (5, 38, 810, 37923, 4553318)
TABLE_RATIOS = ("1.11111", "0.76", "0.62284", "0.59179", "0.58693")


@dataclass(frozen=True)
class Check:
    label: str
    passed: bool
    note: str = ""


@dataclass(frozen=True)
class CriterionResult:
    cid: int
    name: str
    checks: tuple[Check, ...]
    seconds: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _ck(checks: list[Check], label: str, ok: bool, note: str = "") -> None:
    checks.append(Check(label, bool(ok), note))


def criterion_1() -> list[Check]:
    """Primary-sequence complement table: exact counts and 5-digit ratios."""
    checks: list[Check] = []
    data = zariski_primes(5)
    t0 = time.perf_counter()
    for k in range(1, 6):
        m = data.c[k - 1] * data.beta[k - 1]
        count = skp_codim(data, m)
        ratio = decimal_str(Fraction(2 * count) / (m * m), 5, trim=True)
        _ck(checks, f"count(m=c_{k}*beta_{k})", count == TABLE_COUNTS[k - 1],
            f"{count} == {TABLE_COUNTS[k - 1]}")
        _ck(checks, f"ratio(k={k})", ratio == TABLE_RATIOS[k - 1],
            f"{ratio} == {TABLE_RATIOS[k - 1]}")
    elapsed = time.perf_counter() - t0
    _ck(checks, "table runtime < 1 s", elapsed < 1.0)
    return checks


def criterion_2() -> list[Check]:
    """Volume approximants decrease to ~0.58643; log-discrepancy sums rise."""
    checks: list[Check] = []
    data = zariski_primes(6)
    approx = [skp_vol_approx(data, k) for k in range(1, 7)]
    _ck(checks, "vol approximants strictly decreasing",
        all(a > b for a, b in zip(approx, approx[1:])),
        " > ".join(decimal_str(a, 5) for a in approx))
    gap = abs(approx[-1] - Fraction(58643, 100000))
    _ck(checks, "sixth approximant near 0.58643", gap < Fraction(1, 10000),
        f"|{decimal_str(approx[-1], 6)} - 0.58643| = {decimal_str(gap, 6)}")
    logs = [skp_logdisc(data, k) for k in range(1, 6)]
    _ck(checks, "log-discrepancy sums strictly increasing",
        all(a < b for a, b in zip(logs, logs[1:])))
    _ck(checks, "A_5 exact", logs[-1] == Fraction(7547, 2310),
        f"{logs[-1]} == 7547/2310")
    return checks


def criterion_3() -> list[Check]:
    """Filtration dimensions at m=10 and the codimension identity on a grid."""
    checks: list[Check] = []
    data = zariski_primes(5)
    dims = [skp_filtration_dim(data, 10, k) for k in range(10)]
    _ck(checks, "dims k=0..9", dims == [0, 0, 0, 0, 0, 0, 1, 3, 5, 8], str(dims))
    _ck(checks, "dims k>=10 full",
        all(skp_filtration_dim(data, 10, k) == k + 1 for k in range(10, 16)))
    total = sum(k + 1 - skp_filtration_dim(data, 10, k) for k in range(11))
    _ck(checks, "codimension identity at m=10", total == 38, f"{total} == 38")
    grid_ok = True
    m = Fraction(1)
    while m <= 12:
        lhs = sum(k + 1 - skp_filtration_dim(data, m, k)
                  for k in range(math.ceil(m) + 1))
        if lhs != skp_codim(data, m):
            grid_ok = False
            break
        m += Fraction(1, 6)
    _ck(checks, "codimension identity on sixth-step grid to 12", grid_ok)
    return checks


def criterion_4() -> list[Check]:
    """Monomial normalized volumes: equality case, closed forms, counts."""
    checks: list[Check] = []
    _ck(checks, "nvol(g,g) = 4",
        all(mono_nvol(MonomialValuation((g, g))) == 4
            for g in (Fraction(1), Fraction(2), Fraction(1, 2), Fraction(7, 3))))
    _ck(checks, "nvol(2,3) = 25/6",
        mono_nvol(MonomialValuation((Fraction(2), Fraction(3)))) == Fraction(25, 6))
    rng = random.Random(SEED)

    def rand_q():
        return Fraction(rng.randint(1, 12), rng.randint(1, 12))

    strict = True
    for _ in range(100):
        g1, g2 = rand_q(), rand_q()
        while g1 == g2:
            g2 = rand_q()
        if mono_nvol(MonomialValuation((g1, g2))) <= 4:
            strict = False
            break
    _ck(checks, "nvol > 4 for 100 unequal pairs", strict)
    count_ok = True
    worst = Fraction(0)
    for _ in range(20):
        g1, g2 = rand_q(), rand_q()
        val = MonomialValuation((g1, g2))
        m = 500 * max(g1, g2)
        ratio = Fraction(2 * mono_count_oracle(val, m)) / (m * m)
        rel = abs(ratio - mono_vol(val)) / mono_vol(val)
        worst = max(worst, rel)
        if rel > Fraction(1, 50):
            count_ok = False
    _ck(checks, "count ratio within 2% at m = 500*max", count_ok,
        f"worst relative gap {decimal_str(worst, 6)}")
    for n, want in ((2, 4), (3, 27)):
        best, arg = mono_min_scan(n, 6)
        _ck(checks, f"grid minimum n={n}", best == want and len(set(arg)) == 1,
            f"{best} at {tuple(str(a) for a in arg)}")
    return checks


def _phi_setups():
    return [normal_cone(2, 1, Fraction(1, 2)).setup,
            normal_cone(3, 2, Fraction(1, 2)).setup,
            pn_hyperplane(2).setup,
            pn_hyperplane(3).setup]


def criterion_5() -> list[Check]:
    """Interpolation functional: endpoints, dual routes, convexity, slope."""
    checks: list[Check] = []
    grid = [Fraction(j, 20) for j in range(21)]
    for st in _phi_setups():
        v1 = vol_v1(st)
        label = st.label
        _ck(checks, f"{label}: endpoints",
            all(phi(st, lam, Fraction(0)) == st.Lvol
                and phi(st, lam, Fraction(1)) == v1 / lam ** st.n
                for lam in (st.lambda_star, Fraction(1), Fraction(2))))
        convex = True
        for lam in (st.lambda_star, Fraction(1), Fraction(2)):
            vals = [phi(st, lam, s) for s in grid]
            if not all(vals[i - 1] - 2 * vals[i] + vals[i + 1] >= 0
                       for i in range(1, len(grid) - 1)):
                convex = False
            if not all(phi_second(st, lam, s) >= 0 for s in grid):
                convex = False
        _ck(checks, f"{label}: dual routes and convexity on s-grid", convex)
        fs = phi_s_at_0(st, Fraction(2))
        h1, h2 = Fraction(1, 1000), Fraction(1, 10000)
        e1 = abs((phi(st, Fraction(2), h1) - phi(st, Fraction(2), Fraction(0))) / h1 - fs)
        e2 = abs((phi(st, Fraction(2), h2) - phi(st, Fraction(2), Fraction(0))) / h2 - fs)
        ratio = e2 / e1
        _ck(checks, f"{label}: slope at 0 first-order",
            Fraction(1, 20) <= ratio <= Fraction(1, 5),
            f"error ratio {decimal_str(ratio, 4)}")
    return checks


NC_TUPLES = ((2, 1, Fraction(1, 2)), (3, 1, Fraction(1, 3)),
             (3, 2, Fraction(1, 2)), (4, 3, Fraction(1, 4)))


def criterion_6() -> list[Check]:
    """Normal-cone derivative identities, integration vs closed form."""
    checks: list[Check] = []
    for n, p, lam in NC_TUPLES:
        div = normal_cone(n, p, lam).div
        want = (n - 1 / lam) * div.Lvol
        _ck(checks, f"d/db vol|0, n={n},p={p},lambda={lam}",
            dvol_dbeta0(div) == p * want, f"= {dvol_dbeta0(div)}")
        _ck(checks, f"d/db nvol|0, n={n},p={p},lambda={lam}",
            dnvol_dbeta0(div) == Fraction(p) ** (1 - n) * want,
            f"= {dnvol_dbeta0(div)}")
    return checks


def criterion_7() -> list[Check]:
    """Theta closed forms and rescaling invariance."""
    checks: list[Check] = []
    for n in (2, 3, 4, 5):
        div = pn_hyperplane(n).div
        _ck(checks, f"hyperplane n-1={n - 1}: Theta = 0", theta(div) == 0)
        _ck(checks, f"hyperplane n-1={n - 1}: rescale",
            all(theta_rescale_check(div, s) for s in (1, 2, 3, 5)))
    for n, p, lam in NC_TUPLES:
        div = normal_cone(n, p, lam).div
        _ck(checks, f"normal-cone {n},{p},{lam}: Theta = (n-1/lambda)/n",
            theta(div) == (n - 1 / lam) / n, f"= {theta(div)}")
        _ck(checks, f"normal-cone {n},{p},{lam}: rescale",
            all(theta_rescale_check(div, s) for s in (1, 2, 3, 5)))
    return checks


def criterion_8() -> list[Check]:
    """Log-discrepancy constancy for w_beta and the monomial analogue."""
    checks: list[Check] = []
    rng = random.Random(SEED)
    cone_ok = True
    for _ in range(100):
        r = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        qm = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        a_f = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        beta = Fraction(rng.randint(0, 9), 10) * r / (qm * a_f)
        if wbeta_logdisc(r, beta, qm, a_f) != r:
            cone_ok = False
            break
    _ck(checks, "w_beta log discrepancy == r on 100 random tuples", cone_ok)
    wt_ok = True
    for _ in range(100):
        n = rng.randint(2, 6)
        weights = tuple(rng.randint(1, 9) for _ in range(n))
        beta = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if wtbeta_logdisc(weights, beta) != n:
            wt_ok = False
            break
    _ck(checks, "wt_beta log discrepancy == n on 100 random tuples", wt_ok)
    return checks


def criterion_9() -> list[Check]:
    """Riemann-sum lemma: gaps shrink and land within 5% at p = 400."""
    checks: list[Check] = []
    pr = normal_cone(2, 1, Fraction(1, 2))
    curve, dims = pr.setup.vol_curve, pr.tab_v1.dims
    for alpha, beta in ((Fraction(1), Fraction(0)), (Fraction(1), Fraction(1, 2))):
        r100 = lemlim_check(curve, 2, dims, Fraction(1), alpha, beta, 100)
        r400 = lemlim_check(curve, 2, dims, Fraction(1), alpha, beta, 400)
        _ck(checks, f"alpha={alpha}, beta={beta}: gap(400) < gap(100)",
            r400.gap < r100.gap,
            f"{decimal_str(r400.gap, 6)} < {decimal_str(r100.gap, 6)}")
        _ck(checks, f"alpha={alpha}, beta={beta}: gap(400) < 5% of integral",
            r400.gap < r400.rhs * Fraction(1, 20),
            f"rhs = {r400.rhs}")
    return checks


def criterion_10() -> list[Check]:
    """Lattice-cone geometry: covolumes, complements, slices, d_infinity."""
    checks: list[Check] = []
    flags = {
        "monomial(1,1)": MonomialFlag((Fraction(1), Fraction(1))),
        "monomial(2,3)": MonomialFlag((Fraction(2), Fraction(3))),
        "skp(zariski-primes,5)": SKPFlag(zariski_primes(5)),
    }
    for name, fv in flags.items():
        region = gamma_region(fv)
        vol = (mono_vol(MonomialValuation(fv.gamma))
               if isinstance(fv, MonomialFlag)
               else skp_vol_approx(fv.data, fv.data.depth))
        _ck(checks, f"{name}: 2*covolume = vol", 2 * covolume(region) == vol,
            f"= {vol}")
        _ck(checks, f"{name}: H-integral identity", form3_check(fv) == vol)
    sf = flags["skp(zariski-primes,5)"]
    for m in (10, 51):
        _, count = primary_complement(sf, m)
        _ck(checks, f"complement count at m={m}", count == skp_codim(sf.data, m),
            f"= {count}")
    sr = slice_check(flags["monomial(2,3)"], Fraction(7, 3), (10, 20, 30))
    _ck(checks, "slices included with shrinking gap",
        sr.all_included and sr.gaps[0] > sr.gaps[1] > sr.gaps[2],
        " > ".join(str(g) for g in sr.gaps))
    srs = slice_check(sf, Fraction(1), (10, 20, 30))
    _ck(checks, "skp slices at t=1 exact", srs.all_included
        and all(g == 0 for g in srs.gaps))
    for pr, want in ((trivial_step(), 1), (pn_hyperplane(3), -1),
                     (normal_cone(2, 1, Fraction(1, 2)), 0)):
        em, ep = pr.window
        got = d_infinity(pr.curve, pr.n, pr.r, pr.KVn1, ep, em)
        _ck(checks, f"{pr.name}: d_infinity = {want}", got == want)
    return checks


def criterion_11() -> list[Check]:
    """Uniqueness detector, limit-measure masses, empirical convergence."""
    checks: list[Check] = []
    _ck(checks, "trivial curves detected unique",
        uniqueness_detector(trivial_step().setup) is True
        and uniqueness_detector(trivial_step(3, 2).setup) is True)
    nontrivial = [normal_cone(2, 1, Fraction(1, 2)), normal_cone(3, 2, Fraction(1, 2)),
                  pn_hyperplane(2), pn_hyperplane(3)]
    _ck(checks, "nontrivial presets detected non-unique",
        all(uniqueness_detector(pr.setup) is False for pr in nontrivial))
    mass_ok = True
    for pr in nontrivial:
        div = pr.div
        if neg_differential(div.vol_curve_F).mass() != div.Lvol:
            mass_ok = False
        if dh_limit(div.vol_curve_F, div.Lvol).mass() != 1:
            mass_ok = False
    _ck(checks, "limit measure mass: Lvol raw, 1 normalized", mass_ok)
    pr = normal_cone(3, 2, Fraction(1, 2))
    limit = measure_moment(dh_limit(pr.curve, pr.div.Lvol), 1)
    g10 = abs(measure_moment(dh_empirical(pr.tab_F, 10), 1) - limit)
    g40 = abs(measure_moment(dh_empirical(pr.tab_F, 40), 1) - limit)
    _ck(checks, "empirical first moment converges", g40 < g10,
        f"{decimal_str(g10, 6)} -> {decimal_str(g40, 6)}")
    cm_ok = True
    for pr in nontrivial:
        div = pr.div
        dh = shifted_divisorial_dh(div)
        if cm_from_dh(dh, div.n, div.r, div.KVn1) != theta(div):
            cm_ok = False
    _ck(checks, "first-moment functional matches Theta", cm_ok)
    return checks


CRITERIA = {
    1: ("primary-sequence complement table", criterion_1),
    2: ("volume and log-discrepancy limits", criterion_2),
    3: ("filtration dimensions and codimension identity", criterion_3),
    4: ("monomial normalized volumes", criterion_4),
    5: ("interpolation functional", criterion_5),
    6: ("normal-cone derivative identities", criterion_6),
    7: ("Theta closed forms and rescaling", criterion_7),
    8: ("log-discrepancy constancy", criterion_8),
    9: ("Riemann-sum lemma convergence", criterion_9),
    10: ("lattice-cone geometry", criterion_10),
    11: ("uniqueness and measure convergence", criterion_11),
}

SUITES = {
    "paper-table": (1,),
    "identities": (3, 4, 5, 6, 7, 8),
    "convergence": (2, 9, 10, 11),
    "all": tuple(range(1, 12)),
}


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    results: tuple[CriterionResult, ...]
    seconds: float

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "criteria": [
                {
                    "id": r.cid,
                    "name": r.name,
                    "passed": r.passed,
                    "checks": [
                        {"label": c.label, "passed": c.passed, "note": c.note}
                        for c in r.checks
                    ],
                }
                for r in self.results
            ],
        }


def run_suite(suite: str = "all") -> SuiteReport:
    if suite not in SUITES:
        from .errors import ValidationError

        raise ValidationError(
            f"unknown suite {suite!r}; choose from {sorted(SUITES)}"
        )
    results = []
    t0 = time.perf_counter()
    for cid in SUITES[suite]:
        name, fn = CRITERIA[cid]
        c0 = time.perf_counter()
        checks = fn()
        results.append(CriterionResult(cid, name, tuple(checks),
                                       time.perf_counter() - c0))
    return SuiteReport(suite, tuple(results), time.perf_counter() - t0)
