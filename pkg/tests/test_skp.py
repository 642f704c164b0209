"""Key-polynomial valuations: codimension counts, expansions, approximants."""

import random
from fractions import Fraction as F

import pytest

from nvol.errors import ValidationError
from nvol.exact import decimal_str
from nvol.skp import (
    QMonomialExponent,
    SKPData,
    initial_monomial,
    mixed_radix,
    parse_xy_poly,
    qmon_order,
    qmon_value,
    skp_codim,
    skp_degree_values,
    skp_expand,
    skp_filtration_dim,
    skp_logdisc,
    skp_presets,
    skp_value,
    skp_vol_approx,
    zariski_primes,
)

D5 = zariski_primes(5)


def test_zariski_primes_sequence():
    assert D5.c == (2, 3, 5, 7, 11)
    assert D5.beta == (F(3, 2), F(10, 3), F(51, 5), F(358, 7), F(3939, 11))
    assert D5.d == (1, 2, 6, 30, 210)
    assert D5.max_x_degree == 2309
    assert skp_presets()["zariski-primes"] is zariski_primes


def test_data_validation():
    with pytest.raises(ValidationError):
        SKPData((2,), (F(3),))  # denominator must be exactly c_1
    with pytest.raises(ValidationError):
        SKPData((2, 2), (F(3, 2), F(7, 2)))  # c_2 not coprime to d_2
    with pytest.raises(ValidationError):
        SKPData((2, 3), (F(3, 2), F(7, 3)))  # beta_2 <= c_1*beta_1
    with pytest.raises(ValidationError):
        zariski_primes(0)


def test_vol_approximants():
    expected = [F(2, 3), F(3, 5), F(10, 17), F(105, 179), F(770, 1313)]
    got = [skp_vol_approx(D5, k) for k in range(1, 6)]
    assert got == expected
    assert all(b < a for a, b in zip(got, got[1:]))
    with pytest.raises(ValidationError):
        skp_vol_approx(D5, 6)


def test_logdisc_partial_sums():
    expected = [F(5, 2), F(17, 6), F(91, 30), F(667, 210), F(7547, 2310)]
    assert [skp_logdisc(D5, k) for k in range(1, 6)] == expected
    assert skp_logdisc(D5, 0) == 2


def test_codim_table():
    """Counts at the natural thresholds m = c_k * beta_k, and their ratios."""
    counts = (5, 38, 810, 37923, 4553318)
    ratios = ("1.11111", "0.76", "0.62284", "0.59179", "0.58693")
    for k, (count, ratio) in enumerate(zip(counts, ratios), start=1):
        m = D5.c[k - 1] * D5.beta[k - 1]
        assert skp_codim(D5, m) == count
        assert decimal_str(F(2 * count) / m**2, 5, trim=True) == ratio


def test_codim_depth_requirement():
    shallow = zariski_primes(1)
    assert skp_codim(shallow, 3) == 5
    with pytest.raises(ValidationError):
        skp_codim(shallow, 10)  # needs c_K*beta_K >= m
    with pytest.raises(ValidationError):
        skp_codim(D5, 0)


def test_filtration_dims_at_ten():
    dims = [skp_filtration_dim(D5, 10, k) for k in range(10)]
    assert dims == [0, 0, 0, 0, 0, 0, 1, 3, 5, 8]
    for k in range(10, 16):
        assert skp_filtration_dim(D5, 10, k) == k + 1
    assert sum((k + 1) - d for k, d in enumerate(dims)) == 38


def test_dim_deficits_sum_to_codim():
    """Summing per-degree deficits recovers the codimension count."""
    rng = random.Random(5)
    for _ in range(8):
        m = F(rng.randint(2, 24), rng.choice((1, 2, 3, 6)))
        total = 0
        k = 0
        while True:
            deficit = (k + 1) - skp_filtration_dim(D5, m, k)
            total += deficit
            if k > m and deficit == 0:
                break
            k += 1
        assert total == skp_codim(D5, m)


def test_degree_values_and_extremes():
    assert skp_degree_values(D5, 2) == (F(10, 3), F(5, 2), F(2))
    assert skp_degree_values(D5, 7)[0] == F(117, 10)
    assert skp_degree_values(D5, 9)[0] == F(451, 30)
    assert skp_degree_values(D5, 12)[0] == F(102, 5)
    assert skp_degree_values(D5, 0) == (F(0),)


def test_mixed_radix():
    assert mixed_radix(D5, 0) == (0, 0, 0, 0, 0)
    assert mixed_radix(D5, 100) == (0, 2, 1, 3, 0)
    digits = mixed_radix(D5, 2309)
    assert sum(a * d for a, d in zip(digits, D5.d)) == 2309
    assert digits == (1, 2, 4, 6, 10)  # all maximal: 2309 = max_x_degree
    with pytest.raises(ValidationError):
        mixed_radix(D5, 2310)
    with pytest.raises(ValidationError):
        mixed_radix(zariski_primes(2), 6)


def test_qmon_basics():
    e = QMonomialExponent(1, (1, 1, 0, 0, 0))
    assert qmon_value(D5, e) == 1 + F(3, 2) + F(10, 3)
    assert qmon_order(D5, e) == 1 + 1 + 2
    assert initial_monomial(D5, e) == (3, 1)
    with pytest.raises(ValidationError):
        qmon_value(D5, QMonomialExponent(0, (2,)))  # a_1 must be < c_1
    with pytest.raises(ValidationError):
        QMonomialExponent(-1, ())


def test_parse_xy_poly():
    assert parse_xy_poly("4*x^2+8*y^3") == {(2, 0): F(4), (0, 3): F(8)}
    assert parse_xy_poly("x^2 + y^3") == {(2, 0): F(1), (0, 3): F(1)}
    assert parse_xy_poly("-x+2*y") == {(1, 0): F(-1), (0, 1): F(2)}
    assert parse_xy_poly("3/2*x*y^2") == {(1, 2): F(3, 2)}
    assert parse_xy_poly("x-x") == {}
    with pytest.raises(ValidationError):
        parse_xy_poly("tiger")
    with pytest.raises(ValidationError):
        parse_xy_poly("")


def test_expand_example():
    """4x^2 + 8y^3 rewrites as 4*q_2 + 4*y^3 at depth 3."""
    data = zariski_primes(3)
    poly = parse_xy_poly("4*x^2+8*y^3")
    terms = skp_expand(data, poly)
    assert len(terms) == 2
    assert terms[0] == (F(4), QMonomialExponent(0, (0, 1, 0)))
    assert terms[1] == (F(4), QMonomialExponent(3, (0, 0, 0)))
    assert skp_value(data, poly) == 3
    lead = min(terms, key=lambda t: (qmon_value(data, t[1]), t[1].a0, t[1].a))
    assert initial_monomial(data, lead[1]) == (0, 3)


def test_value_of_generators():
    data = zariski_primes(3)
    assert skp_value(data, {(1, 0): 1}) == F(3, 2)  # x
    assert skp_value(data, {(0, 1): 1}) == 1  # y
    # q_2 = x^2 + y^3 takes the next key value
    assert skp_value(data, parse_xy_poly("x^2+y^3")) == F(10, 3)
    with pytest.raises(ValidationError):
        skp_value(data, {})
    with pytest.raises(ValidationError):
        skp_expand(data, {(30, 0): 1})  # x-degree above depth-3 range


def _eval_xy(poly, x0, y0):
    return sum((c * x0**ex * y0**ey for (ex, ey), c in poly.items()), F(0))


def _eval_terms(data, terms, x0, y0):
    """Evaluate an expansion through the key-polynomial tower itself."""
    qvals = [x0]
    for ci, bi in zip(data.c, data.beta):
        qvals.append(qvals[-1] ** ci + y0 ** int(ci * bi))
    total = F(0)
    for c, exp in terms:
        t = c * y0**exp.a0
        for ai, qv in zip(exp.a, qvals):
            t *= qv**ai
        total += t
    return total


def test_expand_is_an_identity():
    data = zariski_primes(3)
    rng = random.Random(20260815)
    points = [(F(2, 3), F(-1, 2)), (F(3), F(2)), (F(-5, 4), F(1, 3))]
    for _ in range(20):
        poly = {}
        for _ in range(rng.randint(1, 5)):
            key = (rng.randint(0, 20), rng.randint(0, 5))
            poly[key] = poly.get(key, 0) + F(rng.randint(-9, 9))
        poly = {e: c for e, c in poly.items() if c}
        if not poly:
            continue
        terms = skp_expand(data, poly)
        exps = [t[1] for t in terms]
        assert exps == sorted(exps, key=lambda e: (e.a0, e.a))
        for x0, y0 in points:
            assert _eval_terms(data, terms, x0, y0) == _eval_xy(poly, x0, y0)
