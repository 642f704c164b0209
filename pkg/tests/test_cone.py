"""Interpolation functional, divisorial invariant, valuation families."""

from fractions import Fraction as F

import pytest

from nvol.cone import (
    ConeSetup,
    DivisorialData,
    cm_from_dh,
    d_infinity,
    dnvol_dalpha0,
    dnvol_dbeta0,
    dvol_dbeta0,
    phi,
    phi_s_at_0,
    phi_second,
    rescale_divisorial,
    shifted_divisorial_dh,
    theta,
    theta_rescale_check,
    uniqueness_detector,
    valpha,
    valpha_setup,
    vol_v1,
    vs_interpolation,
    wbeta_logdisc,
    wbeta_nvol,
    wbeta_vol,
)
from nvol.errors import ValidationError
from nvol.presets import normal_cone, pn_hyperplane, trivial_step

HP3 = pn_hyperplane(3)
NC212 = normal_cone(2, 1, F(1, 2))
NC32 = normal_cone(3, 2, F(1, 2))


def test_hyperplane_cone_volume():
    s = HP3.setup
    assert (s.r, s.Lvol, s.A1) == (1, 9, 2)
    assert vol_v1(s) == F(9, 4)
    assert s.A1**s.n * vol_v1(s) == 18
    assert s.lambda_star == F(1, 2)


def test_phi_endpoints():
    for preset in (HP3, NC212, NC32):
        s = preset.setup
        v1 = vol_v1(s)
        for lam in (s.lambda_star, F(1), F(2)):
            assert phi(s, lam, 0) == s.Lvol
            assert phi(s, lam, 1) == v1 / lam**s.n


def test_phi_at_lambda_star_values():
    s = NC212.setup
    lam = s.lambda_star
    grid = [F(0), F(1, 4), F(1, 2), F(3, 4), F(1)]
    values = [phi(s, lam, t) for t in grid]
    assert values == [F(2), F(128, 63), F(32, 15), F(128, 55), F(8, 3)]
    # discrete convexity of the sampled functional
    for a, b, c in zip(values, values[1:], values[2:]):
        assert a + c >= 2 * b


def test_phi_validation():
    s = NC212.setup
    with pytest.raises(ValidationError):
        phi(s, 0, F(1, 2))
    with pytest.raises(ValidationError):
        phi(s, 1, F(3, 2))
    with pytest.raises(ValidationError):
        phi_second(s, 1, F(-1, 4))


def test_phi_s_derivative():
    s = NC212.setup
    assert phi_s_at_0(s, s.lambda_star) == 0
    assert phi_s_at_0(s, 2) == -12
    h = F(1, 1000)
    fd = (phi(s, 2, h) - phi(s, 2, 0)) / h
    assert abs(fd - (-12)) < F(1, 10)


def test_phi_second_nonnegative_and_matches_differences():
    s = NC212.setup
    for lam in (s.lambda_star, F(1), F(2)):
        for sv in (F(0), F(1, 4), F(1, 2), F(9, 10)):
            assert phi_second(s, lam, sv) >= 0
    h = F(1, 50)
    sv = F(1, 2)
    second_diff = (phi(s, 1, sv + h) - 2 * phi(s, 1, sv) + phi(s, 1, sv - h)) / h**2
    exact = phi_second(s, 1, sv)
    assert abs(second_diff - exact) < exact / 10


def test_vs_interpolation_agrees_with_phi():
    s = HP3.setup
    for sv in (F(0), F(1, 3), F(1)):
        assert vs_interpolation(s, sv) == phi(s, 1, sv)


def test_theta_hyperplane_vanishes():
    for n in range(2, 6):
        assert theta(pn_hyperplane(n).div) == 0


def test_theta_normal_cone_closed_form():
    cases = [(2, 1, F(1, 2)), (3, 1, F(1, 3)), (3, 2, F(1, 2)), (4, 3, F(1, 4))]
    for n, p, lam in cases:
        div = normal_cone(n, p, lam).div
        assert theta(div) == (n - 1 / lam) / n


def test_theta_rescaling_invariance():
    for div in (HP3.div, NC32.div):
        for sigma in (1, 2, 3, 5):
            assert theta_rescale_check(div, sigma)
    scaled = rescale_divisorial(NC32.div, 3)
    assert scaled.r == NC32.div.r * 3
    assert theta(scaled) == F(1, 3)
    with pytest.raises(ValidationError):
        rescale_divisorial(HP3.div, 0)


def test_valpha_family():
    div = HP3.div
    assert valpha(div, 0) == (9, 9)
    vol1, nvol1 = valpha(div, 1)
    assert vol1 == F(9, 4) and nvol1 == 18  # matches the cone target
    with pytest.raises(ValidationError):
        valpha(div, -1)


def test_derivatives_normal_cone():
    div = NC32.div
    assert dvol_dbeta0(div) == 64
    assert dnvol_dbeta0(div) == 8
    assert dnvol_dalpha0(div) == 8
    assert dnvol_dalpha0(div) == div.n * div.KVn1 * theta(div)


def test_derivative_identities_all_presets():
    cases = [(2, 1, F(1, 2)), (3, 1, F(1, 3)), (3, 2, F(1, 2)), (4, 3, F(1, 4))]
    for n, p, lam in cases:
        div = normal_cone(n, p, lam).div
        want = (n - 1 / lam) * div.Lvol
        assert dvol_dbeta0(div) == p * want
        assert dnvol_dbeta0(div) == F(p) ** (1 - n) * want
        assert dnvol_dalpha0(div) == n * div.KVn1 * theta(div)


def test_beta_derivative_finite_difference():
    div = NC32.div
    h = F(1, 10000)
    fd = (wbeta_vol(div, h) - div.Lvol) / h
    assert abs(fd - 64) < F(1, 10)


def test_alpha_derivative_finite_difference():
    div = NC32.div
    h = F(1, 10000)
    fd = (valpha(div, h)[1] - valpha(div, 0)[1]) / h
    assert abs(fd - 8) < F(1, 10)


def test_wbeta_values():
    div = NC212.div
    assert wbeta_vol(div, F(1, 4)) == F(32, 15)
    assert wbeta_nvol(div, F(1, 4)) == F(32, 15)  # r = 1 here
    assert wbeta_vol(div, 0) == div.Lvol
    with pytest.raises(ValidationError):
        wbeta_vol(div, -1)
    with pytest.raises(ValidationError):
        wbeta_vol(div, 1)  # 1 + beta*a1 = 0: outside the admissible range


def test_wbeta_logdisc_constant():
    assert wbeta_logdisc(F(1, 2), F(1, 8), 1, 1) == F(1, 2)
    assert wbeta_logdisc(3, F(2, 5), 2, F(3, 2)) == 3
    with pytest.raises(ValidationError):
        wbeta_logdisc(1, 2, 1, 1)  # 1 + beta*a1 <= 0
    with pytest.raises(ValidationError):
        wbeta_logdisc(0, 0, 1, 1)


def test_cm_weight_equals_theta():
    for preset in (HP3, NC212, NC32):
        div = preset.div
        dh = shifted_divisorial_dh(div)
        assert dh.mass() == div.Lvol
        assert cm_from_dh(dh, div.n, div.r, div.KVn1) == theta(div)
    assert cm_from_dh(shifted_divisorial_dh(NC32.div), 3, F(1, 2), 8) == F(1, 3)


def test_cm_mass_validation():
    dh = shifted_divisorial_dh(NC32.div).scale(F(1, 2))
    with pytest.raises(ValidationError):
        cm_from_dh(dh, 3, F(1, 2), 8)


def test_d_infinity_values():
    triv = trivial_step()
    assert d_infinity(triv.curve, triv.n, triv.r, triv.KVn1, 1, 1) == 1
    assert d_infinity(HP3.curve, 3, 1, 9, 3, 0) == -1
    assert d_infinity(NC212.curve, 2, 1, 2, 2, 0) == 0
    # below the support the head term cancels -r exactly: e_minus is free
    assert d_infinity(HP3.curve, 3, 1, 9, 3, -2) == -1
    # above it the integrand is 0, so each extra unit of e_plus costs r
    assert d_infinity(HP3.curve, 3, 1, 9, 5, 0) == -3


def test_d_infinity_validation():
    with pytest.raises(ValidationError):
        d_infinity(HP3.curve, 3, 1, 9, 2, 0)  # e_plus below lambda_max
    with pytest.raises(ValidationError):
        d_infinity(HP3.curve, 3, 1, 9, 3, 1)  # e_minus above lambda_min
    with pytest.raises(ValidationError):
        d_infinity(HP3.curve, 3, 1, 9, F(7, 2), 0)


def test_uniqueness_detector():
    assert uniqueness_detector(trivial_step().setup)
    assert uniqueness_detector(trivial_step(3, 2).setup)
    assert not uniqueness_detector(HP3.setup)
    assert not uniqueness_detector(NC212.setup)


def test_cone_setup_validation():
    shifted = HP3.curve.substitute_affine(F(1), F(1))
    ConeSetup(3, F(1), F(9), F(1), F(2), shifted)  # the good case
    with pytest.raises(ValidationError):
        ConeSetup(3, F(1), F(9), F(2), F(2), shifted)  # flat part ends at 1
    with pytest.raises(ValidationError):
        ConeSetup(3, F(1), F(9), F(1), F(1, 2), shifted)  # A1 < r*c1
    with pytest.raises(ValidationError):
        ConeSetup(3, F(0), F(9), F(1), F(2), shifted)


def test_divisorial_validation():
    with pytest.raises(ValidationError):
        DivisorialData(3, F(1), F(9), F(0), F(1), HP3.curve)
    neg_support = HP3.curve.substitute_affine(F(1), F(-1))
    with pytest.raises(ValidationError):
        DivisorialData(3, F(1), F(9), F(1), F(1), neg_support)


def test_valpha_setup_is_shifted_curve():
    s = valpha_setup(HP3.div, 1)
    assert s.vol_curve == HP3.curve.substitute_affine(F(1), F(1))
    s0 = valpha_setup(HP3.div, 0)
    assert s0.vol_curve(F(0)) == 9 and s0.vol_curve(F(2)) == 0
    assert s0.A1 == HP3.div.r
