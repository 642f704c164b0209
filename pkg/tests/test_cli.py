"""End-to-end tests for the command line interface.

Every test drives ``nvol.cli.main`` with a real argv vector and inspects
captured stdout/stderr plus the exit code, exactly as a shell user would.
"""

import csv
import io
import json

import pytest

from nvol import cli
from nvol.errors import ConsistencyError


def invoke(capsys, *argv):
    rc = cli.main(list(argv))
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


def parse_csv(out):
    return list(csv.reader(io.StringIO(out)))


def report_cells(out):
    """Map label -> (exact, decimal) for a label/exact/decimal/note table."""
    body = parse_csv(out)
    assert body[0] == ["label", "exact", "decimal", "note"]
    return {row[0]: (row[1], row[2]) for row in body[1:]}


# ---------------------------------------------------------------- monomial


class TestMonomialCommand:
    def test_weights_report(self, capsys):
        rc, out, _ = invoke(capsys, "monomial", "--weights", "2,3",
                            "--count-at", "60")
        assert rc == 0
        cells = report_cells(out)
        assert cells["vol"] == ("1/6", "0.166667")
        assert cells["log-discrepancy"] == ("5", "5")
        assert cells["nvol"] == ("25/6", "4.166667")
        assert cells["count"] == ("320", "320")
        assert cells["count-ratio"] == ("8/45", "0.177778")

    def test_equal_weights_attain_n_to_the_n(self, capsys):
        rc, out, _ = invoke(capsys, "monomial", "--weights", "1,1")
        assert rc == 0
        assert report_cells(out)["nvol"] == ("4", "4")

    def test_scan_finds_the_uniform_minimizer(self, capsys):
        rc, out, _ = invoke(capsys, "monomial", "--scan", "2",
                            "--resolution", "3")
        assert rc == 0
        body = parse_csv(out)
        cells = {row[0]: row[1] for row in body[1:]}
        assert cells["min-nvol"] == "4"
        assert cells["argmin"] == "1,1"

    def test_weights_and_scan_are_mutually_exclusive(self, capsys):
        rc, _, err = invoke(capsys, "monomial", "--weights", "1,1",
                            "--scan", "2")
        assert rc == 1
        assert err.startswith("error:")

    def test_requires_one_mode(self, capsys):
        rc, _, err = invoke(capsys, "monomial")
        assert rc == 1
        assert "exactly one" in err

    def test_rejects_non_numeric_weight(self, capsys):
        rc, _, err = invoke(capsys, "monomial", "--weights", "2,x")
        assert rc == 1
        assert err.startswith("error:")


# --------------------------------------------------------------------- skp


def test_skp_table_depth_five_byte_exact(capsys):
    """The headline table: counts and ratios for the first five cuts."""
    rc, out, _ = invoke(capsys, "skp", "table", "--depth", "5",
                        "--precision", "5")
    assert rc == 0
    assert out == (
        "k,c_k,beta_k,m,count,ratio\n"
        "1,2,3/2,3,5,1.11111\n"
        "2,3,10/3,10,38,0.76\n"
        "3,5,51/5,51,810,0.62284\n"
        "4,7,358/7,358,37923,0.59179\n"
        "5,11,3939/11,3939,4553318,0.58693\n"
    )


def test_skp_vol_sequence(capsys):
    rc, out, _ = invoke(capsys, "skp", "vol", "--depth", "5",
                        "--precision", "5")
    assert rc == 0
    body = parse_csv(out)
    assert body[0] == ["k", "vol-approx", "vol-decimal",
                       "logdisc-sum", "logdisc-decimal"]
    assert [row[1] for row in body[1:]] == [
        "2/3", "3/5", "10/17", "105/179", "770/1313"]
    assert [row[2] for row in body[1:]] == [
        "0.66667", "0.6", "0.58824", "0.58659", "0.58644"]
    assert [row[3] for row in body[1:]] == [
        "5/2", "17/6", "91/30", "667/210", "7547/2310"]


def test_skp_dims_table(capsys):
    rc, out, _ = invoke(capsys, "skp", "dims", "--depth", "3", "--m", "10",
                        "--k", "0:12")
    assert rc == 0
    body = parse_csv(out)
    assert body[0] == ["k", "dim", "full"]
    dims = [row[1] for row in body[1:]]
    assert dims == ["0", "0", "0", "0", "0", "0", "1", "3", "5", "8",
                    "11", "12", "13"]
    assert [row[2] for row in body[1:]] == ["no"] * 10 + ["yes"] * 3


def test_skp_codim_report(capsys):
    rc, out, _ = invoke(capsys, "skp", "codim", "--depth", "3", "--m", "51")
    assert rc == 0
    cells = report_cells(out)
    assert cells["count"] == ("810", "810")
    assert cells["ratio"] == ("180/289", "0.622837")


def test_skp_value_of_a_polynomial(capsys):
    rc, out, _ = invoke(capsys, "skp", "value", "--depth", "3",
                        "--poly", "4*x^2+8*y^3")
    assert rc == 0
    cells = report_cells(out)
    assert cells["value"] == ("3", "3")
    assert cells["initial-point"][0] == "(0, 3)"
    assert cells["terms"][0] == "2"


def test_skp_unknown_preset_fails_cleanly(capsys):
    rc, _, err = invoke(capsys, "skp", "table", "--preset", "nope",
                        "--depth", "2")
    assert rc == 1
    assert "unknown key-polynomial preset" in err


# -------------------------------------------------------------- filtration


def test_filtration_curve_reports_sampled_columns(capsys):
    rc, out, _ = invoke(capsys, "filtration", "curve", "--preset",
                        "normal-cone:n=3,p=2,lambda=1/2", "--grid", "0:3:1")
    assert rc == 0
    body = parse_csv(out)
    assert body[0] == ["t", "exact", "decimal", "sampled", "half-sampled"]
    assert [row[0] for row in body[1:]] == ["0", "1", "2", "3"]
    for row in body[1:]:
        # tabulated estimates present alongside the closed form
        assert row[3] != "" and row[4] != ""


def test_filtration_dh_statistics(capsys):
    rc, out, _ = invoke(capsys, "filtration", "dh", "--preset",
                        "normal-cone:n=3,p=2,lambda=1/2", "--level", "40")
    assert rc == 0
    cells = report_cells(out)
    assert cells["level"][0] == "40"
    assert cells["atoms"][0] == "161"
    assert cells["mean"][0] == "214/161"
    assert cells["limit-mean"][0] == "4/3"
    assert cells["gap"][0] == "2/483"


def test_filtration_extremes_from_skp_source(capsys):
    rc, out, _ = invoke(capsys, "filtration", "extremes", "--source",
                        "skp:zariski-primes:3", "--levels", "7,9,12")
    assert rc == 0
    body = parse_csv(out)
    assert body[0] == ["level", "e_min", "e_max"]
    assert body[1] == ["7", "1", "117/70"]
    assert body[2] == ["9", "1", "451/270"]
    assert body[3] == ["12", "1", "17/10"]
    assert body[4] == ["sup", "", "17/10"]


def test_filtration_extremes_from_preset(capsys):
    rc, out, _ = invoke(capsys, "filtration", "extremes", "--preset",
                        "pn-hyperplane:n=3", "--levels", "6")
    assert rc == 0
    body = parse_csv(out)
    assert body[1] == ["6", "0", "3"]
    assert body[2] == ["sup", "", "3"]


def test_filtration_extremes_needs_exactly_one_input(capsys):
    rc, _, err = invoke(capsys, "filtration", "extremes",
                        "--levels", "6")
    assert rc == 1
    assert "exactly one" in err
    rc, _, err = invoke(capsys, "filtration", "extremes", "--preset",
                        "pn-hyperplane:n=3", "--source", "monomial:1,1",
                        "--levels", "6")
    assert rc == 1


def test_filtration_lemlim_convergence_rows(capsys):
    rc, out, _ = invoke(capsys, "filtration", "lemlim", "--preset",
                        "normal-cone:n=2,p=1,lambda=1/2",
                        "--alpha", "1", "--beta", "0", "--p", "100,200,400")
    assert rc == 0
    body = parse_csv(out)
    assert body[0] == ["p", "lhs", "rhs", "gap"]
    assert body[1] == ["100", "1.3668", "4/3", "0.033467"]
    assert body[2] == ["200", "1.35005", "4/3", "0.016717"]
    assert body[3] == ["400", "1.341675", "4/3", "0.008342"]


def test_filtration_bad_grid_rejected(capsys):
    rc, _, err = invoke(capsys, "filtration", "curve", "--preset",
                        "pn-hyperplane:n=3", "--grid", "0:1:0")
    assert rc == 1
    assert "step > 0" in err


# -------------------------------------------------------------------- cone


class TestConeCommands:
    def test_volume_report(self, capsys):
        rc, out, _ = invoke(capsys, "cone", "volume", "--preset",
                            "pn-hyperplane:n=3")
        assert rc == 0
        cells = report_cells(out)
        assert cells["r"][0] == "1"
        assert cells["Lvol"][0] == "9"
        assert cells["A1"][0] == "2"
        assert cells["vol(v1)"] == ("9/4", "2.25")
        assert cells["nvol(v1)"][0] == "18"
        assert cells["lambda-star"] == ("1/2", "0.5")

    def test_phi_grid_at_the_minimizer(self, capsys):
        rc, out, _ = invoke(capsys, "cone", "phi", "--preset",
                            "normal-cone:n=2,p=1,lambda=1/2",
                            "--lambda-star", "--s", "0:1:1/4")
        assert rc == 0
        body = parse_csv(out)
        assert body[0] == ["s", "phi", "decimal", "phi-second"]
        assert [(row[0], row[1], row[2]) for row in body[1:]] == [
            ("0", "2", "2"),
            ("1/4", "128/63", "2.031746"),
            ("1/2", "32/15", "2.133333"),
            ("3/4", "128/55", "2.327273"),
            ("1", "8/3", "2.666667"),
        ]
        for row in body[1:]:  # convexity in s
            assert float(row[3]) >= 0

    def test_phi_needs_exactly_one_slope(self, capsys):
        rc, _, err = invoke(capsys, "cone", "phi", "--preset",
                            "pn-hyperplane:n=3")
        assert rc == 1
        assert "exactly one" in err
        rc, _, _ = invoke(capsys, "cone", "phi", "--preset",
                          "pn-hyperplane:n=3", "--lam", "1/2",
                          "--lambda-star")
        assert rc == 1

    def test_theta_and_rescales(self, capsys):
        rc, out, _ = invoke(capsys, "cone", "theta", "--preset",
                            "normal-cone:n=3,p=2,lambda=1/2",
                            "--sigma", "1,2")
        assert rc == 0
        body = parse_csv(out)
        cells = {row[0]: row[1] for row in body[1:]}
        assert cells["theta"] == "1/3"
        assert cells["rescale sigma=1"] == "pass"
        assert cells["rescale sigma=2"] == "pass"

    def test_derivative_report(self, capsys):
        rc, out, _ = invoke(capsys, "cone", "derivative", "--preset",
                            "normal-cone:n=3,p=2,lambda=1/2")
        assert rc == 0
        cells = report_cells(out)
        assert cells["dvol-dbeta"][0] == "64"
        assert cells["dnvol-dbeta"][0] == "8"
        assert cells["dnvol-dalpha"][0] == "8"
        assert cells["moment-functional"][0] == "1/3"

    def test_dinf_default_windows(self, capsys):
        rc, out, _ = invoke(capsys, "cone", "dinf", "--preset",
                            "normal-cone:n=2,p=1,lambda=1/2")
        assert rc == 0
        assert report_cells(out)["d-infinity"][0] == "0"
        rc, out, _ = invoke(capsys, "cone", "dinf", "--preset",
                            "pn-hyperplane:n=3")
        assert rc == 0
        assert report_cells(out)["d-infinity"][0] == "-1"

    def test_dinf_malformed_window(self, capsys):
        rc, _, err = invoke(capsys, "cone", "dinf", "--preset",
                            "pn-hyperplane:n=3", "--window", "1")
        assert rc == 1
        assert "e_minus:e_plus" in err

    def test_valpha_report(self, capsys):
        rc, out, _ = invoke(capsys, "cone", "valpha", "--preset",
                            "pn-hyperplane:n=3", "--alpha", "1")
        assert rc == 0
        cells = report_cells(out)
        assert cells["vol"][0] == "9/4"
        assert cells["log-discrepancy"][0] == "2"
        assert cells["nvol"][0] == "18"

    def test_wbeta_report(self, capsys):
        rc, out, _ = invoke(capsys, "cone", "wbeta", "--preset",
                            "normal-cone:n=2,p=1,lambda=1/2",
                            "--beta", "1/4")
        assert rc == 0
        assert report_cells(out)["vol"][0] == "32/15"

    def test_unknown_preset(self, capsys):
        rc, _, err = invoke(capsys, "cone", "volume", "--preset", "bogus")
        assert rc == 1
        assert err.startswith("error:")


# ---------------------------------------------------------------- okounkov


def test_okounkov_region_monomial(capsys, tmp_path):
    svg = tmp_path / "region.svg"
    rc, out, _ = invoke(capsys, "okounkov", "region", "--source",
                        "monomial:2,3", "--svg", str(svg))
    assert rc == 0
    cells = report_cells(out)
    assert cells["vertex-0"][0] == "(0, 0)"
    assert cells["vertex-1"][0] == "(1/2, 0)"
    assert cells["vertex-2"][0] == "(1/3, 1/3)"
    assert cells["covolume"][0] == "1/12"
    assert cells["vol"][0] == "1/6"
    assert cells["H(0)"][0] == "1/2"
    assert cells["H(1)"][0] == "1/3"
    assert cells["form3"][0] == "1/6"
    text = svg.read_text()
    assert text.startswith("<svg")
    assert "polygon" in text


def test_okounkov_complement_counts(capsys):
    rc, out, _ = invoke(capsys, "okounkov", "complement", "--source",
                        "skp:zariski-primes:3", "--m", "51")
    assert rc == 0
    cells = report_cells(out)
    assert cells["count"][0] == "810"
    assert cells["ratio"][0] == "180/289"


def test_okounkov_complement_point_listing(capsys, tmp_path):
    svg = tmp_path / "cloud.svg"
    rc, out, _ = invoke(capsys, "okounkov", "complement", "--source",
                        "monomial:2,3", "--m", "3", "--points",
                        "--svg", str(svg))
    assert rc == 0
    body = parse_csv(out)
    assert body[0] == ["v0", "v1"]
    assert len(body) == 3  # header + the two monomials of value < 3
    assert svg.exists() and svg.read_text().startswith("<svg")


def test_okounkov_slice_rows(capsys):
    rc, out, _ = invoke(capsys, "okounkov", "slice", "--source",
                        "monomial:2,3", "--t", "7/3",
                        "--levels", "10,20,30")
    assert rc == 0
    body = parse_csv(out)
    assert body[0] == ["level", "lo", "hi", "gap", "included"]
    assert body[1] == ["exact", "1/7", "3/7", "", ""]
    assert [(row[0], row[3], row[4]) for row in body[2:]] == [
        ("10", "1/35", "yes"), ("20", "1/140", "yes"), ("30", "0", "yes")]


def test_okounkov_slice_outside_support(capsys):
    # tau = 1/4 misses the region entirely, so every row is empty
    rc, out, _ = invoke(capsys, "okounkov", "slice", "--source",
                        "monomial:2,3", "--t", "4", "--levels", "10")
    assert rc == 0
    body = parse_csv(out)
    assert body[1] == ["exact", "", "", "", ""]
    assert body[2] == ["10", "", "", "", "empty"]


def test_okounkov_h_values(capsys):
    rc, out, _ = invoke(capsys, "okounkov", "h", "--source", "monomial:2,3",
                        "--x", "0,1/2,1")
    assert rc == 0
    body = parse_csv(out)
    assert body[0] == ["x", "H", "decimal"]
    assert body[1] == ["0", "1/2", "0.5"]
    assert body[2] == ["1/2", "2/5", "0.4"]
    assert body[3] == ["1", "1/3", "0.333333"]


def test_okounkov_h_skp_boundary(capsys):
    rc, out, _ = invoke(capsys, "okounkov", "h", "--source",
                        "skp:zariski-primes:5", "--x", "0,1")
    assert rc == 0
    body = parse_csv(out)
    assert body[1] == ["0", "770/1313", "0.586443"]
    assert body[2] == ["1", "1", "1"]


# ------------------------------------------------------------------ verify


def test_verify_paper_table_suite(capsys):
    rc, out, err = invoke(capsys, "verify", "--suite", "paper-table")
    assert rc == 0
    report = json.loads(out)
    assert report["suite"] == "paper-table"
    assert report["passed"] is True
    assert report["criteria"][0]["id"] == 1
    assert "[PASS] criterion 1" in err
    assert "suite paper-table: pass" in err


def test_verify_unknown_suite(capsys):
    rc, _, err = invoke(capsys, "verify", "--suite", "everything")
    assert rc == 1
    assert err.startswith("error:")


# ---------------------------------------------------------------- plumbing


def test_json_format_shape(capsys):
    rc, out, _ = invoke(capsys, "monomial", "--weights", "1,1",
                        "--format", "json")
    assert rc == 0
    data = json.loads(out)
    assert data["columns"] == ["label", "exact", "decimal", "note"]
    assert any(row[0] == "nvol" and row[1] == "4" for row in data["rows"])
    assert out.endswith("}\n")


def test_output_is_deterministic(capsys):
    first = invoke(capsys, "skp", "table", "--depth", "3")
    second = invoke(capsys, "skp", "table", "--depth", "3")
    assert first == second


def test_unknown_subcommand_exits_one(capsys):
    rc, _, err = invoke(capsys, "bogus")
    assert rc == 1
    assert err.startswith("error:")
    assert "usage" in err


def test_consistency_failures_map_to_exit_two(capsys, monkeypatch):
    def boom(args, out):
        raise ConsistencyError("routes disagree")

    monkeypatch.setattr(cli, "cmd_monomial", boom)
    rc, _, err = invoke(capsys, "monomial", "--weights", "1,1")
    assert rc == 2
    assert err.startswith("consistency failure: routes disagree")
