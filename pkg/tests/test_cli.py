import json

import pytest

from expmaps import builtin_session
from expmaps.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, run


@pytest.fixture(scope="module")
def russell_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("sessions") / "russell.session"
    path.write_text(builtin_session("russell"))
    return str(path)


@pytest.fixture(scope="module")
def square_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("sessions") / "square.session"
    path.write_text(builtin_session("nonexample_square"))
    return str(path)


def run_cli(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run_cli(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_verify_ok(capsys, russell_file):
    code, out, err = run_cli(capsys, "verify", "--input", russell_file, "--map", "phi1")
    assert code == EXIT_OK
    assert "PASS" in out and "FAIL" not in out
    assert "exit: 0" in out


def test_verify_failure_carries_witness(capsys, square_file):
    code, report = run_json(capsys, "verify", "--input", square_file, "--map", "phi_square")
    assert code == EXIT_CHECK_FAILED
    failed = [r for r in report["results"] if r["status"] == "FAIL"]
    assert failed and any("witness" in r for r in failed)


def test_degree_value(capsys, russell_file):
    code, report = run_json(capsys, "degree", "--input", russell_file,
                            "--map", "phi1", "--expr", "y")
    assert code == EXIT_OK
    assert report["results"][0]["value"] == "2"


def test_invariant_pass_and_fail(capsys, russell_file):
    code, _ = run_json(capsys, "invariant", "--input", russell_file,
                       "--map", "phi1", "--expr", "x*t")
    assert code == EXIT_OK
    code, report = run_json(capsys, "invariant", "--input", russell_file,
                            "--map", "phi1", "--expr", "z")
    assert code == EXIT_CHECK_FAILED
    assert "witness" in report["results"][0]


def test_homogenize_report(capsys, russell_file):
    code, report = run_json(capsys, "homogenize", "--input", russell_file,
                            "--map", "phi1", "--weights", "w1")
    assert code == EXIT_OK
    by_check = {r["check"]: r for r in report["results"]}
    assert by_check["grdegU"]["value"] == "2/1"
    assert by_check["support-set y"]["value"] == "[0, 1, 2]"
    assert by_check["support-set x"]["value"] == "[0]"
    assert all(r["status"] == "PASS" for r in report["results"])


def test_express_round_trip(capsys, russell_file):
    code, report = run_json(capsys, "express", "--input", russell_file,
                            "--map", "phi1", "--expr", "y", "--xmin", "z")
    assert code == EXIT_OK
    by_check = {r["check"]: r for r in report["results"]}
    assert by_check["round-trip"]["status"] == "PASS"
    assert by_check["denominator-exponent"]["value"] == "2"


def test_express_default_xmin(capsys, russell_file):
    code, report = run_json(capsys, "express", "--input", russell_file,
                            "--map", "phi1", "--expr", "y", "--seed", "1")
    assert code == EXIT_OK


def test_intersect_powers_of_x(capsys, russell_file):
    code, report = run_json(capsys, "intersect", "--input", russell_file,
                            "--gens1", "x,t", "--gens2", "x,z",
                            "--max-degree", "4")
    assert code == EXIT_OK
    values = sorted(r["value"] for r in report["results"])
    assert values == sorted(["1", "x", "x^2", "x^3", "x^4"])


def test_factor_success(capsys, russell_file):
    code, report = run_json(capsys, "factor", "--input", russell_file,
                            "--expr", "z^2*t + t^4", "--weights", "w2")
    assert code == EXIT_OK
    by_check = {r["check"]: r for r in report["results"]}
    assert by_check["lambda"]["value"] == "1"
    assert by_check["z-power"]["value"] == "0"
    assert by_check["t-power"]["value"] == "1"
    assert by_check["mu-values"]["value"] == "[1]"


def test_factor_does_not_split(capsys, russell_file):
    code, report = run_json(capsys, "factor", "--input", russell_file,
                            "--expr", "z^4 + t^6", "--weights", "w2")
    assert code == EXIT_CHECK_FAILED
    assert report["results"][0]["status"] == "FAIL"
    assert "residual" in report["results"][0]["witness"]


def test_catalog_subset(capsys):
    code, report = run_json(capsys, "catalog", "--entry", "char_p_square", "--char", "2")
    assert code == EXIT_OK
    assert report["results"]
    assert all(r["status"] == "PASS" for r in report["results"])


def test_catalog_nonexamples(capsys):
    code, report = run_json(capsys, "catalog", "--entry", "nonexamples")
    assert code == EXIT_OK
    assert len(report["results"]) == 12


def test_usage_errors(capsys, russell_file):
    code, _, _ = run_cli(capsys, "verify", "--map", "phi1")  # no --input
    assert code == EXIT_USAGE
    code, _, _ = run_cli(capsys, "verify", "--input", "/no/such/file", "--map", "phi1")
    assert code == EXIT_USAGE
    code, _, _ = run_cli(capsys, "verify", "--input", russell_file, "--map", "nope")
    assert code == EXIT_USAGE
    code, _, _ = run_cli(capsys, "bogus-subcommand")
    assert code == EXIT_USAGE


def test_text_json_parity(capsys, russell_file):
    code_j, report = run_json(capsys, "degree", "--input", russell_file,
                              "--map", "phi2", "--expr", "t")
    code_t, out, _ = run_cli(capsys, "degree", "--input", russell_file,
                             "--map", "phi2", "--expr", "t")
    assert code_j == code_t == EXIT_OK
    for result in report["results"]:
        assert result["check"] in out
        assert result["value"] in out
    assert f"exit: {report['exit_code']}" in out
