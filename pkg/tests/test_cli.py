"""Command-line interface: formats, envelopes, exit codes, config files."""

import json
import math

import pytest

from positronium import cli
from positronium.models import PhysicalConfig, potential_v1


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_scan_emits_csv(capsys):
    code, out, err = run_cli(
        capsys, "scan", "--model", "coulomb", "--rmin", "100", "--rmax", "1000", "--points", "5"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r,V"
    assert len(lines) == 6
    cfg = PhysicalConfig()
    for line in lines[1:]:
        r_text, v_text = line.split(",")
        r, v = float(r_text), float(v_text)
        # 17 significant digits round-trip doubles exactly
        assert v == potential_v1(cfg, r)
    assert float(lines[1].split(",")[0]) == 100.0
    assert float(lines[-1].split(",")[0]) == 1000.0


def test_scan_json_envelope_and_determinism(capsys):
    argv = ("scan", "--model", "coulomb", "--rmin", "1", "--rmax", "10", "--points", "4", "--json")
    code, out, _ = run_cli(capsys, *argv)
    assert code == 0
    first = json.loads(out)
    assert set(first) == {"command", "version", "params", "results", "meta"}
    assert first["command"] == "scan"
    assert first["params"]["model"] == "coulomb"
    assert first["params"]["quantity"] == "potential"
    assert len(first["results"]["r"]) == 4

    code, out, _ = run_cli(capsys, *argv)
    second = json.loads(out)
    first.pop("meta")
    second.pop("meta")
    assert first == second


def test_scan_parameter_echo_reruns_identically(capsys):
    _, out, _ = run_cli(capsys, "scan", "--model", "coulomb-dipole", "--json")
    env = json.loads(out)
    p = env["params"]
    argv = [
        "scan", "--model", p["model"], "--alpha", repr(p["alpha"]), "--n", str(p["n"]),
        "--rmin", repr(p["rmin"]), "--rmax", repr(p["rmax"]),
        "--points", str(p["points"]), "--quantity", p["quantity"], "--json",
    ]
    argv.append("--log" if p["spacing"] == "log" else "--linear")
    _, out, _ = run_cli(capsys, *argv)
    env2 = json.loads(out)
    assert env2["results"] == env["results"]


def test_scan_binding_quantity(capsys):
    _, out, _ = run_cli(
        capsys, "scan", "--model", "coulomb", "--rmin", "200", "--rmax", "400",
        "--points", "3", "--quantity", "binding", "--json",
    )
    env = json.loads(out)
    cfg = PhysicalConfig()
    for r, v in zip(env["results"]["r"], env["results"]["V"]):
        assert v == pytest.approx(potential_v1(cfg, r) - 2.0, abs=1e-15)
        assert v < 0.0


@pytest.mark.parametrize(
    "argv,flag",
    [
        (("scan", "--model", "ring-ml", "--R", "-1"), "--R"),
        (("scan", "--model", "coulomb", "--rmin", "5", "--rmax", "5"), "--rmax"),
        (("scan", "--model", "coulomb", "--points", "1"), "--points"),
        (("scan", "--model", "coulomb", "--R", "1e-5"), "--R"),
        (("scan", "--model", "ring-ml"), "--R"),
        (("scan", "--model", "ring-bltp", "--R", "2.5e-5"), "--kappa"),
        (("scan", "--model", "scaling", "--R", "2.5e-5", "--k", "7"), "--k"),
        (("scan", "--model", "coulomb", "--alpha", "2.0"), "--alpha"),
        (("scan", "--model", "ring-ml", "--R", "1e-5", "--R-coeff", "0.5"), "--R"),
        (("minimize", "--model", "coulomb", "--points-per-decade", "3"), "--points-per-decade"),
        (("variational", "--R", "2.6e-5", "--a-min", "1", "--a-max", "0.5"), "--a-max"),
    ],
)
def test_usage_errors_name_the_flag(capsys, argv, flag):
    code, _, err = run_cli(capsys, *argv)
    assert code == 2
    assert flag in err


def test_missing_subcommand_is_a_usage_error(capsys):
    assert run_cli(capsys)[0] == 2


def test_version_flag(capsys):
    code, out, _ = run_cli(capsys, "--version")
    assert code == 0
    assert "positronium" in out


def test_minimize_coulomb(capsys):
    code, out, _ = run_cli(capsys, "minimize", "--model", "coulomb", "--json")
    assert code == 0
    env = json.loads(out)
    assert env["results"]["count"] == 1
    entry = env["results"]["minima"][0]
    cfg = PhysicalConfig()
    assert entry["r_star"] == pytest.approx(math.sqrt(4.0 - cfg.alpha**2) / cfg.alpha, rel=1e-6)
    assert entry["kind"] == "global_min"
    assert entry["V"] == pytest.approx(2.0 + entry["binding"], rel=1e-12)
    assert len(entry["bracket"]) == 3


def test_minimize_reports_absence_honestly(capsys):
    # second orbit over the regulated rings: no tight minimum, exit 0
    code, out, _ = run_cli(
        capsys, "minimize", "--model", "ring-bltp", "--R", "2.569808e-5",
        "--kappa", "1.805202e5", "--n", "2", "--json",
    )
    assert code == 0
    env = json.loads(out)
    assert env["results"]["count"] == 0
    assert env["results"]["minima"] == []


def test_tune_ring_ml(capsys):
    code, out, _ = run_cli(capsys, "tune", "--model", "ring-ml", "--json")
    assert code == 0
    env = json.loads(out)
    res = env["results"]
    assert res["coefficient"] == pytest.approx(0.49597832371966283, rel=1e-9)
    assert res["coefficient_parameterization"] == "R / alpha^2"
    assert abs(res["minimum"]["energy"]) <= 1e-9
    sens = res["sensitivity"]
    assert sens["probe_coefficient"] == pytest.approx(0.4959783237, rel=1e-12)
    assert sens["sign_vs_target"] == "negative"
    assert sens["probe_energy"] < 0.0


def test_flux_solve(capsys):
    code, out, _ = run_cli(capsys, "flux-solve", "--kappa", "1.8e5", "--json")
    assert code == 0
    env = json.loads(out)
    assert env["results"]["R"] == pytest.approx(2.5568727271277648e-05, rel=1e-9)
    assert env["results"]["kappa_R"] == pytest.approx(1.8e5 * 2.5568727271277648e-05, rel=1e-9)


def test_flux_solve_infeasible_is_a_numerical_failure(capsys):
    code, _, err = run_cli(capsys, "flux-solve", "--kappa", "1e5")
    assert code == 3
    assert "numerical failure" in err


def test_variational_single_point(capsys):
    code, out, _ = run_cli(
        capsys, "variational", "--R", "2.661639e-5", "--a", "1.5726e-5", "--json"
    )
    assert code == 0
    env = json.loads(out)
    res = env["results"]
    assert res["energy"] == pytest.approx(-16.477721075585578, abs=1e-5)
    assert res["energy"] == pytest.approx(res["kinetic"] + res["potential"], abs=1e-9)


def test_variational_scan_mode(capsys):
    code, out, _ = run_cli(
        capsys, "variational", "--R", "2.661639e-5", "--a-min", "1e-7", "--a-max", "1e-3",
        "--json",
    )
    assert code == 0
    env = json.loads(out)
    assert env["results"]["count"] == 1
    assert env["results"]["bound"] == pytest.approx(-16.4949754900299, abs=1e-3)


def test_config_file_supplies_defaults(capsys, tmp_path):
    config = tmp_path / "scan.conf"
    config.write_text(
        "# point-charge sweep\nmodel = coulomb\nrmin = 100\nrmax = 1000\npoints = 5\n"
    )
    code, out, _ = run_cli(capsys, "scan", "--config", str(config))
    assert code == 0
    assert len(out.strip().splitlines()) == 6


def test_flags_override_config_file(capsys, tmp_path):
    config = tmp_path / "scan.conf"
    config.write_text("model = coulomb\nrmin = 100\nrmax = 1000\npoints = 5\n")
    code, out, _ = run_cli(capsys, "scan", "--config", str(config), "--points", "7")
    assert code == 0
    assert len(out.strip().splitlines()) == 8


def test_config_file_rejects_unknown_keys(capsys, tmp_path):
    config = tmp_path / "scan.conf"
    config.write_text("model = coulomb\nbogus = 3\n")
    code, _, err = run_cli(capsys, "scan", "--config", str(config))
    assert code == 2
    assert "--config" in err and "bogus" in err


def test_config_file_must_exist(capsys, tmp_path):
    code, _, err = run_cli(capsys, "scan", "--config", str(tmp_path / "missing.conf"))
    assert code == 2


def test_output_file(capsys, tmp_path):
    target = tmp_path / "curve.csv"
    code, out, _ = run_cli(
        capsys, "scan", "--model", "coulomb", "--rmin", "1", "--rmax", "2",
        "--points", "3", "--output", str(target),
    )
    assert code == 0
    assert out == ""
    lines = target.read_text().strip().splitlines()
    assert lines[0] == "r,V"
    assert len(lines) == 4


def test_reproduce_reports_the_honest_failures(capsys):
    # the suite carries two comparisons that sit outside their reference
    # windows (see test_acceptance); the exit code must say so
    code, out, _ = run_cli(capsys, "reproduce", "--json")
    assert code == 1
    envelope = json.loads(out)
    report = envelope["results"]
    assert report["all_passed"] is False
    numbers = [c["number"] for c in report["criteria"]]
    assert numbers == list(range(1, 11))
    status = {c["number"]: c["passed"] for c in report["criteria"]}
    assert status[7] is False
    assert status[8] is False
    for number in (1, 2, 3, 4, 5, 6, 9, 10):
        assert status[number] is True, f"criterion {number} regressed"
    for c in report["criteria"]:
        for check in c["checks"]:
            assert {"name", "computed", "expected", "tolerance", "delta", "passed"} <= set(check)
