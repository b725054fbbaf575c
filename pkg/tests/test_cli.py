"""Tests for the command-line driver: exit codes, report determinism and
JSON round-trips."""

import json

import pytest

from kummergauss import cli
from kummergauss.cli import ConfigError, RunConfig, config_from_args, run


def quick_cfg(command, **kw):
    base = dict(command=command, sigma_level=3, max_order=8, points=2,
                seed=11)
    base.update(kw)
    return RunConfig(**base)


# -- config validation ------------------------------------------------

def test_order_floor_enforced():
    with pytest.raises(ConfigError):
        quick_cfg("quartic-verify", sigma_level=7, max_order=8).validate()


def test_order_cap_enforced():
    with pytest.raises(ConfigError):
        quick_cfg("quartic-verify", max_order=24).validate()


def test_bad_level_rejected():
    with pytest.raises(ConfigError):
        quick_cfg("quartic-verify", sigma_level=4).validate()


def test_points_floor():
    with pytest.raises(ConfigError):
        quick_cfg("dz-check", points=0).validate()


def test_bad_lambda_count():
    with pytest.raises(ConfigError):
        quick_cfg("quartic-verify", lambdas=(1, 2)).validate()


def test_lambda_parsing():
    assert cli._parse_lambda("symbolic") is None
    vals = cli._parse_lambda("1,1/2,-3,0,2/7")
    assert [str(v) for v in vals] == ["1", "1/2", "-3", "0", "2/7"]
    with pytest.raises(ConfigError):
        cli._parse_lambda("1,2,3")
    with pytest.raises(ConfigError):
        cli._parse_lambda("a,b,c,d,e")


def test_env_override_for_max_order(monkeypatch):
    args = cli.build_parser().parse_args(["quartic-verify"])
    monkeypatch.setenv("KUMMER_MAX_ORDER", "12")
    assert config_from_args(args).max_order == 12
    monkeypatch.setenv("KUMMER_MAX_ORDER", "not-a-number")
    with pytest.raises(ConfigError):
        config_from_args(args)


# -- exit codes -------------------------------------------------------

def test_main_exit_zero_on_pass(capsys):
    code = cli.main(["goepel"])
    assert code == 0
    out = capsys.readouterr().out
    assert json.loads(out)["status"] == "pass"


def test_main_exit_two_on_config_error(capsys):
    assert cli.main(["quartic-verify", "--max-order", "30"]) == 2
    assert "config error" in capsys.readouterr().err


def test_unknown_command_exits_two():
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-thing"])
    assert exc.value.code == 2


def test_run_exit_one_on_failing_check(monkeypatch):
    def always_fail(cfg):
        return [cli._check("synthetic", False, detail="forced")]
    monkeypatch.setitem(cli._RUNNERS, "fresnel", always_fail)
    report, code = run(quick_cfg("fresnel"))
    assert code == 1
    assert report["status"] == "fail"


def test_qualified_checks_still_exit_zero():
    cfg = quick_cfg("ricci-leading",
                    lambdas=cli._parse_lambda("1,0,0,0,0"))
    report, code = run(cfg)
    assert code == 0
    statuses = {c["status"] for c in report["checks"]}
    assert "qualified" in statuses and "fail" not in statuses


# -- report shape and determinism -------------------------------------

def test_report_round_trips_through_json():
    report, code = run(quick_cfg("inversion-verify"))
    assert code == 0
    text = json.dumps(report, sort_keys=True, indent=2)
    assert json.loads(text) == report


def test_reports_identical_for_same_config():
    r1, _ = run(quick_cfg("ricci-point"))
    r2, _ = run(quick_cfg("ricci-point"))
    r1.pop("wall_time_s")
    r2.pop("wall_time_s")
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)


def test_checks_sorted_by_name():
    report, _ = run(quick_cfg("pde-verify"))
    names = [c["name"] for c in report["checks"]]
    assert names == sorted(names)


def test_rationals_serialized_decimal_free():
    report, _ = run(quick_cfg("goepel"))
    rec = report["checks"][0]
    assert rec["constants"] == ["2/1", "2/1", "2/1", "0/1"]


def test_output_to_file(tmp_path):
    out = tmp_path / "report.json"
    code = cli.main(["fresnel", "--output", str(out)])
    assert code == 0
    assert json.loads(out.read_text())["command"] == "fresnel"


def test_text_format_renders_table(capsys):
    code = cli.main(["goepel", "--format", "text"])
    assert code == 0
    out = capsys.readouterr().out
    assert "goepel-constants" in out and "pass" in out


def test_quartic_report_orders():
    report, code = run(quick_cfg("quartic-verify", sigma_level=3))
    assert code == 0
    rec = report["checks"][0]
    assert rec["expected_order"] == 5
    assert rec["zero_through"] >= 5


def test_all_covers_every_family():
    cfg = quick_cfg("all", points=2)
    report, code = run(cfg)
    assert code == 0
    names = " ".join(c["name"] for c in report["checks"])
    for stem in ("quartic", "pde", "kernel", "metric", "ricci", "inversion",
                 "dz", "sphere", "kahler", "chern", "goepel", "fresnel"):
        assert stem in names, stem
