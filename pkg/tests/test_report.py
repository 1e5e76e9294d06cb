import io
import json

import pytest
from hypothesis import given, strategies as st

from cqg.cli import main
from cqg.report import (
    INJECTABLE,
    REGISTRY,
    SUITES,
    CheckResult,
    ParseError,
    SuiteConfig,
    ValidationError,
    VerificationReport,
    config_from_mapping,
    emit_report,
    parse_config,
    registry,
    run_suite,
)

KEYS = {"id", "status", "anchor", "residual_terms", "ms"}


def write(tmp_path, text):
    p = tmp_path / "suite.toml"
    p.write_text(text)
    return p


# -- configuration

def test_empty_file_gives_defaults(tmp_path):
    assert parse_config(write(tmp_path, "")) == SuiteConfig()


def test_full_config_round_trips(tmp_path):
    cfg = parse_config(write(tmp_path, """
palette = ["lambda", "mu", "nu"]
q_specializations = ["16", "81/16"]
colour_specializations = [{lambda = "1/2", mu = "-3/2"}]
c_plus = "cp"
order = "colour"
step_budget = 5000
rll_variants = ["mu,lambda"]
seed = 7
points = 2
"""))
    assert cfg.palette == ("lambda", "mu", "nu")
    assert len(cfg.palette_object.pairs()) == 6
    assert config_from_mapping(cfg.to_dict()) == cfg
    assert cfg.config_hash != SuiteConfig().config_hash


@pytest.mark.parametrize("data, key", [
    ({"step_budget": -1}, "step_budget"),
    ({"step_budget": 1.5}, "step_budget"),
    ({"palette": []}, "palette"),
    ({"palette": ["x", "x"]}, "palette"),
    ({"q_specializations": ["2"]}, "q_specializations"),
    ({"q_specializations": ["1"]}, "q_specializations"),
    ({"colour_specializations": [{"lambda": "1/3"}]}, "colour_specializations"),
    ({"order": "random"}, "order"),
    ({"inject": ["rtt.confluence"]}, "inject"),
    ({"colours": {"lambda": "2*"}}, "colours"),
    ({"bogus": 1}, "bogus"),
])
def test_invalid_values_name_their_key(data, key):
    with pytest.raises(ValidationError) as info:
        config_from_mapping(data)
    assert info.value.key.split(".")[0].split("[")[0] == key


def test_parse_error_carries_line(tmp_path):
    with pytest.raises(ParseError) as info:
        parse_config(write(tmp_path, 'seed = 1\npalette = ["a",\norder = \n'))
    assert info.value.line is not None and info.value.line >= 3


def test_step_budget_environment_override():
    assert config_from_mapping({}, env={"CQG_STEP_BUDGET": "77"}).step_budget == 77
    with pytest.raises(ValidationError):
        config_from_mapping({}, env={"CQG_STEP_BUDGET": "-3"})


# -- registry

def test_registry_ids_unique_and_cover_suites():
    ids = [c.id for c in REGISTRY]
    assert len(ids) == len(set(ids))
    assert {c.suite for c in REGISTRY} == set(SUITES)
    assert all(c.expect in ("pass", "reported") for c in REGISTRY)
    assert all(c.id.split(".")[0] == c.suite for c in REGISTRY)


def test_registry_grows_with_points():
    cfg = config_from_mapping({"points": 5})
    assert sum(c.suite == "oracle" for c in registry(cfg)) == 5


def test_run_all_executes_each_check_once():
    report = run_suite("all")
    assert [c.id for c in report.checks] == [c.id for c in REGISTRY]


def test_ybe_suite():
    report = run_suite("ybe")
    assert [c.status for c in report.checks] == ["pass", "pass"]
    assert report.exit_code == 0


def test_rll_suite_is_reported_only():
    report = run_suite("rll")
    assert {c.status for c in report.checks} == {"reported"}
    assert report.exit_code == 0


# -- output

def test_json_schema_and_determinism():
    a = json.loads(emit_report(run_suite("hopf"), "json"))
    b = json.loads(emit_report(run_suite("hopf"), "json"))
    assert set(a) == {"suite", "config_hash", "checks"}
    for entry in a["checks"]:
        assert set(entry) == KEYS
        assert entry["status"] in ("pass", "fail", "reported")
        assert isinstance(entry["residual_terms"], int) and isinstance(entry["ms"], int)
    strip = lambda r: [{k: v for k, v in c.items() if k != "ms"} for c in r["checks"]]
    assert strip(a) == strip(b) and a["config_hash"] == b["config_hash"]


statuses = st.lists(st.sampled_from(["pass", "fail", "reported"]), max_size=12)


@given(statuses)
def test_exit_code_contract(sts):
    report = VerificationReport("x", "h", [CheckResult(f"c{i}", s, "a", 0, 0) for i, s in enumerate(sts)])
    assert report.exit_code == (1 if "fail" in sts else 0)
    text = emit_report(report, "text")
    assert text.rstrip().endswith(f"exit {report.exit_code}")


@pytest.mark.parametrize("check_id", INJECTABLE)
def test_injected_failure_surfaces(check_id):
    cfg = config_from_mapping({"inject": [check_id]})
    report = run_suite(check_id.split(".")[0], cfg)
    assert report.status(check_id) == "fail"
    assert report.exit_code == 1


def test_text_report_includes_calculus_tables():
    text = emit_report(run_suite("calculus"), "text")
    assert "omega^1 a = " in text
    assert "d a = " in text


# -- command line

def test_cli_verify_and_exit_codes(tmp_path, capsys):
    assert main(["verify", "ybe", "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert [c["id"] for c in out["checks"]] == ["ybe.cqybe", "ybe.braided"]
    bad = write(tmp_path, "step_budget = -5\n")
    assert main(["verify", "ybe", "--config", str(bad)]) == 2
    assert "step_budget" in capsys.readouterr().err
    inj = write(tmp_path, 'inject = ["hopf.antipode"]\n')
    assert main(["verify", "hopf", "--config", str(inj)]) == 1


def test_cli_overrides_and_dump(capsys):
    assert main(["verify", "ybe", "--colour", "lambda=0", "--colour", "mu=0", "--q", "16"]) == 0
    assert main(["dump", "relations", "--colour", "lambda=0", "--colour", "mu=0"]) == 0
    out = capsys.readouterr().out
    assert "RTT relations" in out and "quantum determinants" in out
    assert main(["verify", "ybe", "--q", "3"]) == 2
