import csv
import json
import math

import pytest

from amquad.cli import main
from amquad.errors import ConfigError
from amquad.harness import (
    CSV_COLUMNS,
    CampaignConfig,
    emit_report,
    evaluate_row,
    load_config,
    render_csv,
    run_campaign,
)
from amquad.funcmodel import ParamSet, get_function

SMALL = {
    "functions": ["pow2", "exp", "sin"],
    "lambda": ["1/3", 1],
    "mu": ["1/2"],
    "alpha": [1, "1/2"],
    "m": [1],
    "q": [1, 2],
}


def write(tmp_path, data, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


def test_config_parsing_fractions(tmp_path):
    cfg = load_config(write(tmp_path, SMALL))
    assert cfg.lam == (1 / 3, 1.0)
    assert cfg.alpha == (1.0, 0.5)
    assert cfg.format == "csv" and cfg.tol > 0


@pytest.mark.parametrize(
    "data, message",
    [
        ({**SMALL, "functions": []}, "no functions selected"),
        ({**SMALL, "mu": []}, "non-empty"),
        ({**SMALL, "mu": ["x"]}, "cannot parse"),
        ({**SMALL, "format": "xml"}, "format"),
        ({**SMALL, "bogus": 1}, "unknown config keys"),
        ({**SMALL, "functions": ["nope"]}, "unknown function"),
    ],
)
def test_config_errors(tmp_path, data, message):
    with pytest.raises(ConfigError, match=message):
        load_config(write(tmp_path, data))


def test_missing_and_malformed_config(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(bad)


def test_invalid_grid_points_are_skipped(tmp_path, caplog):
    cfg = CampaignConfig.from_mapping({**SMALL, "functions": ["exp"], "m": [0, 1]})
    with caplog.at_level("INFO", logger="amquad.harness"):
        s = run_campaign(cfg, write=False)
    assert s.n_skipped == 8
    assert s.n_rows == 8
    assert "m in (0,1] fails" in s.skip_reasons[0]
    assert any("skipped" in r.message for r in caplog.records)


def test_campaign_summary_and_order():
    s = run_campaign(CampaignConfig.from_mapping(SMALL), write=False)
    assert s.n_rows == 3 * 2 * 2 * 2
    assert [r.function for r in s.rows[:8]] == ["pow2"] * 8
    assert [(r.params.lam, r.params.alpha, r.params.q) for r in s.rows[:3]] == [
        (1 / 3, 1.0, 1.0), (1 / 3, 1.0, 2.0), (1 / 3, 0.5, 1.0)
    ]
    assert s.ok and s.n_violations == 0
    assert s.n_errors == 0
    assert s.as_dict()["rows"] == 24


def test_row_error_is_recorded_not_raised():
    f = get_function("exp", domain_upper=0.5)
    cfg = CampaignConfig.from_mapping(SMALL)
    row = evaluate_row(f, ParamSet(0, 1, 0.5, 0.5, 1, 1), cfg)
    assert row.error.startswith("DomainError")
    assert not row.violated


def test_ratios_within_unit_interval_for_certified_rows():
    s = run_campaign(CampaignConfig.from_mapping({**SMALL, "alpha": [1], "q": [1, 2, 3]}), write=False)
    for r in s.rows:
        if r.cert_passed:
            for v in (r.ratio_t22, r.ratio_t26):
                assert v is None or 0 <= v <= 1
        if r.cert_t24_passed:
            assert 0 <= r.ratio_t24 <= 1


def test_one_row_csv(tmp_path):
    s = run_campaign(CampaignConfig.from_mapping({**SMALL, "functions": ["exp"], "lambda": [1], "alpha": [1], "q": [1]}), write=False)
    out = tmp_path / "r.csv"
    emit_report(s.rows, "csv", out)
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    assert tuple(lines[0].split(",")) == CSV_COLUMNS
    rec = next(csv.DictReader(lines))
    assert rec["bound_t24"] == ""  # q = 1
    assert float(rec["true_error"]) == s.rows[0].true_error


def test_json_round_trip(tmp_path):
    s = run_campaign(CampaignConfig.from_mapping(SMALL), write=False)
    out = tmp_path / "r.json"
    emit_report(s.rows, "json", out)
    data = json.loads(out.read_text())
    assert len(data) == len(s.rows)
    for d, r in zip(data, s.rows):
        assert d["true_error"] == r.true_error
        assert d["bound_t22"] == r.bound_t22
        assert d["lambda"] == r.params.lam


def test_csv_floats_round_trip():
    s = run_campaign(CampaignConfig.from_mapping(SMALL), write=False)
    recs = list(csv.DictReader(render_csv(s.rows).splitlines()))
    for rec, r in zip(recs, s.rows):
        assert float(rec["bound_t22"]) == r.bound_t22
        assert float(rec["identity_residual"]) == r.identity_residual


def test_random_draws_are_seeded():
    cfg = CampaignConfig.from_mapping({**SMALL, "functions": ["exp"], "random_draws": 3, "seed": 7})
    a = run_campaign(cfg, write=False)
    b = run_campaign(cfg, write=False)
    assert render_csv(a.rows) == render_csv(b.rows)
    assert a.n_rows == 8 + 3


# ---- CLI ------------------------------------------------------------------


def test_cli_verify(tmp_path, capsys):
    cfg = write(tmp_path, {**SMALL, "out": str(tmp_path / "out.csv")})
    assert main(["verify", "--config", str(cfg)]) == 0
    assert json.loads(capsys.readouterr().out)["bound_violations"] == 0
    assert (tmp_path / "out.csv").exists()


def test_cli_verify_missing_config(capsys):
    assert main(["verify", "--config", "missing.json"]) == 2
    assert "not found" in capsys.readouterr().err


def test_cli_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["identity", "--lambda", "1/3"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["coeffs", "--lambda", "one", "--mu", "1/2"])
    assert info.value.code == 2


def test_cli_identity(capsys):
    rc = main(["identity", "--f", "exp", "--a", "0", "--b", "1", "--lambda", "0.3", "--mu", "0.6", "--m", "0.8"])
    out = capsys.readouterr().out
    assert rc == 0
    assert float(out.split("residual =")[1]) <= 1e-8


def test_cli_identity_invalid_params(capsys):
    assert main(["identity", "--f", "exp", "--lambda", "2", "--mu", "0.5"]) == 2
    assert "lambda in [0,1] fails" in capsys.readouterr().err


def test_cli_coeffs_prints_rational(capsys):
    assert main(["coeffs", "--lambda", "1/3", "--mu", "1/2", "--alpha", "1", "--p", "2"]) == 0
    out = capsys.readouterr().out
    line = next(ln for ln in out.splitlines() if ln.startswith("delta3"))
    assert "29/1296" in line
    closed, oracle, diff = float(line.split()[1]), float(line.split()[3]), float(line.split()[4])
    assert abs(closed - 29 / 1296) < 1e-15 and abs(oracle - 29 / 1296) < 1e-13 and diff < 1e-13
    assert "theta1(p=2)" in out


def test_cli_bound_json(capsys):
    assert main(["bound", "--f", "pow4", "--lambda", "1/3", "--mu", "1/2", "--q", "2"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["bounds"]["simpson_classical"] == pytest.approx(1 / 120)
    assert math.isclose(rep["true_error"], 1 / 120, rel_tol=1e-10)
