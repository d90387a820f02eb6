"""Sweep configuration, scenario outputs, CLI contract and determinism."""

import json
import math
import subprocess
import sys

import pytest

from fringelab import cli
from fringelab.errors import ConfigError
from fringelab.sensitivity import sigma_min_thermal, yurke_highgain
from fringelab.analytic import yurke_fringe
from fringelab.sweep import (
    COLUMNS,
    SweepConfig,
    parse_config,
    records_to_csv,
    records_to_json,
    run_sweep,
)
from fringelab.verify import run_verify

from helpers import rel_dev


def _cli(*args, **kwargs):
    return subprocess.run([sys.executable, "-m", "fringelab", *args],
                          capture_output=True, text=True, **kwargs)


class TestParseConfig:
    def test_unknown_top_level_key(self):
        with pytest.raises(ConfigError, match="unknown config keys"):
            parse_config({"scenario": "compare", "grid": {}})

    def test_unknown_axis(self):
        with pytest.raises(ConfigError, match="axes.q"):
            parse_config({"scenario": "custom", "axes": {"q": [1]}})

    def test_empty_axis(self):
        with pytest.raises(ConfigError, match="nonempty"):
            parse_config({"scenario": "custom", "axes": {"n": []}})

    def test_log_axis_requires_positive_min(self):
        with pytest.raises(ConfigError, match="log spacing"):
            parse_config({"scenario": "custom",
                          "axes": {"n": {"min": 0, "max": 1, "count": 5, "spacing": "log"}}})

    def test_range_expansion(self):
        cfg = parse_config({"scenario": "custom",
                            "axes": {"n": {"min": 1, "max": 100, "count": 3, "spacing": "log"}}})
        assert cfg.axes["n"] == pytest.approx([1.0, 10.0, 100.0])

    def test_axis_and_fixed_overlap(self):
        with pytest.raises(ConfigError, match="both axes and fixed"):
            parse_config({"scenario": "custom", "axes": {"n": [1]}, "fixed": {"n": 2}})

    def test_scenario_required_for_sweep(self):
        with pytest.raises(ConfigError, match="scenario is required"):
            parse_config({})

    def test_bad_scenario(self):
        with pytest.raises(ConfigError, match="scenario"):
            parse_config({"scenario": "mystery"})

    def test_count_validation(self):
        with pytest.raises(ConfigError, match="count"):
            parse_config({"count": 0}, "verify")

    def test_verify_is_json_only(self):
        with pytest.raises(ConfigError, match="JSON only"):
            parse_config({"format": "csv"}, "verify")

    def test_bad_variant(self):
        with pytest.raises(ConfigError, match="variant"):
            parse_config({"scenario": "custom", "fixed": {"variant": "zeilinger"}})

    def test_nonfinite_fixed_value(self):
        with pytest.raises(ConfigError, match="fixed.n"):
            parse_config({"scenario": "custom", "fixed": {"n": float("nan")}})


class TestCustomScenario:
    def test_yurke_point(self):
        cfg = parse_config({"scenario": "custom",
                            "fixed": {"variant": "yurke", "n": 1, "t_s": 0.8,
                                      "t_i": 0.7, "phi": 2.0}})
        (row,) = run_sweep(cfg)
        fr = yurke_fringe(1.0, 1.0, 0.8, 0.7)
        assert row["n_s"] == pytest.approx(fr.mean(2.0), rel=1e-14)
        assert row["sigma2_min"] == pytest.approx(0.5311771450913226, rel=1e-12)
        assert row["fisher_norm"] == pytest.approx(row["fisher"], rel=1e-14)

    def test_mandel_diff_grid(self):
        cfg = parse_config({"scenario": "custom",
                            "axes": {"phi": [0.5, 1.0]},
                            "fixed": {"variant": "mandel-diff", "n": 2, "t_s": 0.9,
                                      "t_i": 0.8}})
        rows = run_sweep(cfg)
        assert len(rows) == 2
        for row in rows:
            assert row["phi_min"] == math.pi / 2
            assert row["n_plus"] == pytest.approx(2 * (1 + 0.9 + 2 * 0.8), rel=1e-13)

    def test_hybrid_requires_rho(self):
        cfg = parse_config({"scenario": "custom", "fixed": {"variant": "hybrid", "n": 4}})
        with pytest.raises(ConfigError, match="rho"):
            run_sweep(cfg)

    def test_variant_required(self):
        cfg = parse_config({"scenario": "custom", "fixed": {"n": 4}})
        with pytest.raises(ConfigError, match="variant"):
            run_sweep(cfg)

    def test_unequal_gains(self):
        cfg = parse_config({"scenario": "custom",
                            "fixed": {"variant": "yurke", "v_a": 2.0, "v_b": 5.0,
                                      "phi": 1.0}})
        (row,) = run_sweep(cfg)
        assert row["n"] is None
        assert row["v_a"] == 2.0 and row["v_b"] == 5.0
        assert row["fisher_norm"] is None  # no single photon budget


class TestNamedScenarios:
    def test_hybrid_map_small(self):
        cfg = parse_config({"scenario": "hybrid-map",
                            "axes": {"rho": [0.0, 1.0],
                                     "phi": {"min": 0.0, "max": 2 * math.pi, "count": 25}},
                            "fixed": {"n": 10}})
        rows = run_sweep(cfg)
        grid = [r for r in rows if r["phi"] is not None]
        margin = [r for r in rows if r["phi_min"] is not None]
        assert len(grid) == 50 and len(margin) == 2
        # Dark-fringe and end-point grid cells are sentinel-flagged, not faked.
        sentinels = [r for r in grid if r["sentinel"]]
        assert sentinels and all(r["sigma2"] is None for r in sentinels)
        assert margin[0]["sigma2_min"] == pytest.approx(1.0 / 44.0, rel=1e-6)
        assert margin[1]["sigma2_min"] == pytest.approx(3.0 / 11.0, rel=1e-6)

    def test_hybrid_map_default_resolution(self):
        cfg = parse_config({"scenario": "hybrid-map"})
        rows = run_sweep(cfg)
        grid = [r for r in rows if r["phi"] is not None]
        margin = [r for r in rows if r["phi"] is None]
        assert len(grid) == 101 * 361
        assert len(margin) == 101

    def test_fisher_vs_n_structure(self):
        cfg = parse_config({"scenario": "fisher-vs-n", "axes": {"n": [1.0, 10.0]}})
        rows = run_sweep(cfg)
        # per (t_i in defaults {0.8, 0.7}) x (n): one optimal row + three fixed phases
        assert len(rows) == 2 * 2 * 4
        opt = [r for r in rows if r["phi"] is None]
        assert all(r["sigma2_min"] is not None for r in opt)
        fixed = [r for r in rows if r["phi"] is not None]
        assert {round(r["phi"] / math.pi, 2) for r in fixed} == {0.9, 0.95, 0.97}

    def test_scaling_reference_rows(self):
        cfg = parse_config({"scenario": "scaling", "axes": {"n": [10.0, 100.0]}})
        rows = run_sweep(cfg)
        tags = {r["scenario"] for r in rows}
        assert tags == {"scaling", "scaling:ref-shot", "scaling:ref-heisenberg",
                        "scaling:ref-constant"}
        hg = yurke_highgain(0.9, 0.85)
        const = [r for r in rows if r["scenario"] == "scaling:ref-constant"]
        assert all(r["t_i"] == 0.85 for r in const)  # balanced case has no floor
        assert all(r["sigma2"] == hg.constant_term for r in const)
        shot = [r for r in rows if r["scenario"] == "scaling:ref-shot" and r["t_i"] == 0.85]
        assert shot[0]["sigma2"] == pytest.approx(hg.inverse_n_term / 10.0, rel=1e-14)

    def test_compare_series(self):
        cfg = parse_config({"scenario": "compare", "axes": {"n": [100.0]}})
        rows = run_sweep(cfg)
        by_tag = {r["scenario"]: r for r in rows}
        assert set(by_tag) == {"compare:yurke", "compare:mandel",
                               "compare:yurke-balanced", "compare:ref-floor"}
        assert by_tag["compare:mandel"]["phi"] == math.pi / 2
        assert by_tag["compare:ref-floor"]["sigma2"] == pytest.approx(0.00446428571, rel=1e-8)
        exact = sigma_min_thermal(yurke_fringe(100.0, 100.0, 0.8, 0.7)).variance
        assert by_tag["compare:yurke"]["sigma2_min"] == pytest.approx(exact, rel=1e-13)

    def test_fisher_surface_small(self):
        cfg = parse_config({"scenario": "fisher-surface",
                            "axes": {"n": [1.0, 10.0], "t_i": [0.7, 0.8, 0.9]}})
        rows = run_sweep(cfg)
        assert len(rows) == 6
        assert all(r["fisher_norm"] is not None and r["fisher_norm"] >= 0.0 for r in rows)


class TestEmission:
    def test_csv_schema_and_values(self):
        cfg = parse_config({"scenario": "custom",
                            "fixed": {"variant": "yurke", "n": 1, "phi": 2.0}})
        text = records_to_csv(run_sweep(cfg))
        lines = text.strip().split("\n")
        assert lines[0] == ",".join(COLUMNS)
        assert len(lines) == 2
        cells = lines[1].split(",")
        assert cells[0] == "custom"
        assert cells[COLUMNS.index("v_a")] == ""  # unused stays empty

    def test_csv_round_trip_precision(self):
        cfg = parse_config({"scenario": "custom",
                            "fixed": {"variant": "yurke", "n": 1, "t_s": 0.8,
                                      "t_i": 0.7, "phi": 2.0}})
        rows = run_sweep(cfg)
        text = records_to_csv(rows)
        cell = text.strip().split("\n")[1].split(",")[COLUMNS.index("sigma2_min")]
        assert float(cell) == rows[0]["sigma2_min"]

    def test_json_layout(self):
        cfg = parse_config({"scenario": "custom", "format": "json", "seed": 7,
                            "fixed": {"variant": "yurke", "n": 1, "phi": 1.0}})
        doc = json.loads(records_to_json(run_sweep(cfg), cfg))
        assert doc["metadata"]["tool"] == "fringelab"
        assert doc["metadata"]["seed"] == 7
        assert doc["metadata"]["config"]["scenario"] == "custom"
        assert set(doc["records"][0]) == set(COLUMNS)

    def test_every_emitted_sigma_positive(self):
        cfg = parse_config({"scenario": "hybrid-map",
                            "axes": {"rho": [0.0, 0.5, 1.0],
                                     "phi": {"min": 0.0, "max": 2 * math.pi, "count": 21}}})
        for row in run_sweep(cfg):
            if not row["sentinel"]:
                for key in ("sigma2", "sigma2_min"):
                    if row[key] is not None:
                        assert row[key] > 0.0
                if row["fisher_norm"] is not None:
                    assert row["fisher_norm"] >= 0.0


class TestDeterminism:
    def test_sweep_records_identical(self):
        cfg = parse_config({"scenario": "hybrid-map",
                            "axes": {"rho": [0.0, 0.3, 1.0],
                                     "phi": {"min": 0.0, "max": 2 * math.pi, "count": 31}}})
        assert records_to_csv(run_sweep(cfg)) == records_to_csv(run_sweep(cfg))

    def test_verify_reports_identical(self):
        assert run_verify(3, 40).to_json() == run_verify(3, 40).to_json()

    def test_cli_sweep_byte_identical(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "scenario": "compare",
            "axes": {"n": {"min": 1, "max": 1000, "count": 7, "spacing": "log"}},
        }))
        outs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            res = _cli("sweep", "--config", str(cfg), "--out", str(out))
            assert res.returncode == 0, res.stderr
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_cli_verify_byte_identical(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"count": 25}))
        blobs = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            res = _cli("verify", "--config", str(cfg), "--seed", "9", "--out", str(out))
            assert res.returncode == 0, res.stderr
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1]


class TestVerify:
    def test_seeded_run_passes(self):
        report = run_verify(1, 150)
        assert report.ok
        oracle_classes = ("yurke_mean", "yurke_variance", "mandel_mean",
                          "mandel_variance", "mandel_sum_diff", "mandel_diff_variance",
                          "hybrid_mean", "hybrid_diff_variance", "thermal_law")
        for name in oracle_classes:
            assert report.checks[name].max_deviation < 1e-10

    def test_count_zero_rejected(self):
        with pytest.raises(ConfigError):
            run_verify(1, 0)

    def test_failure_reported_with_spec(self, monkeypatch):
        report = run_verify(5, 10)
        report.failure = {"check": "yurke_mean", "deviation": 1.0, "spec": {"v_a": 1}}
        assert not report.ok
        doc = json.loads(report.to_json())
        assert doc["pass"] is False
        assert doc["failure"]["check"] == "yurke_mean"


class TestCliContract:
    def test_validation_error_exit_code(self, tmp_path):
        cfg = tmp_path / "bad.json"
        cfg.write_text('{"scenario": "compare", "bogus": 1}')
        res = _cli("sweep", "--config", str(cfg))
        assert res.returncode == 1
        assert "bogus" in res.stderr

    def test_invalid_json_diagnostics(self, tmp_path):
        cfg = tmp_path / "broken.json"
        cfg.write_text('{"scenario": ')
        res = _cli("sweep", "--config", str(cfg))
        assert res.returncode == 1
        assert "broken.json:1:" in res.stderr

    def test_io_error_exit_code(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"scenario": "compare", "axes": {"n": [10.0]}}))
        res = _cli("sweep", "--config", str(cfg), "--out",
                   str(tmp_path / "missing" / "deep" / "out.csv"))
        assert res.returncode == 3

    def test_fringe_requires_phi(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"fixed": {"variant": "yurke", "n": 1}}))
        res = _cli("fringe", "--config", str(cfg))
        assert res.returncode == 1
        assert "phi" in res.stderr

    def test_fringe_masks_sensitivity_columns(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"fixed": {"variant": "yurke", "n": 1, "phi": 2.0}}))
        res = _cli("fringe", "--config", str(cfg))
        assert res.returncode == 0
        row = res.stdout.strip().split("\n")[1].split(",")
        assert row[COLUMNS.index("n_s")] != ""
        assert row[COLUMNS.index("sigma2_min")] == ""

    def test_sensitivity_masks_fringe_columns(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"fixed": {"variant": "yurke", "n": 1, "phi": 2.0}}))
        res = _cli("sensitivity", "--config", str(cfg))
        row = res.stdout.strip().split("\n")[1].split(",")
        assert row[COLUMNS.index("sigma2_min")] != ""
        assert row[COLUMNS.index("n_s")] == ""

    def test_verify_failure_exit_code(self, monkeypatch, capsys):
        report = run_verify(5, 5)
        report.failure = {"check": "yurke_mean", "deviation": 1.0, "spec": {}}
        monkeypatch.setattr(cli, "run_verify", lambda seed, count: report)
        assert cli.main(["verify"]) == 2
        capsys.readouterr()

    def test_scenario_override_flag(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"axes": {"n": [10.0]}}))
        res = _cli("sweep", "--config", str(cfg), "--scenario", "compare")
        assert res.returncode == 0
        assert "compare:mandel" in res.stdout
