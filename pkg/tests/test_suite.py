"""Tests for the suite harness — config parsing, trial execution, reports and replay."""

import io
import json
from unittest.mock import patch

import pytest

from config.settings import get_settings
from src.errors import ConfigError, InvariantError
from src.harness import (
    CHECKS,
    SuiteConfig,
    SuiteEntry,
    aggregate_frame,
    load_suite_config,
    parse_suite_config,
    records_frame,
    report_lines,
    run_suite,
    run_trial,
    strip_timing,
    write_report,
)

ORACLE_CONFIG = {
    "seed": 5,
    "suites": [{"name": "oracle", "check": "cograph-oracle", "trials": 1, "params": {"n": 4}}],
}

SYMMETRY_CONFIG = {
    "seed": 9,
    "suites": [{
        "name": "sym",
        "check": "strong-symmetry",
        "trials": 4,
        "generator": {"kind": "gnp", "params": {"n": [4, 6], "p": [0.2, 0.8]}},
        "params": {"k": [2, 3]},
    }],
}


class TestParseConfig:
    def test_defaults(self):
        config = parse_suite_config({"suites": [{"name": "c", "check": "constants"}]})
        assert config.seed == get_settings().SEED
        assert config.suites[0].trials == 1
        assert config.suites[0].generator is None

    def test_empty_file(self):
        assert parse_suite_config(None).suites == []

    @pytest.mark.parametrize("suite,location", [
        ({"name": "x", "check": "nope"}, "suites[0].check"),
        ({"name": "x", "check": "constants", "trials": -1}, "suites[0].trials"),
        ({"name": "x", "check": "keyob", "generator": {"kind": "tree"}},
         "suites[0].generator.kind"),
        ({"name": "x", "check": "keyob", "generator": "gnp"}, "suites[0].generator"),
        ({"check": "constants"}, "suites[0]"),
    ])
    def test_errors_carry_location(self, suite, location):
        with pytest.raises(ConfigError) as exc:
            parse_suite_config({"suites": [suite]})
        assert exc.value.location == location

    def test_bad_seed(self):
        with pytest.raises(ConfigError) as exc:
            parse_suite_config({"seed": -1, "suites": []})
        assert exc.value.location == "seed"


class TestLoadConfig:
    def test_shipped_suites_parse(self):
        config = load_suite_config(get_settings().DEFAULT_SUITE_FILE)
        names = [entry.name for entry in config.suites]
        assert len(names) == len(set(names))
        assert {entry.check for entry in config.suites} == set(CHECKS)

    def test_yaml_syntax_error_location(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("seed: 1\nsuites:\n  - name: [unclosed\n")
        with pytest.raises(ConfigError) as exc:
            load_suite_config(path)
        file_part, line, column = exc.value.location.rsplit(":", 2)
        assert file_part == str(path)
        assert int(line) >= 3 and int(column) >= 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError) as exc:
            load_suite_config(tmp_path / "missing.yaml")
        assert exc.value.location.endswith("missing.yaml")


class TestRunTrial:
    def test_oracle_trial_passes(self):
        entry = SuiteEntry(name="oracle", check="cograph-oracle", trials=1, params={"n": 4})
        record = run_trial(entry, 5, 0, 0)
        assert record.status == "pass"
        # 1 + 2 + 8 + 64 labelled graphs on up to four vertices
        assert record.cases == 75
        assert record.details["sizes"][4] == {"graphs": 64, "cographs": 52}

    def test_library_error_is_a_failure(self):
        entry = SuiteEntry(name="x", check="constants", trials=1)
        with patch("src.harness.suite.run_check", side_effect=InvariantError("broken chain")):
            record = run_trial(entry, 1, 0, 0)
        assert record.status == "fail"
        assert record.error == "InvariantError: broken chain"
        assert record.failed

    def test_unexpected_error_is_an_error(self):
        entry = SuiteEntry(name="x", check="constants", trials=1)
        with patch("src.harness.suite.run_check", side_effect=RuntimeError("boom")):
            record = run_trial(entry, 1, 0, 0)
        assert record.status == "error"
        assert record.error == "RuntimeError: boom"

    def test_check_without_generator(self):
        entry = SuiteEntry(name="h", check="homogeneous-bound", trials=1)
        record = run_trial(entry, 1, 0, 0)
        assert record.status == "fail"
        assert "needs a generator" in record.error

    def test_planted_comb_is_extracted(self):
        entry = SuiteEntry(
            name="planted", check="lemma-trace", trials=1,
            generator={"kind": "planted-comb",
                       "params": {"t": 6, "tooth_size": 2, "noise": 0.1}},
            params={"require_comb": True},
        )
        record = run_trial(entry, 3, 0, 0)
        assert record.status == "pass"
        assert record.details["outcome"] == "comb"
        assert record.details["comb_t"] == 6
        assert record.generator["kind"] == "planted-comb"


class TestRunSuite:
    def test_zero_trials(self):
        report = run_suite(parse_suite_config(ORACLE_CONFIG), trials=0)
        assert report.records == []
        assert report.exit_code == 0
        assert report.aggregate()["trials"] == 0

    def test_aggregate(self):
        report = run_suite(parse_suite_config(ORACLE_CONFIG), max_workers=1)
        agg = report.aggregate()
        assert agg["suites"]["oracle"]["pass"] == 1
        assert agg["suites"]["oracle"]["cases"] == 75
        assert agg["replay"] == []
        assert report.exit_code == 0

    def test_failures_listed_for_replay(self):
        config = parse_suite_config({"seed": 2, "suites": [
            {"name": "h", "check": "homogeneous-bound", "trials": 2},
        ]})
        report = run_suite(config)
        assert report.exit_code == 1
        assert report.aggregate()["replay"] == [
            {"suite": "h", "seed": 2, "stream": 0, "index": 0},
            {"suite": "h", "seed": 2, "stream": 0, "index": 1},
        ]

    def test_replay_is_deterministic(self):
        config = parse_suite_config(SYMMETRY_CONFIG)
        first = run_suite(config, max_workers=1)
        second = run_suite(config, max_workers=3)
        assert [strip_timing(r.to_dict()) for r in first.records] == \
            [strip_timing(r.to_dict()) for r in second.records]
        assert [r.index for r in second.records] == [0, 1, 2, 3]

    def test_seed_override(self):
        report = run_suite(parse_suite_config(ORACLE_CONFIG), seed=77)
        assert report.seed == 77
        assert report.records[0].seed == 77

    def test_shipped_keyob_suite_never_skips(self):
        shipped = load_suite_config(get_settings().DEFAULT_SUITE_FILE)
        (entry,) = [e for e in shipped.suites if e.check == "keyob"]
        report = run_suite(SuiteConfig(seed=shipped.seed, suites=[entry]), trials=25)
        counts = report.aggregate()["suites"][entry.name]
        assert counts["skip"] == 0
        assert counts["pass"] == 25


class TestReports:
    def test_json_lines(self):
        report = run_suite(parse_suite_config(ORACLE_CONFIG))
        lines = report_lines(report)
        assert len(lines) == 2
        assert json.loads(lines[0])["type"] == "trial"
        assert json.loads(lines[-1])["type"] == "aggregate"

    def test_write_json_to_stream(self):
        report = run_suite(parse_suite_config(ORACLE_CONFIG))
        buf = io.StringIO()
        write_report(report, None, "json", stream=buf)
        assert buf.getvalue().count("\n") == 2

    def test_write_csv_file(self, tmp_path):
        report = run_suite(parse_suite_config(SYMMETRY_CONFIG))
        out = tmp_path / "report.csv"
        write_report(report, out, "csv")
        header = out.read_text().splitlines()[0].split(",")
        assert "status" in header and "suite" in header
        assert "type" not in header

    def test_unknown_format(self):
        report = run_suite(parse_suite_config(ORACLE_CONFIG), trials=0)
        with pytest.raises(ValueError):
            write_report(report, None, "xml")

    def test_frames(self):
        report = run_suite(parse_suite_config(SYMMETRY_CONFIG))
        df = records_frame(report)
        assert len(df) == 4
        agg = aggregate_frame(report)
        row = agg.iloc[0]
        assert row["suite"] == "sym"
        assert row["trials"] == 4
        assert row["category"] == "Freeness"
        assert row["pass"] + row["fail"] + row["skip"] + row["error"] == 4

    def test_empty_frames(self):
        report = run_suite(parse_suite_config(ORACLE_CONFIG), trials=0)
        assert records_frame(report).empty
        assert aggregate_frame(report).empty
