"""
Quantum-Torus Orbifold Calculator – CLI & Report Tests
══════════════════════════════════════════════════════
Exit codes, record layout and determinism of the emitted report.

Run: python -m pytest tests/test_cli.py -v
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import json

import pytest

from analytics.report import emit_report, summary_lines
from config.run_config import RunConfig
from config.settings import EXIT_MATCH, EXIT_USAGE
from main import run_command


# ─── helpers ────────────────────────────
def _minimal_record():
    return {
        "group": "Z2",
        "generator": [[-1, 0], [0, -1]],
        "theta_mode": "symbolic",
        "sectors": [{
            "power": 1, "degree": 2, "window_dims": [[3, 4]], "stable": True,
            "raw_dim": 4, "invariant_dim": 4, "representatives": [], "sector": [[-1, 0], [0, -1]],
            "labels": [], "fixed_points": 4, "certificate": None,
        }],
        "totals": {"hh2": 5},
        "paper_comparison": {"expected": {"hh2": 5}, "computed": {"hh2": 5}, "match": {"hh2": True}, "stable": True},
        "poisson": {},
        "witness_digests": [],
    }


# ═══════════════════════════════════════════
# Usage errors
# ═══════════════════════════════════════════

def test_unknown_group_is_usage_error():
    assert run_command(["--group", "z9"]) == EXIT_USAGE


def test_unknown_flag_is_usage_error():
    assert run_command(["--group", "z2", "--colour"]) == EXIT_USAGE


def test_small_window_is_usage_error():
    assert run_command(["--group", "z2", "--window", "2"]) == EXIT_USAGE


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(group="Z5").validate()
    with pytest.raises(ValueError):
        RunConfig(group="Z2", degrees=(3,)).validate()
    with pytest.raises(ValueError):
        RunConfig(group="Z2", theta="pi").validate()
    config = RunConfig(group="Z2", theta="golden").validate()
    assert config.theta_mode == "symbolic+numeric(golden)"
    assert 0 < config.theta_value < 1


# ═══════════════════════════════════════════
# Full run
# ═══════════════════════════════════════════

def test_json_report_is_deterministic(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["--group", "z2", "--degree", "1", "--window", "3", "--format", "json"]
    assert run_command(argv + ["--out", str(first)]) == EXIT_MATCH
    assert run_command(argv + ["--out", str(second)]) == EXIT_MATCH
    assert first.read_bytes() == second.read_bytes()

    record = json.loads(first.read_text(encoding="utf-8"))
    assert list(record) == [
        "group", "generator", "theta_mode", "sectors", "totals",
        "paper_comparison", "poisson", "witness_digests",
    ]
    assert record["totals"] == {"hh1": 0}
    assert record["paper_comparison"]["match"] == {"hh1": True}
    assert [s["raw_dim"] for s in record["sectors"]] == [2, 0]


def test_unwritable_output_is_internal_error(tmp_path):
    target = tmp_path / "missing" / "report.json"
    code = run_command(["--group", "z2", "--degree", "0", "--window", "3", "--out", str(target)])
    assert code == 1


# ═══════════════════════════════════════════
# Renderers
# ═══════════════════════════════════════════

def test_empty_record_rejected():
    record = _minimal_record()
    record["sectors"] = []
    with pytest.raises(ValueError):
        emit_report(record, "json")


def test_unknown_format_rejected():
    with pytest.raises(ValueError):
        emit_report(_minimal_record(), "xml")


def test_text_report():
    text = emit_report(_minimal_record(), "text")
    assert "Z2" in text
    assert "HH2" in text
    assert "✅" in text


def test_csv_report(tmp_path):
    path = tmp_path / "z2.csv"
    text = emit_report(_minimal_record(), "csv", str(path))
    assert path.read_text(encoding="utf-8") == text
    lines = text.splitlines()
    assert lines[0] == "group,power,degree,raw_dim,invariant_dim,stable,window_dims"
    assert lines[1] == "Z2,1,2,4,4,True,3:4"
    assert "Z2,hh2,5,5,True" in lines


def test_summary_lines():
    (line,) = summary_lines([_minimal_record()])
    assert "hh2=5/5" in line
