from __future__ import annotations

import importlib.util
import json
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    module = importlib.util.module_from_spec(spec)
    sys.modules[name] = module
    spec.loader.exec_module(module)
    return module


def test_reproduce_examples(tmp_path, capsys):
    out = tmp_path / "rows.json"
    assert load("reproduce_examples").main(["--json", str(out)]) == 0
    rows = json.loads(out.read_text())
    statuses = {r["status"] for r in rows}
    assert "NOT CONTAINED" not in " ".join(statuses)
    assert sum(r["status"] == "match" for r in rows) == 23
    assert sum(r["status"] == "derived" for r in rows) == 6


def test_correction_table(tmp_path, capsys):
    out = tmp_path / "c.csv"
    assert load("correction_table").main(["--n", "3", "12", "--csv", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 11
    assert lines[7].startswith("9,89/9,166/9")


@pytest.mark.parametrize("sweep", ["exhaustive"])
def test_run_verification_single_sweep(tmp_path, capsys, sweep):
    out = tmp_path / "v.json"
    assert load("run_verification").main(["--sweeps", sweep, "--workers", "1", "--json", str(out)]) == 0
    assert json.loads(out.read_text())[sweep]["passed"]
