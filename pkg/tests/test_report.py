import csv
import json
import os

import numpy as np

from snakemin import VerdictReport
from snakemin.checks import CheckResult
from snakemin.report import (render_figure, write_run, write_samples_csv,
                             write_samples_json)


def _result():
    rep = VerdictReport(check_id="demo-check", statistic=0.01, threshold=0.05,
                        n=3, master_seed=1, passed=True, p_value=0.7)
    return CheckResult(rep, {"alpha": np.array([1.0, 2.0, float("nan")]),
                             "beta": np.array([0.5, 1.5])})


def test_csv_pads_unequal_columns(tmp_path):
    path = str(tmp_path / "s.csv")
    write_samples_csv(_result().samples, path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["alpha", "beta"]
    assert rows[1] == ["1", "0.5"]
    assert rows[3] == ["", ""]  # nan and missing both blank
    assert len(rows) == 4


def test_json_samples(tmp_path):
    path = str(tmp_path / "s.json")
    write_samples_json(_result().samples, path)
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    assert data["alpha"][:2] == [1.0, 2.0]
    assert data["alpha"][2] is None
    assert data["beta"] == [0.5, 1.5]


def test_figure_renders(tmp_path):
    path = str(tmp_path / "f.png")
    render_figure(_result(), path)
    assert os.path.getsize(path) > 1000


def test_write_run_creates_everything(tmp_path):
    out = str(tmp_path / "run")
    paths = write_run([_result()], {"master_seed": 1}, out, fmt="csv")
    names = {os.path.basename(p) for p in paths}
    assert {"verdicts.jsonl", "config.json", "demo-check.csv",
            "demo-check.png"} <= names
    with open(os.path.join(out, "verdicts.jsonl"), encoding="utf-8") as fh:
        line = json.loads(fh.readline())
    assert line["pass"] is True
    assert line["check_id"] == "demo-check"
