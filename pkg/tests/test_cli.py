import csv
import json
import os

import pytest

from snakemin.cli import RunConfig, main


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(n=0).validate()
    with pytest.raises(ValueError):
        RunConfig(dt=-1.0).validate()
    with pytest.raises(ValueError):
        RunConfig(format="xml").validate()
    RunConfig().validate()


def test_check_command_writes_outputs(tmp_path):
    out = str(tmp_path / "run")
    code = main(["check", "laplace-bessel2", "--n", "400", "--out", out])
    assert code == 0
    assert os.path.exists(os.path.join(out, "verdicts.jsonl"))
    assert os.path.exists(os.path.join(out, "laplace-bessel2.csv"))
    assert os.path.exists(os.path.join(out, "laplace-bessel2.png"))
    with open(os.path.join(out, "config.json"), encoding="utf-8") as fh:
        cfg = json.load(fh)
    assert cfg["n"] == 400


def test_unknown_check_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "no-such-check"])
    assert exc.value.code == 2


def test_bad_config_values_exit_2(tmp_path):
    assert main(["check", "laplace-bessel2", "--n", "0",
                 "--out", str(tmp_path)]) == 2
    assert main(["check", "laplace-bessel2", "--alpha", "2.0",
                 "--out", str(tmp_path)]) == 2


def test_config_file_overridden_by_flags(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"n": 300, "master_seed": 5}))
    out = str(tmp_path / "run")
    code = main(["check", "laplace-bessel2", "--config", str(cfg_path),
                 "--n", "500", "--out", out])
    assert code == 0
    with open(os.path.join(out, "config.json"), encoding="utf-8") as fh:
        cfg = json.load(fh)
    assert cfg["n"] == 500
    assert cfg["master_seed"] == 5


def test_unknown_config_field_exits_2(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"bogus": 1}))
    assert main(["check", "laplace-bessel2", "--config", str(cfg_path)]) == 2


def test_dump_bessel_paths_schema(tmp_path):
    out = str(tmp_path / "d")
    assert main(["dump", "bessel-paths", "--n", "3", "--out", out]) == 0
    with open(os.path.join(out, "bessel_paths.csv"), newline="",
              encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["replicate", "t", "value"]
    assert {r[0] for r in rows[1:]} == {"0", "1", "2"}


def test_dump_super_samples_schema(tmp_path):
    out = str(tmp_path / "d")
    assert main(["dump", "super-samples", "--n", "50", "--out", out]) == 0
    with open(os.path.join(out, "super_samples.csv"), newline="",
              encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["m_X", "w0", "duration"]
    assert len(rows) == 51


def test_dump_snake_trajectory(tmp_path):
    out = str(tmp_path / "d")
    assert main(["dump", "snake-trajectory", "--out", out]) == 0
    with open(os.path.join(out, "snake_trajectory.csv"), newline="",
              encoding="utf-8") as fh:
        header = next(csv.reader(fh))
    assert header == ["s", "zeta", "tip"]
    with open(os.path.join(out, "snake_trajectory.json"),
              encoding="utf-8") as fh:
        sidecar = json.load(fh)
    assert sidecar["wstar"] < 0
    assert "min_path" in sidecar


def test_dump_spine_sample(tmp_path):
    out = str(tmp_path / "d")
    assert main(["dump", "spine-sample", "--trunc-eps", "5e-3",
                 "--out", out]) == 0
    with open(os.path.join(out, "spine_sample.json"), encoding="utf-8") as fh:
        payload = json.load(fh)
    assert payload["depth"] >= 1.0
    assert all(t["min_value"] > -payload["depth"]
               for t in payload["subtrees"])


def test_dump_is_byte_identical(tmp_path):
    out1, out2 = str(tmp_path / "a"), str(tmp_path / "b")
    for out in (out1, out2):
        assert main(["dump", "super-samples", "--n", "20", "--out", out]) == 0
    b1 = open(os.path.join(out1, "super_samples.csv"), "rb").read()
    b2 = open(os.path.join(out2, "super_samples.csv"), "rb").read()
    assert b1 == b2
