import json
import subprocess
import sys
from pathlib import Path

import pytest

from dyntwist.cli import main, parse_config
from dyntwist.errors import ConfigError

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"

JOBS = [
    ("twist", "sl2_twist", 0),
    ("verify-cocycle", "sl2_cocycle", 0),
    ("verify-qdybe", "sl2_qdybe", 0),
    ("verify-equivariance", "sl2_equivariance", 0),
    ("verify-cdybe", "sl2_cdybe", 0),
    ("verify-cocycle", "sl3_levi_cocycle_invariant", 0),
    ("verify-cocycle", "sl3_levi_cocycle", 1),
    ("verify-qdybe", "sl3_levi_qdybe", 1),
    ("verify-qdybe", "sl3_cartan_qdybe", 0),
    ("verify-equivariance", "sl3_levi_equivariance", 0),
    ("star-table", "cp1_star", 0),
    ("bundle-check", "cp1_bundle", 0),
    ("hopf-check", "hopf_s3", 0),
    ("hopf-check", "hopf_factor", 0),
    ("hopf-check", "hopf_input", 0),
    ("twist", "bad_levi", 2),
]


def run_cli(command, config, out, *extra):
    return subprocess.run(
        [sys.executable, "-m", "dyntwist", command, "--config", str(config), "--out", str(out), *extra],
        cwd=ROOT, capture_output=True, text=True,
    )


@pytest.mark.parametrize("command,name,code", JOBS, ids=[j[1] for j in JOBS])
def test_sample_configs(command, name, code, tmp_path):
    proc = run_cli(command, CONFIGS / f"{name}.conf", tmp_path)
    assert proc.returncode == code, proc.stderr
    report = json.loads((tmp_path / f"{command}.json").read_text())
    assert report["status"] == {0: "pass", 1: "fail", 2: "error"}[code]


def test_violation_message_names_entry(tmp_path):
    proc = run_cli("verify-cocycle", CONFIGS / "sl3_levi_cocycle.conf", tmp_path)
    assert "shifted cocycle violated at entry" in proc.stderr


def test_byte_reproducible(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run_cli("verify-cocycle", CONFIGS / "sl2_cocycle.conf", out, "--seed", "5").returncode == 0
    assert (a / "verify-cocycle.json").read_bytes() == (b / "verify-cocycle.json").read_bytes()


def test_seed_changes_sample_points(tmp_path):
    cfg = tmp_path / "job.conf"
    cfg.write_text("algebra = sl2\nlevi = []\nreps = [[1], [1], [1]]\nmode = samples\n")
    reports = []
    for seed in ("1", "2"):
        out = tmp_path / seed
        assert main(["verify-cocycle", "--config", str(cfg), "--out", str(out), "--seed", seed]) == 0
        reports.append((out / "verify-cocycle.json").read_text())
    assert reports[0] != reports[1]


def test_twist_report_contents(tmp_path):
    assert main(["twist", "--config", str(CONFIGS / "sl2_twist.conf"), "--out", str(tmp_path)]) == 0
    report = json.loads((tmp_path / "twist.json").read_text())
    assert report["status"] == "pass"


@pytest.mark.parametrize("text,fragment", [
    ("algebra sl2\n", "line 1"),
    ("algebra = sl2\ncolour = red\n", "field 'colour'"),
    ("algebra = sl2\nalgebra = sl3\n", "duplicate"),
    ("samples = many\n", "expected an integer"),
    ("levi = [1, \n", "cannot parse"),
    ("invariant_first = 3\n", "expected true or false"),
])
def test_malformed_config(text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        parse_config(text)


def test_malformed_config_exit_code(tmp_path, capsys):
    cfg = tmp_path / "bad.conf"
    cfg.write_text("algebra = sl2\nreps = [[1]\n")
    assert main(["twist", "--config", str(cfg), "--out", str(tmp_path)]) == 2
    assert "invalid config" in capsys.readouterr().err


def test_rationals_in_lists():
    cfg = parse_config("lambda = [4/3, -1/2]\nlam0 = [3]\n")
    assert cfg["lambda"] == ["4/3", "-1/2"] and cfg["lam0"] == [3]


def test_missing_config_file(tmp_path):
    assert main(["twist", "--config", str(tmp_path / "nope.conf")]) == 2


def test_bad_representation_reported(tmp_path):
    cfg = tmp_path / "job.conf"
    cfg.write_text("algebra = sl2\nlevi = []\nreps = [[1, 2], [1]]\n")
    assert main(["twist", "--config", str(cfg), "--out", str(tmp_path)]) == 2
