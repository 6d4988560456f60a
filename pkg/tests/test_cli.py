"""Command-line interface: outputs, config files and exit codes."""
import json

import pytest

from birational_lab import raster
from birational_lab.cli import cli_main


def _run(capsys, *argv):
    code = cli_main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify(capsys):
    code, out, _ = _run(capsys, "classify", "--a", "2", "--x", "0.9", "--y", "-0.95")
    assert code == 0
    assert json.loads(out) == {"point": [0.9, -0.95], "a": 2.0, "tag": "EscapeT0", "n_exit": 2}


def test_classify_infinite_coordinate(capsys):
    code, out, _ = _run(capsys, "classify", "--a", "2", "--x", "inf", "--y", "0")
    assert code == 0 and json.loads(out)["tag"] == "Undetermined"


def test_normal_form(capsys):
    code, out, _ = _run(capsys, "normal-form", "--a", "3")
    rec = json.loads(out)
    assert code == 0 and rec["gamma2"] == "undefined"
    assert rec["gamma0"] == pytest.approx(-2.0943951023931953, abs=1e-15)


def test_regions(capsys):
    code, out, _ = _run(capsys, "regions", "--a", "2", "--x", "3", "--y", "4")
    assert code == 0 and "T0+" in json.loads(out)["tags"]


def test_render_writes_image_and_stats(capsys, tmp_path):
    img, st = tmp_path / "b.ppm", tmp_path / "b.json"
    code, out, _ = _run(capsys, "render", "--a", "2", "--width", "32", "--height", "24",
                        "--iters", "100", "--out", str(img), "--stats-out", str(st))
    assert code == 0
    assert raster.read_ppm(img).shape == (24, 32, 3)
    assert json.loads(out) == raster.read_stats(st)


def test_render_torus_excludes_box(capsys, tmp_path):
    code, _, err = _run(capsys, "render", "--torus", "--xmin", "0", "--out", str(tmp_path / "x.ppm"))
    assert code == 2 and "--torus" in err


@pytest.mark.parametrize("argv", [
    ["classify", "--a", "0.5", "--x", "0", "--y", "0"],
    ["classify", "--a", "2", "--x", "0"],
    ["classify", "--a", "2", "--x", "nan", "--y", "0"],
    ["render", "--width", "8"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    assert _run(capsys, *argv)[0] == 2


def test_unwritable_output_exits_1(capsys, tmp_path):
    code, _, _ = _run(capsys, "render", "--width", "16", "--height", "16", "--iters", "5",
                      "--out", str(tmp_path / "no" / "such" / "dir.ppm"))
    assert code == 1


def test_help_exits_0(capsys):
    assert _run(capsys, "--help")[0] == 0


def test_config_defaults_and_override(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"a": 2, "classify": {"x": 0.9, "y": "-0.95"}}))
    code, out, _ = _run(capsys, "--config", str(cfg), "classify")
    assert code == 0 and json.loads(out)["tag"] == "EscapeT0"
    code, out, _ = _run(capsys, "--config", str(cfg), "classify", "--x", "-0.5", "--y", "0.5")
    assert json.loads(out)["tag"] == "BoundedCandidate"


def test_config_unknown_key(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"colour": "red"}))
    code, _, err = _run(capsys, "--config", str(cfg), "classify", "--x", "0", "--y", "0")
    assert code == 2 and "colour" in err


def test_trace_arcs(capsys, tmp_path):
    prefix = str(tmp_path / "arc")
    code, out, _ = _run(capsys, "trace-arcs", "--iters", "3", "--resolution", "64",
                        "--out-prefix", prefix)
    assert code == 0
    meta = json.loads(out)
    assert len(meta) == 6 and all(m["n_iters"] == 3 for m in meta)
    assert (tmp_path / "arc_stable_w2.csv").exists()


def test_verify_core(capsys, tmp_path):
    code, out, _ = _run(capsys, "verify", "--suite", "core", "--out", str(tmp_path / "v.json"))
    assert code == 0
    assert json.loads(out) == json.loads((tmp_path / "v.json").read_text())
