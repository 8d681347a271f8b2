import json
import subprocess
import sys

import pytest

from xwikire import cli

from conftest import DATA


def run(args, capsys):
    code = cli.main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def test_unknown_subcommand_is_usage_error(capsys):
    code, _, err = run(["frobnicate"], capsys)
    assert code == 1
    assert "usage:" in err


def test_no_subcommand_is_usage_error(capsys):
    assert run([], capsys)[0] == 1


def test_score_fixture_two_thirds(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(["score", "--gold", DATA / "scorer_gold.jsonl", "--pred", DATA / "scorer_pred.jsonl",
                        "--report", report], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["exact"] == {"precision": "2/3", "recall": "2/3", "f1": "2/3"}
    assert json.loads(report.read_text()) == obj


def test_score_group_by(capsys):
    code, out, _ = run(["score", "--gold", DATA / "scorer_gold.jsonl", "--pred", DATA / "scorer_pred.jsonl",
                        "--group-by", "language"], capsys)
    assert code == 0
    groups = json.loads(out)["groups"]
    assert sorted(groups) == ["en", "it"]
    assert groups["it"]["tp"] == 0 and groups["en"]["tp"] == 2


def test_score_unknown_example_is_input_error(capsys, tmp_path):
    pred = tmp_path / "p.jsonl"
    pred.write_text('{"example_id": "nope", "answer": "x"}\n')
    code, _, err = run(["score", "--gold", DATA / "scorer_gold.jsonl", "--pred", pred], capsys)
    assert code == 2
    assert "unknown-example" in err


def test_missing_config_is_input_error(capsys, tmp_path):
    code, _, err = run(["build", "--config", tmp_path / "nope.cfg", "--out", tmp_path / "o"], capsys)
    assert code == 2 and "error in stage" in err


def test_stage_without_inputs_is_input_error(capsys, fixture_dir, tmp_path):
    code, _, err = run(["querify", "--config", fixture_dir / "fixture.cfg", "--out", tmp_path / "o"], capsys)
    assert code == 2
    assert "querify" in err and "run the earlier stage first" in err


def test_build_twice_byte_identical(capsys, fixture_dir, tmp_path):
    trees = []
    for name in ("a", "b"):
        out = tmp_path / name
        assert run(["build", "--config", fixture_dir / "fixture.cfg", "--seed", 7, "--out", out], capsys)[0] == 0
        trees.append({str(p.relative_to(out)): p.read_bytes() for p in sorted(out.rglob("*")) if p.is_file()})
    assert trees[0] == trees[1]
    manifest = json.loads(trees[0]["manifest.json"])
    assert manifest["settings"]["seed"] == 7
    assert all(not v["path"].startswith("/") for v in manifest["inputs"].values())


def test_stagewise_matches_build(capsys, fixture_dir, built, tmp_path):
    out = tmp_path / "staged"
    cfg = fixture_dir / "fixture.cfg"
    for stage in ("ingest", "slotfill", "querify", "split", "stats"):
        # common flags may follow the subcommand too
        assert run([stage, "--config", cfg, "--out", out], capsys)[0] == 0
    for rel in ("querify/examples.jsonl", "slotfill/contexts.jsonl", "stats/counts.json",
                "splits/unent/entities.json"):
        assert (out / rel).read_bytes() == (built / rel).read_bytes()


def test_langs_override(capsys, fixture_dir, tmp_path):
    out = tmp_path / "o"
    cfg = fixture_dir / "fixture.cfg"
    assert run(["--langs", "en,de", "ingest", "--config", cfg, "--out", out], capsys)[0] == 0
    langs = {json.loads(line)["language"] for line in (out / "ingest/documents.jsonl").read_text().splitlines()}
    assert langs == {"en", "de"}


def test_baseline_subcommand(capsys, built, tmp_path):
    pred = tmp_path / "oracle.jsonl"
    code, _, _ = run(["baseline", "--mode", "oracle", "--gold", built / "querify/examples.jsonl",
                      "--pred-out", pred, "--out", tmp_path / "o"], capsys)
    assert code == 0
    code, out, _ = run(["score", "--gold", built / "querify/examples.jsonl", "--pred", pred], capsys)
    assert code == 0 and json.loads(out)["exact"]["f1"] == "1"


def test_bad_mode_is_usage_error(capsys, tmp_path):
    assert run(["baseline", "--mode", "magic", "--out", tmp_path], capsys)[0] == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "xwikire.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for sub in ("ingest", "slotfill", "querify", "split", "stats", "build", "score", "baseline"):
        assert sub in proc.stdout


@pytest.mark.parametrize("bad", ["seed = x\n", "langs = \n", "colour = red\n", "fractions = 0.5,0.5\n",
                                 "no equals sign\n"])
def test_bad_config_values(capsys, tmp_path, bad):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(bad)
    code, _, err = run(["ingest", "--config", cfg, "--out", tmp_path / "o"], capsys)
    assert code == 2 and err
