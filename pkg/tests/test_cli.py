import json

import pytest

from unithood.cli import main


@pytest.fixture
def workdir(tmp_path, data_dir):
    assert main(["index", "--corpus", str(data_dir / "health_corpus.jsonl"),
                 "--out", str(tmp_path / "idx")]) == 0
    return tmp_path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_index_prints_doc_count(tmp_path, data_dir, capsys):
    code, out, _ = run(["index", "--corpus", data_dir / "corpus3.jsonl", "--out", tmp_path / "i"],
                       capsys)
    assert code == 0 and out.strip() == "3"
    docs = tmp_path / "docs"
    docs.mkdir()
    (docs / "one.txt").write_text("food poisoning")
    code, out, _ = run(["index", "--corpus", docs, "--out", tmp_path / "j"], capsys)
    assert out.strip() == "1"


def test_score_three_doc_fixture(tmp_path, data_dir, capsys):
    run(["index", "--corpus", data_dir / "corpus3.jsonl", "--out", tmp_path / "idx"], capsys)
    pairs = tmp_path / "pairs.jsonl"
    pairs.write_text(json.dumps({"sid": "t", "ax": "E coli", "b": "", "ay": "food poisoning",
                                 "s": "E coli food poisoning", "x": 1, "y": 2}) + "\n")
    code, _, _ = run(["score", "--pairs", pairs, "--provider", "local", "--index", tmp_path / "idx",
                      "--log-base", "10", "--out", tmp_path / "scored.jsonl"], capsys)
    assert code == 0
    (rec,) = [json.loads(l) for l in (tmp_path / "scored.jsonl").read_text().splitlines()]
    assert (rec["n_x"], rec["n_y"], rec["n_xy"], rec["n_s"], rec["N"]) == (2, 2, 1, 1, 3)
    assert "ou" in rec and "uh" in rec


def test_extract_score_evaluate(workdir, data_dir, capsys):
    pairs = workdir / "pairs.jsonl"
    assert run(["extract", "--tagged", data_dir / "tagged.tsv", "--out", pairs], capsys)[0] == 0
    assert len(pairs.read_text().splitlines()) == 29
    scored = workdir / "scored.jsonl"
    run(["score", "--pairs", pairs, "--index", workdir / "idx", "--out", scored], capsys)
    code, out, _ = run(["evaluate", "--scored", scored, "--gold", data_dir / "gold.jsonl",
                        "--threshold", "-8.39", "--json", workdir / "r.json"], capsys)
    assert code == 0
    assert "precision" in out and "recall" in out and "accuracy" in out
    report = json.loads((workdir / "r.json").read_text())
    assert set(report) == {"precision", "recall", "accuracy", "table"}
    assert sum(report["table"].values()) == 29
    code, out, _ = run(["evaluate", "--scored", scored, "--gold", data_dir / "gold.jsonl",
                        "--measure", "uh"], capsys)
    assert code == 0 and out.startswith("UH")


def test_sweep_command(workdir, data_dir, capsys):
    scored = workdir / "scored.jsonl"
    run(["score", "--tagged", data_dir / "tagged.tsv", "--index", workdir / "idx",
         "--out", scored], capsys)
    code, out, _ = run(["sweep", "--scored", scored, "--gold", data_dir / "gold.jsonl",
                        "--points", "5", "--json", workdir / "sweep.json"], capsys)
    assert code == 0
    assert len(out.strip().splitlines()) == 6
    assert len(json.loads((workdir / "sweep.json").read_text())) == 5


def test_estimate_n(workdir, capsys):
    code, out, _ = run(["estimate-n", "--index", workdir / "idx"], capsys)
    assert code == 0 and out.strip() == "60"


def test_usage_errors(capsys):
    assert run(["frobnicate"], capsys)[0] == 1
    assert run([], capsys)[0] == 1
    code, _, err = run(["score", "--bogus-flag"], capsys)
    assert code == 1 and "unrecognized" in err
    assert run(["index", "--corpus", "x"], capsys)[0] == 1
    assert run(["score", "--pairs", "p.jsonl"], capsys)[0] == 1  # no --index


def test_data_errors(workdir, data_dir, capsys):
    assert run(["index", "--corpus", workdir / "missing", "--out", workdir / "o"], capsys)[0] == 2
    bad = workdir / "bad.tsv"
    bad.write_text("0\tfood\n")
    code, _, err = run(["extract", "--tagged", bad], capsys)
    assert code == 2 and "line 1" in err
    scored = workdir / "s.jsonl"
    scored.write_text(json.dumps({"ax": "unknown", "b": "", "ay": "pair", "ou": 1.0}) + "\n")
    code, _, err = run(["evaluate", "--scored", scored, "--gold", data_dir / "gold.jsonl"], capsys)
    assert code == 2 and "unknown" in err


def test_config_file_and_flag_precedence(workdir, data_dir, capsys):
    cfg = workdir / "cfg.json"
    cfg.write_text(json.dumps({"scored": str(workdir / "scored.jsonl"),
                               "gold": str(data_dir / "gold.jsonl"), "threshold": 100.0}))
    run(["score", "--tagged", data_dir / "tagged.tsv", "--index", workdir / "idx",
         "--out", workdir / "scored.jsonl"], capsys)
    code, out, _ = run(["evaluate", "--config", cfg], capsys)
    assert code == 0 and "threshold 100" in out and "tp 0  fp 0" in out
    code, out, _ = run(["evaluate", "--config", cfg, "--threshold", "-8.39"], capsys)
    assert "threshold -8.39" in out


def test_cache_env_var(tmp_path, monkeypatch):
    from unithood.counts import default_cache_path
    monkeypatch.setenv("UNITHOOD_CACHE", str(tmp_path / "env.jsonl"))
    assert default_cache_path() == str(tmp_path / "env.jsonl")
    assert default_cache_path("explicit.jsonl") == "explicit.jsonl"


def test_score_rounds_flag(workdir, data_dir, capsys):
    out_path = workdir / "r.jsonl"
    code, _, _ = run(["score", "--tagged", data_dir / "tagged.tsv", "--index", workdir / "idx",
                      "--rounds", "3", "--threshold", "-1.1", "--out", out_path], capsys)
    assert code == 0
    recs = [json.loads(l) for l in out_path.read_text().splitlines()]
    assert any(r["round"] == 2 and r["s"] == "National Institute of Allergy and Infectious Diseases"
               for r in recs)
