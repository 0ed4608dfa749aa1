import math

import pytest

from unithood.counts import LocalProvider, build_local_index, read_corpus
from unithood.extract import parse_tagged_input
from unithood.measures import OuConfig
from unithood.pipeline import (PairRecord, decode_score, encode_score, run_rounds, score_pair,
                               score_pairs)


@pytest.fixture
def health(data_dir):
    return LocalProvider(build_local_index(read_corpus(data_dir / "health_corpus.jsonl")))


@pytest.fixture
def sentences(data_dir):
    with open(data_dir / "tagged.tsv") as f:
        return parse_tagged_input(f)


def test_score_encoding_round_trip():
    for v in (math.inf, -math.inf, -0.25):
        assert decode_score(encode_score(v)) == v
    assert encode_score(math.nan) is None
    assert math.isnan(decode_score(None))


def test_scored_record_fields(three_docs):
    pair = PairRecord.from_json({"ax": "E coli", "b": "", "ay": "food poisoning"})
    assert pair.s == "E coli food poisoning"
    rec = score_pair(LocalProvider(three_docs), pair).to_record()
    assert list(rec) == ["s", "ax", "ay", "b", "n_x", "n_y", "n_s", "n_xy", "N", "ou", "uh",
                         "mi", "merge_ou", "merge_uh"]
    assert (rec["n_x"], rec["n_y"], rec["n_s"], rec["n_xy"], rec["N"]) == (2, 2, 1, 1, 3)
    # n_s = n_xy so only the global odds 1/2 remain
    assert rec["ou"] == pytest.approx(math.log10(0.5))


def test_unseen_pair_scores_minus_infinity(three_docs):
    pair = PairRecord.from_json({"ax": "outbreak", "b": "", "ay": "report"})
    rec = score_pair(LocalProvider(three_docs), pair).to_record()
    assert rec["ou"] == "-inf" and rec["merge_ou"] is False


def test_parallel_scoring_keeps_order(health, sentences):
    from unithood.extract import extract_pairs
    pairs = extract_pairs(sentences)
    serial = [sp.to_record() for sp in score_pairs(health, pairs)]
    parallel = [sp.to_record() for sp in score_pairs(health, pairs, workers=8)]
    assert serial == parallel


def test_single_round_scores_every_extracted_pair(health, sentences):
    out = run_rounds(sentences, health)
    assert len(out) == 29 and {r for r, _ in out} == {1}


def test_rounds_build_the_full_institute_name(health, sentences):
    # both first-round pairs pass; the stronger one merges first and the
    # second round joins the remainder
    config = OuConfig(ou_threshold=-1.1)
    out = run_rounds(sentences[:1], health, config, rounds=3)
    texts = [(r, sp.pair.s) for r, sp in out]
    assert (1, "Allergy and Infectious Diseases") in texts
    assert (2, "National Institute of Allergy and Infectious Diseases") in texts


def test_rounds_stop_when_nothing_new(health, sentences):
    out = run_rounds(sentences, health, OuConfig(ou_threshold=math.inf), rounds=5)
    assert {r for r, _ in out} == {1}


def test_rounds_validation(health, sentences):
    with pytest.raises(ValueError):
        run_rounds(sentences, health, rounds=0)
    with pytest.raises(ValueError):
        run_rounds(sentences + sentences[:1], health)
