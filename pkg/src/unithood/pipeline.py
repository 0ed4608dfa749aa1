"""Batch scoring of candidate pairs and multi-round merging."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .counts import CountSnapshot, snapshot
from .extract import (CandidatePair, TaggedSentence, apply_merges, extract_noun_phrases,
                      generate_pairs, DEFAULT_PREPOSITIONS)
from .measures import (OuConfig, UhThresholds, UndefinedMeasureError, decide_merge_ou,
                       mutual_information, odds_of_unithood, unithood_uh)


@dataclass(frozen=True)
class PairRecord:
    """A candidate pair read back from a pairs file (surface strings only)."""

    ax_text: str
    b: str
    ay_text: str
    s: str
    sid: str = ""
    x: int | None = None
    y: int | None = None

    @classmethod
    def from_json(cls, obj: dict) -> "PairRecord":
        ax, b, ay = obj["ax"], obj.get("b", "") or "", obj["ay"]
        s = obj.get("s") or " ".join(p for p in (ax, b, ay) if p)
        return cls(ax, b, ay, s, obj.get("sid", ""), obj.get("x"), obj.get("y"))


@dataclass(frozen=True)
class ScoredPair:
    pair: object
    counts: CountSnapshot
    ou: float
    mi: float
    merge_ou: bool
    merge_uh: bool

    def to_record(self) -> dict:
        c = self.counts
        return {
            "s": self.pair.s, "ax": self.pair.ax_text, "ay": self.pair.ay_text,
            "b": self.pair.b, "n_x": c.n_x, "n_y": c.n_y, "n_s": c.n_s, "n_xy": c.n_xy,
            "N": c.N, "ou": encode_score(self.ou), "uh": int(self.merge_uh),
            "mi": encode_score(self.mi), "merge_ou": self.merge_ou,
            "merge_uh": self.merge_uh,
        }


def encode_score(value: float):
    if value is None or math.isnan(value):
        return None
    if math.isinf(value):
        return "+inf" if value > 0 else "-inf"
    return value


def decode_score(value) -> float:
    if value is None:
        return math.nan
    if value == "+inf":
        return math.inf
    if value == "-inf":
        return -math.inf
    return float(value)


def score_pair(provider, pair, config: OuConfig = OuConfig(),
               thresholds: UhThresholds = UhThresholds()) -> ScoredPair:
    counts = snapshot(provider, pair)
    ou = odds_of_unithood(counts, config)
    try:
        mi = mutual_information(counts, config.mi_joint_source)
    except UndefinedMeasureError:
        mi = math.nan
    return ScoredPair(
        pair=pair, counts=counts, ou=ou, mi=mi,
        merge_ou=decide_merge_ou(ou, config.ou_threshold).merge,
        merge_uh=unithood_uh(counts, thresholds, config).merge,
    )


def score_pairs(provider, pairs: Sequence, config: OuConfig = OuConfig(),
                thresholds: UhThresholds = UhThresholds(), workers: int = 1) -> list[ScoredPair]:
    """Score pairs, fanning out over ``workers`` threads; input order is kept."""
    if workers <= 1:
        return [score_pair(provider, p, config, thresholds) for p in pairs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda p: score_pair(provider, p, config, thresholds), pairs))


def run_rounds(sentences: Iterable[TaggedSentence], provider, config: OuConfig = OuConfig(),
               thresholds: UhThresholds = UhThresholds(), rounds: int = 1,
               measure: str = "ou", workers: int = 1,
               prepositions=DEFAULT_PREPOSITIONS) -> list[tuple[int, ScoredPair]]:
    """Extract, score and merge repeatedly.

    After each round the accepted pairs of a sentence are merged into single
    units and pairing is redone over the new unit sequence.  Only pairs not
    scored in an earlier round are scored again.  Returns ``(round, scored)``
    in round order, then sentence order, then position.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if measure not in ("ou", "uh"):
        raise ValueError("measure must be 'ou' or 'uh'")
    sentences = list(sentences)
    if len({s.sentence_id for s in sentences}) != len(sentences):
        raise ValueError("sentence ids must be unique")
    units = {s.sentence_id: extract_noun_phrases(s) for s in sentences}
    seen: set[tuple[str, tuple[int, ...]]] = set()
    out: list[tuple[int, ScoredPair]] = []
    for r in range(1, rounds + 1):
        todo: list[tuple[TaggedSentence, CandidatePair]] = []
        for sent in sentences:
            for pair in generate_pairs(sent, units[sent.sentence_id], prepositions):
                span = (pair.a_x.start_offset, pair.a_x.end_offset,
                        pair.a_y.start_offset, pair.a_y.end_offset)
                if (sent.sentence_id, span) in seen:
                    continue
                seen.add((sent.sentence_id, span))
                todo.append((sent, pair))
        if not todo:
            break
        scored = score_pairs(provider, [p for _, p in todo], config, thresholds, workers)
        out.extend((r, sp) for sp in scored)
        by_sentence: dict[str, list] = {}
        for (sent, pair), sp in zip(todo, scored):
            merge = sp.merge_ou if measure == "ou" else sp.merge_uh
            if merge:
                by_sentence.setdefault(sent.sentence_id, []).append(
                    (pair, sp.ou if measure == "ou" else sp.mi))
        for sent in sentences:
            if sent.sentence_id in by_sentence:
                units[sent.sentence_id] = apply_merges(
                    sent, units[sent.sentence_id], by_sentence[sent.sentence_id])
    return out
