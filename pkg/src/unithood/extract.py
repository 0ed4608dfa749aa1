"""Candidate pair extraction from POS-tagged sentences.

Noun phrases of shape ``Adj* N+`` are matched left to right.  Neighbouring
phrases become a candidate pair ``(a_x, b, a_y)`` when they touch, or when a
single preposition or the conjunction "and" sits between them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, TextIO

ADJ_TAGS = frozenset({"JJ", "JJR", "JJS"})
NOUN_TAGS = frozenset({"NN", "NNS", "NNP", "NNPS"})
PROPER_TAGS = frozenset({"NNP", "NNPS"})
DEFAULT_PREPOSITIONS = frozenset({"of", "for", "in", "on", "to", "with", "by", "from"})


class TaggedInputError(ValueError):
    def __init__(self, message, lineno=None):
        super().__init__(f"line {lineno}: {message}" if lineno else message)
        self.lineno = lineno


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    pos: str
    offset: int


@dataclass(frozen=True)
class TaggedSentence:
    sentence_id: str
    tokens: tuple[TaggedToken, ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("sentence has no tokens")
        for i, tok in enumerate(self.tokens):
            if tok.offset != i:
                raise TaggedInputError(
                    f"sentence {self.sentence_id}: offset {tok.offset} at position {i}")


@dataclass(frozen=True)
class NounPhrase:
    """A contiguous run of tokens treated as one lexical unit.

    Units from :func:`extract_noun_phrases` match ``Adj* N+``; units built by
    :func:`merge_units` span a previously accepted pair.
    """

    tokens: tuple[TaggedToken, ...]

    @property
    def start_offset(self) -> int:
        return self.tokens[0].offset

    @property
    def end_offset(self) -> int:
        return self.tokens[-1].offset

    @property
    def text(self) -> str:
        return " ".join(t.surface for t in self.tokens)

    @property
    def tags(self) -> tuple[str, ...]:
        return tuple(t.pos for t in self.tokens)


@dataclass(frozen=True)
class CandidatePair:
    a_x: NounPhrase
    a_y: NounPhrase
    b: str
    sentence_id: str
    s: str = field(init=False)

    def __post_init__(self):
        gap = self.a_y.start_offset - self.a_x.end_offset - 1
        if gap != (1 if self.b else 0):
            raise ValueError(f"units {self.a_x.text!r} and {self.a_y.text!r} are not adjacent")
        parts = [self.a_x.text, self.b, self.a_y.text] if self.b else [self.a_x.text, self.a_y.text]
        object.__setattr__(self, "s", " ".join(parts))

    @property
    def ax_text(self) -> str:
        return self.a_x.text

    @property
    def ay_text(self) -> str:
        return self.a_y.text

    @property
    def x(self) -> int:
        return self.a_x.end_offset

    @property
    def y(self) -> int:
        return self.a_y.start_offset

    def to_record(self) -> dict:
        return {"sid": self.sentence_id, "ax": self.ax_text, "b": self.b,
                "ay": self.ay_text, "s": self.s, "x": self.x, "y": self.y}


def parse_tagged_input(stream: TextIO | Iterable[str]) -> list[TaggedSentence]:
    """Read the one-token-per-line TSV format: ``offset<TAB>surface<TAB>POS``.

    A blank line ends a sentence and ``#`` starts a comment.  A comment of
    the form ``# sid: NAME`` names the next sentence; otherwise sentences are
    numbered ``s1, s2, ...``.
    """
    sentences = []
    tokens: list[TaggedToken] = []
    pending_id = None
    start_line = None

    def flush():
        nonlocal tokens, pending_id
        if tokens:
            sid = pending_id or f"s{len(sentences) + 1}"
            try:
                sentences.append(TaggedSentence(sid, tuple(tokens)))
            except TaggedInputError as e:
                raise TaggedInputError(str(e), start_line) from None
        tokens = []
        pending_id = None

    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            flush()
            continue
        if line.lstrip().startswith("#"):
            body = line.lstrip()[1:].strip()
            if body.startswith("sid:"):
                pending_id = body[4:].strip()
            continue
        fields = line.split("\t") if "\t" in line else line.split()
        if len(fields) != 3:
            raise TaggedInputError(f"expected 3 fields, got {len(fields)}", lineno)
        offset, surface, pos = fields
        try:
            offset = int(offset)
        except ValueError:
            raise TaggedInputError(f"offset {offset!r} is not an integer", lineno) from None
        if offset != len(tokens):
            raise TaggedInputError(f"offset {offset} breaks contiguity (expected {len(tokens)})",
                                   lineno)
        if not tokens:
            start_line = lineno
        tokens.append(TaggedToken(surface, pos, offset))
    flush()
    return sentences


def extract_noun_phrases(sentence: TaggedSentence,
                         split_proper: bool = True) -> list[NounPhrase]:
    """Maximal non-overlapping ``Adj* N+`` matches, scanning left to right.

    With ``split_proper`` a noun run also ends where it switches between
    proper (NNP, NNPS) and common nouns, so "E./NNP coli/NNP food/NN
    poisoning/NN" yields two units.
    """
    toks = sentence.tokens
    nps = []
    i = 0
    while i < len(toks):
        j = i
        while j < len(toks) and toks[j].pos in ADJ_TAGS:
            j += 1
        k = j
        while k < len(toks) and toks[k].pos in NOUN_TAGS:
            if (split_proper and k > j
                    and (toks[k].pos in PROPER_TAGS) != (toks[k - 1].pos in PROPER_TAGS)):
                break
            k += 1
        if k > j:
            nps.append(NounPhrase(toks[i:k]))
            i = k
        else:
            i = max(j, i + 1)
    return nps


def connector(token: TaggedToken, prepositions=DEFAULT_PREPOSITIONS) -> str | None:
    """The connector text if ``token`` may join two units, else None."""
    word = token.surface.lower()
    if token.pos == "IN" and word in prepositions:
        return word
    if token.pos == "CC" and word == "and":
        return word
    return None


def generate_pairs(sentence: TaggedSentence, nps: list[NounPhrase],
                   prepositions=DEFAULT_PREPOSITIONS) -> list[CandidatePair]:
    pairs = []
    for left, right in zip(nps, nps[1:]):
        gap = right.start_offset - left.end_offset - 1
        if gap == 0:
            pairs.append(CandidatePair(left, right, "", sentence.sentence_id))
        elif gap == 1:
            b = connector(sentence.tokens[left.end_offset + 1], prepositions)
            if b is not None:
                pairs.append(CandidatePair(left, right, b, sentence.sentence_id))
    return pairs


def merge_units(sentence: TaggedSentence, pair: CandidatePair) -> NounPhrase:
    """The unit spanning ``a_x b a_y``, for use in a later pairing round."""
    return NounPhrase(sentence.tokens[pair.a_x.start_offset:pair.a_y.end_offset + 1])


def apply_merges(sentence: TaggedSentence, units: list[NounPhrase],
                 accepted: list[tuple[CandidatePair, float]]) -> list[NounPhrase]:
    """Replace accepted pairs by merged units.

    Pairs are merged strongest score first; a pair that overlaps a unit
    already merged in this round is left for the next round.
    """
    order = sorted(range(len(accepted)), key=lambda i: (-accepted[i][1], accepted[i][0].x))
    used: set[int] = set()
    merged: dict[int, NounPhrase] = {}
    for i in order:
        pair = accepted[i][0]
        a, b = pair.a_x.start_offset, pair.a_y.start_offset
        if a in used or b in used:
            continue
        used.update((a, b))
        merged[a] = merge_units(sentence, pair)
    out = []
    for unit in units:
        start = unit.start_offset
        if start in merged:
            out.append(merged[start])
        elif start not in used:
            out.append(unit)
    return out


def extract_pairs(sentences: Iterable[TaggedSentence], prepositions=DEFAULT_PREPOSITIONS,
                  split_proper: bool = True) -> list[CandidatePair]:
    pairs = []
    for sent in sentences:
        nps = extract_noun_phrases(sent, split_proper)
        pairs.extend(generate_pairs(sent, nps, prepositions))
    return pairs


def write_pairs(pairs: Iterable[CandidatePair], out: TextIO) -> None:
    for p in pairs:
        out.write(json.dumps(p.to_record(), ensure_ascii=False) + "\n")
