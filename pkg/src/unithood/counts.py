"""Document counts for phrase and co-occurrence queries.

Two providers are available.  :class:`LocalProvider` answers from an
in-memory positional index over a corpus and is fully deterministic.
:class:`HttpProvider` asks a search endpoint for its reported hit count and
keeps every answer in an append-only cache file, so a scored run can be
repeated offline.

All matching is case-insensitive: text is lowercased and tokenized with
:func:`tokenize` on both the corpus and the query side.
"""

from __future__ import annotations

import json
import logging
import os
import re
import statistics
import threading
import time
import urllib.parse
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r"\w+(?:[-'’]\w+)*|[^\w\s]")


class CountError(Exception):
    """Base class for count-provider failures."""


class DuplicateDocumentError(CountError):
    def __init__(self, doc_id):
        super().__init__(f"duplicate document id: {doc_id!r}")
        self.doc_id = doc_id


class RetryableQueryError(CountError):
    """Transport or parse failure; the same query may succeed later."""

    def __init__(self, query, reason):
        super().__init__(f"query {query!r} failed: {reason}")
        self.query = query
        self.reason = reason


class CountFormatError(CountError):
    pass


class UnsupportedOperationError(CountError):
    pass


class InvalidSampleSpaceError(CountError):
    pass


class EstimationError(CountError):
    pass


def tokenize(text: str) -> list[str]:
    """Lowercase ``text`` and split it into word and punctuation tokens."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class PhraseQuery:
    """An exact-phrase query over canonical (lowercased) tokens."""

    terms: tuple[str, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("phrase query needs at least one term")
        for t in self.terms:
            if not t or any(c.isspace() for c in t):
                raise ValueError(f"invalid phrase token: {t!r}")
        object.__setattr__(self, "terms", tuple(t.lower() for t in self.terms))

    @classmethod
    def of(cls, phrase: str | Sequence[str] | "PhraseQuery") -> "PhraseQuery":
        if isinstance(phrase, PhraseQuery):
            return phrase
        if isinstance(phrase, str):
            return cls(tuple(tokenize(phrase)))
        return cls(tuple(phrase))

    @property
    def text(self) -> str:
        return " ".join(self.terms)

    @property
    def key(self) -> str:
        """Canonical query string, e.g. ``+"food poisoning"``."""
        return f'+"{self.text}"'

    def __len__(self):
        return len(self.terms)


def conjunctive_key(a: PhraseQuery, b: PhraseQuery) -> str:
    return f"{a.key} {b.key}"


@dataclass(frozen=True)
class CountSnapshot:
    """The five counts behind every probability of one candidate pair."""

    n_x: int
    n_y: int
    n_s: int
    n_xy: int
    N: int
    clamped: bool = False

    def __post_init__(self):
        for name in ("n_x", "n_y", "n_s", "n_xy", "N"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def normalized(self) -> "CountSnapshot":
        """Repair counts so that ``n_s <= n_xy, n_x, n_y <= N``.

        Search engines report estimates that can break the subset law
        (documents containing ``s`` must contain both units).  Each repair
        raises the smaller count and sets ``clamped``.
        """
        n_xy = max(self.n_xy, self.n_s)
        n_x = max(self.n_x, self.n_s)
        n_y = max(self.n_y, self.n_s)
        N = max(self.N, n_x, n_y, n_xy)
        changed = (n_x, n_y, n_xy, N) != (self.n_x, self.n_y, self.n_xy, self.N)
        return replace(self, n_x=n_x, n_y=n_y, n_xy=n_xy, N=N,
                       clamped=self.clamped or changed)


class LocalIndex:
    """Positional index over a tokenized corpus.

    ``postings`` and ``occurrence_table`` are filled lazily per phrase from
    the unigram positions and memoized.
    """

    def __init__(self, doc_ids: Sequence[str], positions: dict[str, dict[str, list[int]]]):
        self.doc_ids = list(doc_ids)
        self.doc_count = len(self.doc_ids)
        # token -> doc_id -> sorted start positions
        self.positions = positions
        self.postings: dict[str, frozenset[str]] = {}
        self.occurrence_table: dict[str, int] = {}
        self._lock = threading.Lock()

    def _match(self, phrase: PhraseQuery):
        first, *rest = phrase.terms
        if first not in self.positions:
            return frozenset(), 0
        candidates = set(self.positions[first])
        for t in rest:
            candidates &= self.positions.get(t, {}).keys()
            if not candidates:
                return frozenset(), 0
        docs = set()
        total = 0
        for doc in candidates:
            later = [set(self.positions[t][doc]) for t in rest]
            hits = sum(
                1 for p in self.positions[first][doc]
                if all(p + i in pos for i, pos in enumerate(later, 1))
            )
            if hits:
                docs.add(doc)
                total += hits
        return frozenset(docs), total

    def _lookup(self, phrase: PhraseQuery):
        key = phrase.text
        with self._lock:
            if key in self.postings:
                return self.postings[key], self.occurrence_table[key]
        docs, total = self._match(phrase)
        with self._lock:
            self.postings[key] = docs
            self.occurrence_table[key] = total
        return docs, total

    def docs_with(self, phrase) -> frozenset[str]:
        return self._lookup(PhraseQuery.of(phrase))[0]

    def occurrences(self, phrase) -> int:
        return self._lookup(PhraseQuery.of(phrase))[1]

    def to_json(self) -> dict:
        return {"doc_ids": self.doc_ids, "positions": self.positions}

    @classmethod
    def from_json(cls, data: dict) -> "LocalIndex":
        return cls(data["doc_ids"], data["positions"])

    def save(self, directory) -> Path:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / "index.json"
        with path.open("w", encoding="utf-8") as f:
            json.dump(self.to_json(), f, sort_keys=True, separators=(",", ":"))
        return path

    @classmethod
    def load(cls, directory) -> "LocalIndex":
        path = Path(directory)
        if path.is_dir():
            path = path / "index.json"
        with path.open(encoding="utf-8") as f:
            return cls.from_json(json.load(f))


def build_local_index(documents: Iterable[tuple[str, Sequence[str] | str]]) -> LocalIndex:
    """Index ``(doc_id, tokens)`` pairs.  A string body is tokenized first."""
    doc_ids = []
    seen = set()
    positions: dict[str, dict[str, list[int]]] = {}
    for doc_id, body in documents:
        if doc_id in seen:
            raise DuplicateDocumentError(doc_id)
        seen.add(doc_id)
        doc_ids.append(doc_id)
        tokens = tokenize(body) if isinstance(body, str) else [t.lower() for t in body]
        for i, tok in enumerate(tokens):
            positions.setdefault(tok, {}).setdefault(doc_id, []).append(i)
    return LocalIndex(doc_ids, positions)


def read_corpus(path) -> list[tuple[str, str]]:
    """Read a corpus directory (one document per file) or a JSONL file."""
    path = Path(path)
    if path.is_dir():
        return [(p.name, p.read_text(encoding="utf-8"))
                for p in sorted(path.iterdir()) if p.is_file()]
    docs = []
    with path.open(encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                docs.append((str(obj["id"]), obj["text"]))
            except (json.JSONDecodeError, KeyError, TypeError) as e:
                raise CountFormatError(f"{path}:{lineno}: bad corpus line ({e})") from None
    return docs


@dataclass
class ProviderConfig:
    kind: str = "local"
    endpoint_template: str | None = None
    count_field_path: str | None = None
    cache_path: str | None = None
    rate_limit: float = 5.0
    fixed_N: int | None = None

    def __post_init__(self):
        if self.kind not in ("local", "http"):
            raise ValueError(f"unknown provider kind: {self.kind!r}")
        if self.rate_limit <= 0:
            raise ValueError("rate_limit must be positive")
        if self.kind == "http":
            if not self.endpoint_template or "{query}" not in self.endpoint_template:
                raise ValueError("http provider needs an endpoint_template with {query}")
            if not self.count_field_path:
                raise ValueError("http provider needs a count_field_path")


@dataclass(frozen=True)
class CacheEntry:
    query_key: str
    count: int
    retrieved_at: str


class CountCache:
    """Append-only JSONL cache; when a key repeats, the last line wins."""

    def __init__(self, path=None):
        self.path = Path(path) if path else None
        self.entries: dict[str, CacheEntry] = {}
        self._lock = threading.Lock()
        if self.path and self.path.exists():
            with self.path.open(encoding="utf-8") as f:
                for line in f:
                    if not line.strip():
                        continue
                    obj = json.loads(line)
                    self.entries[obj["q"]] = CacheEntry(obj["q"], int(obj["c"]), obj["t"])

    def get(self, key: str) -> int | None:
        entry = self.entries.get(key)
        return None if entry is None else entry.count

    def put(self, key: str, count: int) -> None:
        if count < 0:
            raise ValueError("cached count must be non-negative")
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        entry = CacheEntry(key, count, stamp)
        with self._lock:
            self.entries[key] = entry
            if self.path:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with self.path.open("a", encoding="utf-8") as f:
                    f.write(json.dumps({"q": key, "c": count, "t": stamp}) + "\n")

    def __len__(self):
        return len(self.entries)


class LocalProvider:
    kind = "local"

    def __init__(self, index: LocalIndex, fixed_N: int | None = None):
        self.index = index
        self.fixed_N = fixed_N

    def doc_count(self, phrase) -> int:
        return len(self.index.docs_with(phrase))

    def co_doc_count(self, phrase_a, phrase_b) -> int:
        return len(self.index.docs_with(phrase_a) & self.index.docs_with(phrase_b))

    def occurrence_count(self, phrase) -> int:
        return self.index.occurrences(phrase)

    def sample_size(self) -> int:
        return self.fixed_N if self.fixed_N is not None else self.index.doc_count


def _extract_field(doc, path: str):
    node = doc
    for part in path.split("."):
        if isinstance(node, list):
            try:
                node = node[int(part)]
            except (ValueError, IndexError):
                raise KeyError(path) from None
        elif isinstance(node, dict) and part in node:
            node = node[part]
        else:
            raise KeyError(path)
    return node


class HttpProvider:
    """Page counts from a JSON search endpoint, cached by canonical query.

    ``session`` is anything with a requests-style ``get(url, timeout=...)``.
    """

    kind = "http"

    def __init__(self, config: ProviderConfig, cache: CountCache | None = None,
                 session=None, function_word_rates=None, timeout: float = 10.0):
        if config.kind != "http":
            raise ValueError("HttpProvider needs an http ProviderConfig")
        self.config = config
        self.cache = cache if cache is not None else CountCache(config.cache_path)
        if session is None:
            import requests
            session = requests.Session()
        self.session = session
        self.function_word_rates = function_word_rates
        self.timeout = timeout
        self.requests_made = 0
        self._interval = 1.0 / config.rate_limit
        self._last_request = 0.0
        self._rate_lock = threading.Lock()
        self._N = None

    def _throttle(self):
        with self._rate_lock:
            wait = self._last_request + self._interval - time.monotonic()
            if wait > 0:
                time.sleep(wait)
            self._last_request = time.monotonic()

    def count(self, key: str) -> int:
        cached = self.cache.get(key)
        if cached is not None:
            return cached
        url = self.config.endpoint_template.replace(
            "{query}", urllib.parse.quote(key, safe=""))
        self._throttle()
        self.requests_made += 1
        try:
            resp = self.session.get(url, timeout=self.timeout)
            resp.raise_for_status()
            doc = resp.json()
        except Exception as e:  # transport errors vary by session type
            raise RetryableQueryError(key, e) from e
        try:
            raw = _extract_field(doc, self.config.count_field_path)
        except KeyError:
            raise RetryableQueryError(
                key, f"field {self.config.count_field_path!r} missing") from None
        if isinstance(raw, bool):
            raise CountFormatError(f"non-integer count for {key!r}: {raw!r}")
        if isinstance(raw, str) and re.fullmatch(r"\d+", raw.replace(",", "")):
            raw = int(raw.replace(",", ""))
        if not isinstance(raw, int) or raw < 0:
            raise CountFormatError(f"non-integer count for {key!r}: {raw!r}")
        self.cache.put(key, raw)
        return raw

    def doc_count(self, phrase) -> int:
        return self.count(PhraseQuery.of(phrase).key)

    def co_doc_count(self, phrase_a, phrase_b) -> int:
        a, b = PhraseQuery.of(phrase_a), PhraseQuery.of(phrase_b)
        if a == b:
            return self.doc_count(a)
        return self.count(conjunctive_key(a, b))

    def occurrence_count(self, phrase) -> int:
        raise UnsupportedOperationError(
            "web page counts are document counts; occurrence counts need a local index")

    def sample_size(self) -> int:
        if self.config.fixed_N is not None:
            return self.config.fixed_N
        if self._N is None:
            rates = self.function_word_rates
            if rates is None:
                rates = load_function_word_rates()
            self._N = estimate_index_size(self, rates)
        return self._N


def make_provider(config: ProviderConfig, index: LocalIndex | None = None, **kwargs):
    if config.kind == "local":
        if index is None:
            raise ValueError("local provider needs an index")
        return LocalProvider(index, fixed_N=config.fixed_N)
    return HttpProvider(config, **kwargs)


def doc_count(provider, phrase) -> int:
    return provider.doc_count(phrase)


def co_doc_count(provider, phrase_a, phrase_b) -> int:
    return provider.co_doc_count(phrase_a, phrase_b)


def occurrence_count(provider, phrase) -> int:
    return provider.occurrence_count(phrase)


def snapshot(provider, pair) -> CountSnapshot:
    """Collect and normalize the counts for a candidate pair.

    ``pair`` is any object exposing ``ax_text``, ``ay_text`` and ``s``.
    """
    ax, ay, s = (PhraseQuery.of(t) for t in (pair.ax_text, pair.ay_text, pair.s))
    N = provider.sample_size()
    if N <= 0:
        raise InvalidSampleSpaceError("sample space is empty (N = 0)")
    raw = CountSnapshot(
        n_x=provider.doc_count(ax),
        n_y=provider.doc_count(ay),
        n_s=provider.doc_count(s),
        n_xy=provider.co_doc_count(ax, ay),
        N=N,
    )
    snap = raw.normalized()
    if snap.clamped:
        logger.info("clamped counts for %r: %s -> %s", pair.s, raw, snap)
    return snap


def estimate_index_size(provider, function_word_rates) -> int:
    """Estimate the number of indexed documents from function-word counts.

    Each word with reference rate ``r`` (fraction of documents containing it)
    predicts ``doc_count(word) / r`` documents; the median prediction is
    returned.  Words the provider has never seen are skipped.
    """
    rates = list(dict(function_word_rates).items()) if isinstance(
        function_word_rates, dict) else list(function_word_rates)
    if not rates:
        raise ValueError("function word list is empty")
    ratios = []
    for word, rate in rates:
        if not 0 < rate <= 1:
            raise ValueError(f"reference rate for {word!r} must be in (0, 1]")
        n = provider.doc_count(word)
        if n > 0:
            ratios.append(n / rate)
    if not ratios:
        raise EstimationError("no function word has a non-zero count")
    return round(statistics.median(ratios))


def measure_function_word_rates(index: LocalIndex, words: Iterable[str]) -> dict[str, float]:
    """Fraction of documents in ``index`` that contain each word."""
    if index.doc_count == 0:
        raise InvalidSampleSpaceError("reference corpus is empty")
    rates = {w: len(index.docs_with(w)) / index.doc_count for w in words}
    return {w: r for w, r in rates.items() if r > 0}


DATA_DIR = Path(__file__).parent / "data"


def load_function_word_rates(path=None) -> dict[str, float]:
    path = Path(path) if path else DATA_DIR / "function_word_rates.json"
    with path.open(encoding="utf-8") as f:
        return json.load(f)["rates"]


def default_cache_path(explicit=None):
    return explicit or os.environ.get("UNITHOOD_CACHE")
