"""Scoring merge decisions against gold labels."""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .measures import decide_merge_ou


class MissingGoldError(KeyError):
    def __init__(self, keys):
        self.keys = sorted(keys)
        super().__init__(f"no gold label for: {', '.join(self.keys)}")


def pair_key(ax: str, b: str, ay: str) -> str:
    """Canonical join key: lowercased, whitespace collapsed, ``|``-separated."""
    def norm(text):
        return re.sub(r"\s+", " ", (text or "").strip().lower())
    return f"{norm(ax)}|{norm(b)}|{norm(ay)}"


@dataclass(frozen=True)
class ContingencyTable:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class Metrics:
    """None marks an undefined (0/0) metric."""

    precision: float | None
    recall: float | None
    accuracy: float | None


@dataclass(frozen=True)
class SweepPoint:
    threshold: float
    metrics: Metrics
    table: ContingencyTable

    @property
    def merged(self) -> int:
        return self.table.tp + self.table.fp


def load_gold(path) -> dict[str, bool]:
    gold = {}
    with Path(path).open(encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            if not line.strip():
                continue
            obj = json.loads(line)
            key = pair_key(obj["ax"], obj.get("b", ""), obj["ay"])
            if key in gold:
                raise ValueError(f"{path}:{lineno}: duplicate gold pair {key!r}")
            gold[key] = bool(obj["merge"])
    return gold


def build_contingency(decisions: Iterable[tuple[str, bool]],
                      gold: Mapping[str, bool]) -> ContingencyTable:
    decisions = list(decisions)
    missing = {k for k, _ in decisions if k not in gold}
    if missing:
        raise MissingGoldError(missing)
    tp = fp = fn = tn = 0
    for key, merge in decisions:
        if merge and gold[key]:
            tp += 1
        elif merge:
            fp += 1
        elif gold[key]:
            fn += 1
        else:
            tn += 1
    return ContingencyTable(tp, fp, fn, tn)


def _ratio(num, den):
    return num / den if den else None


def compute_metrics(table: ContingencyTable) -> Metrics:
    return Metrics(
        precision=_ratio(table.tp, table.tp + table.fp),
        recall=_ratio(table.tp, table.tp + table.fn),
        accuracy=_ratio(table.tp + table.tn, table.total),
    )


def threshold_sweep(scored: Iterable[tuple[str, float]], gold: Mapping[str, bool],
                    grid: Iterable[float]) -> list[SweepPoint]:
    scored = list(scored)
    grid = list(grid)
    if any(a > b for a, b in zip(grid, grid[1:])):
        raise ValueError("threshold grid must be sorted ascending")
    points = []
    for t in grid:
        table = build_contingency(
            ((k, decide_merge_ou(s, t).merge) for k, s in scored), gold)
        points.append(SweepPoint(t, compute_metrics(table), table))
    return points


def _fmt(value):
    return "n/a" if value is None else f"{value:.5f}"


def format_report(table: ContingencyTable, metrics: Metrics, title: str = "") -> str:
    lines = [title] if title else []
    lines += [
        f"pairs      {table.total}",
        f"tp {table.tp}  fp {table.fp}  fn {table.fn}  tn {table.tn}",
        f"precision  {_fmt(metrics.precision)}",
        f"recall     {_fmt(metrics.recall)}",
        f"accuracy   {_fmt(metrics.accuracy)}",
    ]
    return "\n".join(lines) + "\n"


def report_json(table: ContingencyTable, metrics: Metrics) -> dict:
    return {**asdict(metrics), "table": asdict(table)}
