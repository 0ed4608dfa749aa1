"""Score every bundled pair, compare against the gold labels and sweep
the OU threshold.

Run: python3 demos/03_evaluation_sweep.py
"""
import math

from unithood.counts import DATA_DIR, LocalProvider, build_local_index, read_corpus
from unithood.evaluation import (build_contingency, compute_metrics, format_report, load_gold,
                                 pair_key, threshold_sweep)
from unithood.extract import parse_tagged_input
from unithood.pipeline import run_rounds

provider = LocalProvider(build_local_index(read_corpus(DATA_DIR / "health_corpus.jsonl")))
with open(DATA_DIR / "tagged.tsv") as f:
    scored = [sp for _, sp in run_rounds(parse_tagged_input(f), provider)]
gold = load_gold(DATA_DIR / "gold.jsonl")

keys = [pair_key(sp.pair.ax_text, sp.pair.b, sp.pair.ay_text) for sp in scored]
table = build_contingency(zip(keys, (sp.merge_ou for sp in scored)), gold)
print(format_report(table, compute_metrics(table), "OU at default threshold"))

rows = list(zip(keys, (sp.ou for sp in scored)))
finite = [s for _, s in rows if math.isfinite(s)]
grid = [min(finite) + i * (max(finite) - min(finite)) / 9 for i in range(10)]
print("\nthreshold  merged  precision  recall")
for pt in threshold_sweep(rows, gold, grid):
    p = "n/a" if pt.metrics.precision is None else f"{pt.metrics.precision:.3f}"
    print(f"{pt.threshold:9.3f}  {pt.merged:6d}  {p:>9}  {pt.metrics.recall:.3f}")
