"""Extract candidate pairs from tagged text, score them on the bundled
corpus and merge over several rounds.

Run: python3 demos/02_extract_and_merge.py
"""
from unithood import OuConfig
from unithood.counts import DATA_DIR, LocalProvider, build_local_index, read_corpus
from unithood.extract import extract_pairs, parse_tagged_input
from unithood.pipeline import run_rounds

index = build_local_index(read_corpus(DATA_DIR / "health_corpus.jsonl"))
provider = LocalProvider(index)
with open(DATA_DIR / "tagged.tsv") as f:
    sentences = parse_tagged_input(f)

for p in extract_pairs(sentences[:2]):
    print(f"[{p.sentence_id}] {p.ax_text!r} + {p.b!r} + {p.ay_text!r}")

print("\nthree merge rounds on the first sentence, OU threshold -1.1:")
for rnd, sp in run_rounds(sentences[:1], provider, OuConfig(ou_threshold=-1.1), rounds=3):
    verdict = "merge" if sp.merge_ou else "keep apart"
    print(f"  round {rnd}: {sp.pair.s:<55} OU={sp.ou:7.3f}  {verdict}")
