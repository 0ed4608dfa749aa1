"""Command-line entry point: ``unithood <subcommand> ...``.

Exit status is 0 on success, 1 on usage errors and 2 on data errors.  Every
flag may also be given in a JSON file passed with ``--config``; flags on
the command line win.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from . import counts as C
from .evaluation import (MissingGoldError, build_contingency, compute_metrics, format_report,
                         load_gold, pair_key, report_json, threshold_sweep)
from .extract import TaggedInputError, extract_pairs, parse_tagged_input, write_pairs
from .measures import DEFAULT_OU_THRESHOLD, OuConfig, UhThresholds
from .pipeline import PairRecord, decode_score, run_rounds, score_pairs

logger = logging.getLogger("unithood")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=False)


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", encoding="utf-8"), True


def _read_jsonl(path):
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            if line.strip():
                try:
                    yield json.loads(line)
                except json.JSONDecodeError as e:
                    raise ValueError(f"{path}:{lineno}: {e}") from None


def _add_provider_args(p):
    p.add_argument("--provider", choices=("local", "http"), default="local")
    p.add_argument("--index", help="index directory written by `index` (local provider)")
    p.add_argument("--endpoint", help="URL template with {query} (http provider)")
    p.add_argument("--count-field", help="dot path to the count in the JSON response")
    p.add_argument("--cache", help="count cache file (default: $UNITHOOD_CACHE)")
    p.add_argument("--rate-limit", type=float, default=5.0, help="max requests per second")
    p.add_argument("--fixed-n", type=int, help="override the sample-space size N")
    p.add_argument("--rates", help="function-word rates JSON used to estimate N")


REQUIRED = {
    "index": ("corpus", "out"),
    "extract": ("tagged",),
    "evaluate": ("scored", "gold"),
    "sweep": ("scored", "gold"),
}


def _provider(args):
    config = C.ProviderConfig(
        kind=args.provider, endpoint_template=args.endpoint,
        count_field_path=args.count_field, cache_path=C.default_cache_path(args.cache),
        rate_limit=args.rate_limit, fixed_N=args.fixed_n,
    )
    if config.kind == "local":
        if not args.index:
            raise UsageError("--index is required with --provider local")
        return C.make_provider(config, C.LocalIndex.load(args.index))
    rates = C.load_function_word_rates(args.rates) if args.rates else None
    return C.make_provider(config, function_word_rates=rates)


def cmd_index(args):
    index = C.build_local_index(C.read_corpus(args.corpus))
    index.save(args.out)
    print(index.doc_count)


def cmd_extract(args):
    with open(args.tagged, encoding="utf-8") as f:
        sentences = parse_tagged_input(f)
    out, close = _open_out(args.out)
    try:
        write_pairs(extract_pairs(sentences), out)
    finally:
        if close:
            out.close()


def cmd_score(args):
    if bool(args.pairs) == bool(args.tagged):
        raise UsageError("score needs exactly one of --pairs or --tagged")
    if args.rounds < 1:
        raise UsageError("--rounds must be >= 1")
    config = OuConfig(log_base=args.log_base, ou_threshold=args.threshold,
                      mi_joint_source=args.mi_joint)
    thresholds = UhThresholds(args.mi_plus, args.mi_minus, args.id_t,
                              args.idr_plus, args.idr_minus)
    provider = _provider(args)
    if args.pairs:
        pairs = [PairRecord.from_json(obj) for obj in _read_jsonl(args.pairs)]
        records = [sp.to_record()
                   for sp in score_pairs(provider, pairs, config, thresholds, args.workers)]
    else:
        with open(args.tagged, encoding="utf-8") as f:
            sentences = parse_tagged_input(f)
        records = []
        for r, sp in run_rounds(sentences, provider, config, thresholds, args.rounds,
                                args.merge_measure, args.workers):
            rec = sp.to_record()
            if args.rounds > 1:
                rec["round"] = r
            records.append(rec)
    out, close = _open_out(args.out)
    try:
        for rec in records:
            out.write(_dump(rec) + "\n")
    finally:
        if close:
            out.close()


def _scored_rows(path, field):
    rows = []
    for obj in _read_jsonl(path):
        rows.append((pair_key(obj["ax"], obj.get("b", ""), obj["ay"]), obj[field]))
    return rows


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, indent=2, sort_keys=True)
        f.write("\n")


def cmd_evaluate(args):
    gold = load_gold(args.gold)
    if args.measure == "ou":
        decisions = [(k, decode_score(v) >= args.threshold)
                     for k, v in _scored_rows(args.scored, "ou")]
        title = f"OU, threshold {args.threshold:g}"
    else:
        decisions = [(k, bool(v)) for k, v in _scored_rows(args.scored, "merge_uh")]
        title = "UH"
    table = build_contingency(decisions, gold)
    metrics = compute_metrics(table)
    sys.stdout.write(format_report(table, metrics, title))
    if args.json:
        _write_json(args.json, report_json(table, metrics))


def cmd_sweep(args):
    gold = load_gold(args.gold)
    scored = [(k, decode_score(v)) for k, v in _scored_rows(args.scored, "ou")]
    finite = [s for _, s in scored if math.isfinite(s)]
    lo = args.min if args.min is not None else (min(finite) - 1 if finite else -1.0)
    hi = args.max if args.max is not None else (max(finite) + 1 if finite else 1.0)
    if args.points < 1 or lo > hi:
        raise UsageError("sweep grid needs --points >= 1 and --min <= --max")
    step = (hi - lo) / (args.points - 1) if args.points > 1 else 0.0
    grid = [lo + i * step for i in range(args.points)]
    points = threshold_sweep(scored, gold, grid)

    def fmt(v):
        return "n/a" if v is None else f"{v:.5f}"

    print("threshold\tmerged\tprecision\trecall\taccuracy")
    for p in points:
        m = p.metrics
        print(f"{p.threshold:.5f}\t{p.merged}\t{fmt(m.precision)}\t{fmt(m.recall)}"
              f"\t{fmt(m.accuracy)}")
    if args.json:
        _write_json(args.json, [
            {"threshold": p.threshold, **report_json(p.table, p.metrics)} for p in points])


def cmd_estimate_n(args):
    provider = _provider(args)
    rates = C.load_function_word_rates(args.rates)
    print(C.estimate_index_size(provider, rates))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unithood", description="Unithood scoring from document counts.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("index", help="build a local index from a corpus")
    p.add_argument("--corpus", help="directory of text files or JSONL file")
    p.add_argument("--out", help="output index directory")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("extract", help="extract candidate pairs from tagged TSV")
    p.add_argument("--tagged")
    p.add_argument("--out", help="pairs JSONL (default: stdout)")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("score", help="score candidate pairs")
    p.add_argument("--pairs", help="pairs JSONL from `extract`")
    p.add_argument("--tagged", help="tagged TSV; extract and score in rounds")
    p.add_argument("--rounds", type=int, default=1, help="merge rounds with --tagged")
    p.add_argument("--merge-measure", choices=("ou", "uh"), default="ou",
                   help="decision used to merge units between rounds")
    _add_provider_args(p)
    p.add_argument("--log-base", type=float, default=10.0)
    p.add_argument("--threshold", type=float, default=DEFAULT_OU_THRESHOLD)
    p.add_argument("--mi-joint", choices=("n_xy", "n_s"), default="n_xy")
    d = UhThresholds()
    p.add_argument("--mi-plus", type=float, default=d.mi_plus)
    p.add_argument("--mi-minus", type=float, default=d.mi_minus)
    p.add_argument("--id-t", type=float, default=d.id_t)
    p.add_argument("--idr-plus", type=float, default=d.idr_plus)
    p.add_argument("--idr-minus", type=float, default=d.idr_minus)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="scored JSONL (default: stdout)")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("evaluate", help="precision/recall/accuracy against gold")
    p.add_argument("--scored")
    p.add_argument("--gold")
    p.add_argument("--measure", choices=("ou", "uh"), default="ou")
    p.add_argument("--threshold", type=float, default=DEFAULT_OU_THRESHOLD)
    p.add_argument("--json", help="also write the report as JSON here")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="metrics over a grid of OU thresholds")
    p.add_argument("--scored")
    p.add_argument("--gold")
    p.add_argument("--min", type=float)
    p.add_argument("--max", type=float)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--json")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("estimate-n", help="estimate the provider's index size")
    _add_provider_args(p)
    p.set_defaults(func=cmd_estimate_n)

    for sp in sub.choices.values():
        sp.add_argument("--config", help="JSON file of flag defaults")
    parser._subcommands = sub.choices
    return parser


def _parse(parser, argv):
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as f:
            cfg = json.load(f)
        sp = parser._subcommands[args.command]
        sp.set_defaults(**{k.replace("-", "_"): v for k, v in cfg.items()})
        args = parser.parse_args(argv)
    return args


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = _parse(parser, sys.argv[1:] if argv is None else argv)
        if not args.command:
            raise UsageError(parser.format_usage().strip())
        missing = [n for n in REQUIRED.get(args.command, ()) if getattr(args, n) is None]
        if missing:
            raise UsageError(f"unithood {args.command}: missing "
                             + ", ".join("--" + n for n in missing))
        logging.basicConfig(format="%(levelname)s: %(message)s",
                            level=logging.INFO if args.verbose else logging.WARNING)
        args.func(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return 1
    except (C.CountError, TaggedInputError, MissingGoldError, ValueError, KeyError,
            OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


dispatch = main


if __name__ == "__main__":
    sys.exit(main())
