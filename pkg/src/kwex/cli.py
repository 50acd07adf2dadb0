"""Command-line interface.

Subcommands: extract, eval, stats, plan, matrix, cluster, curve. Exit
codes: 0 success, 1 data error, 2 usage error. Every command is
deterministic given identical inputs and flags; extract can fan out over
documents with --jobs without changing output bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .corpus import compute_stats, load_jsonl
from .errors import EngineError
from .evaluate import MetricsReport, evaluate_run
from .extract import EXTRACTORS
from .extract.embedding import FileProvider, HttpProvider
from .normalize import Normalizer
from .xling import (
    DEFAULT_LANGS,
    AffinityMatrix,
    LanguageSet,
    agglomerative_cluster,
    build_manifest,
    heatmap_matrix,
    language_count_curve,
)


def _normalizer_from_args(args) -> Normalizer:
    return Normalizer.for_language(
        args.lang,
        stopwords_path=getattr(args, "stopwords", None),
        lemmas_path=getattr(args, "lemmas", None),
    )


def _load_pos_sidecar(path: str | Path) -> dict[str, list[str]]:
    sidecar = {}
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                record = json.loads(line)
                sidecar[str(record["id"])] = list(record["pos"])
    return sidecar


def _extract_one(payload) -> tuple[str, list[dict]]:
    doc, normalizer, method, k, options = payload
    extractor = EXTRACTORS[method]
    keywords = extractor(doc, normalizer, k=k, **options)
    return doc.id, [{"phrase": kw.phrase, "score": kw.score} for kw in keywords]


def cmd_extract(args) -> int:
    normalizer = _normalizer_from_args(args)
    docs = load_jsonl(args.infile, args.lang, args.split)
    options: dict = {}
    if args.method == "keybert":
        if args.provider_file:
            options["provider"] = FileProvider.load(args.provider_file)
        elif args.provider_url:
            options["provider"] = HttpProvider(args.provider_url)
        options["max_n"] = args.max_n
    elif args.method == "kpminer":
        options["lasf"] = args.lasf
        options["cutoff"] = args.cutoff
    elif args.method == "textrank":
        options["window"] = args.window
        options["keep_ratio"] = args.keep_ratio
    elif args.method == "multipartite":
        options["sim_threshold"] = args.sim_threshold
        sidecar = _load_pos_sidecar(args.pos) if args.pos else {}
        payloads = [
            (doc, normalizer, args.method, args.k,
             {**options, "pos_tags": sidecar.get(doc.id)})
            for doc in docs
        ]
        return _write_predictions(payloads, args)
    payloads = [(doc, normalizer, args.method, args.k, options) for doc in docs]
    return _write_predictions(payloads, args)


def _write_predictions(payloads, args) -> int:
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_extract_one, payloads, chunksize=8))
    else:
        results = [_extract_one(p) for p in payloads]
    out = Path(args.out)
    with out.open("w", encoding="utf-8") as fh:
        for doc_id, keywords in results:
            fh.write(json.dumps({"id": doc_id, "keywords": keywords},
                                ensure_ascii=False))
            fh.write("\n")
    return 0


def cmd_eval(args) -> int:
    normalizer = _normalizer_from_args(args)
    corpus = load_jsonl(args.corpus, args.lang, args.split)
    report = evaluate_run(args.pred, corpus, normalizer, k=args.k)
    if args.out:
        report.save(args.out)
    k = args.k
    print(f"documents scored: {len(report.per_doc)}   omitted: {report.omitted}   "
          f"averaging: {report.averaging}")
    print(f"precision@{k} (considered): {report.precision:.4f}")
    print(f"precision@{k} (fixed k):    {report.precision_fixed_k:.4f}")
    print(f"recall@{k}:                 {report.recall:.4f}")
    print(f"f1@{k}:                     {report.f1:.4f}")
    return 0


def cmd_stats(args) -> int:
    normalizer = _normalizer_from_args(args)
    docs = load_jsonl(args.infile, args.lang, args.split)
    stats = compute_stats(docs, normalizer)
    payload = json.dumps(
        {"size": stats.size, "kw_per_doc": stats.kw_per_doc,
         "kw_present": stats.kw_present},
        indent=2,
    )
    if args.out:
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
    else:
        print(payload)
    return 0


def cmd_plan(args) -> int:
    langs = LanguageSet(tuple(args.langs.split(",")))
    train = tuple(args.train.replace("+", ",").split(",")) if args.train else None
    manifest = build_manifest(args.regime.upper(), langs, args.test,
                              args.data_root, train_langs=train)
    if args.out:
        manifest.save(args.out)
    else:
        print(json.dumps(manifest.to_dict(), indent=2))
    return 0


def cmd_matrix(args) -> int:
    langs = LanguageSet(tuple(args.langs.split(",")))
    reports: dict[tuple[str, str], MetricsReport] = {}
    root = Path(args.reports)
    for train in langs:
        for test in langs:
            path = root / f"{train}-{test}.json"
            if path.exists():
                reports[(train, test)] = MetricsReport.load(path)
    matrix = heatmap_matrix(reports, langs)
    if args.out:
        matrix.save(args.out)
    else:
        print(matrix.to_csv(), end="")
    return 0


def cmd_cluster(args) -> int:
    matrix = AffinityMatrix.load(args.matrix)
    merges = agglomerative_cluster(matrix, linkage=args.linkage)
    payload = json.dumps(
        {
            "linkage": args.linkage,
            "distance": "1 - (m[i][j] + m[j][i]) / (2 * max entry)",
            "merges": merges,
        },
        indent=2,
    )
    if args.out:
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
    else:
        print(payload)
    return 0


def cmd_curve(args) -> int:
    results = []
    lines = Path(args.results).read_text(encoding="utf-8").strip().splitlines()
    for line in lines[1:] if lines and lines[0].startswith("train_langs") else lines:
        if not line.strip():
            continue
        name, _, score = line.rpartition(",")
        results.append((tuple(name.split("+")), float(score)))
    curve = language_count_curve(results, args.test)
    payload = json.dumps(curve, indent=2)
    if args.out:
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
    else:
        print(payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kwex",
        description="Multilingual keyword extraction and evaluation",
    )
    parser.add_argument("--version", action="version", version=f"kwex {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_norm_flags(p):
        p.add_argument("--lang", required=True, help="language code")
        p.add_argument("--split", default="test", choices=("train", "valid", "test"))
        p.add_argument("--stopwords", help="override stopword file")
        p.add_argument("--lemmas", help="lemma table TSV for lemmatized languages")

    p = sub.add_parser("extract", help="run an extractor over a corpus")
    p.add_argument("--method", required=True, choices=sorted(EXTRACTORS))
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    add_norm_flags(p)
    p.add_argument("--provider-file", help="embedding TSV table (keybert)")
    p.add_argument("--provider-url", help="embedding HTTP endpoint (keybert)")
    p.add_argument("--max-n", type=int, default=1, help="keybert candidate n-gram size")
    p.add_argument("--lasf", type=int, default=3, help="kpminer least allowable seen frequency")
    p.add_argument("--cutoff", type=int, default=400, help="kpminer first-occurrence cutoff")
    p.add_argument("--window", type=int, default=2, help="textrank co-occurrence window")
    p.add_argument("--keep-ratio", type=float, default=0.33, help="textrank node keep ratio")
    p.add_argument("--sim-threshold", type=float, default=0.74,
                   help="multipartite topic similarity threshold")
    p.add_argument("--pos", help="POS sidecar JSONL for multipartite")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("eval", help="score predictions against a corpus")
    p.add_argument("--pred", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--out", help="write the metrics report JSON here")
    add_norm_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("stats", help="corpus statistics")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    add_norm_flags(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("plan", help="build an experiment manifest")
    p.add_argument("--regime", required=True, choices=("mon", "loo", "mul", "custom"))
    p.add_argument("--test", required=True, help="test language")
    p.add_argument("--langs", default=",".join(DEFAULT_LANGS))
    p.add_argument("--train", help="train languages for --regime custom (a+b or a,b)")
    p.add_argument("--data-root", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("matrix", help="assemble the train-by-test score matrix")
    p.add_argument("--reports", required=True,
                   help="directory of <train>-<test>.json metric reports")
    p.add_argument("--langs", default=",".join(DEFAULT_LANGS))
    p.add_argument("--out")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("cluster", help="cluster languages from an affinity matrix")
    p.add_argument("--matrix", required=True, help="affinity CSV from `matrix`")
    p.add_argument("--linkage", default="average", choices=("average", "single", "complete"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("curve", help="languages-vs-score curve data")
    p.add_argument("--results", required=True, help="CSV of train_langs,f1 rows")
    p.add_argument("--test", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_curve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "extract" and args.method == "keybert" \
            and not (args.provider_file or args.provider_url):
        parser.error("keybert requires --provider-file or --provider-url")
    try:
        return args.func(args)
    except (EngineError, OSError) as exc:
        print(f"kwex: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
