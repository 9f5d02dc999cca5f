"""Command-line entry point.

Every subcommand is a thin wrapper over one library module: it reads
JSONL inputs, delegates, and writes deterministic outputs (alignment
files sorted by pair_id, reports with a stable key order). Human
summaries go to stderr so stdout stays machine-readable.

The environment variable ALIGN_SCORER_ADDR overrides the address of any
external scorer, and supplies one when --scorer is omitted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, dataset, decode, ecb, evaluation, fusion, lemma, selfcheck
from . import jsonl, validation
from .markup import OwnershipError
from .models import DecoderConfig
from .protocol import TransportError, serve_stdio
from .scorers import candidates_for_pair, make_scorer, text_lemma_score

SCORER_ADDR_ENV = "ALIGN_SCORER_ADDR"


def _summary(text: str) -> None:
    print(text, file=sys.stderr)


def _emit_report(report: dict, path: str | None) -> None:
    text = json.dumps(report, indent=2, ensure_ascii=False)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _head_index(path: str | None) -> lemma.HeadIndex | None:
    return jsonl.read_heads(path) if path else None


def _resolve_scorer_spec(explicit: str | None) -> str:
    addr = os.environ.get(SCORER_ADDR_ENV)
    if addr and (explicit is None or explicit.startswith("external:")):
        return f"external:{addr}"
    return explicit if explicit is not None else "lemma"


def cmd_lemma(args: argparse.Namespace) -> int:
    pairs = jsonl.read_pairs(args.pairs)
    heads = _head_index(args.heads)
    out = [lemma.lemma_align(p, heads) for p in pairs]
    jsonl.write_alignments(args.out, out)
    total = sum(len(s.alignments) for s in out)
    _summary(f"lemma: {len(pairs)} pairs -> {total} alignments -> {args.out}")
    return 0


def cmd_decode(args: argparse.Namespace) -> int:
    pairs = jsonl.read_pairs(args.pairs)
    gold = jsonl.read_alignments(args.gold) if args.gold else None
    spec = _resolve_scorer_spec(args.scorer)
    scorer = make_scorer(spec, _head_index(args.heads), gold)
    cfg = DecoderConfig(tau=args.tau)
    try:
        out = [decode.decode_pair(p, scorer, cfg) for p in pairs]
    finally:
        if hasattr(scorer, "close"):
            scorer.close()
    jsonl.write_alignments(args.out, out)
    total = sum(len(s.alignments) for s in out)
    _summary(
        f"decode: {len(pairs)} pairs, scorer {spec}, tau {args.tau} "
        f"-> {total} alignments -> {args.out}"
    )
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    preds = jsonl.read_alignments(args.pred)
    golds = jsonl.read_alignments(args.gold)
    report = evaluation.build_eval_report(preds, golds)
    _emit_report(report, args.report)
    corpus = report["corpus"]
    _summary(
        f"eval: {report['num_pairs']} pairs  "
        f"P {corpus['precision']:.3f}  R {corpus['recall']:.3f}  F1 {corpus['f1']:.3f}  "
        f"full agreement {report['full_agreement_rate']:.3f}"
    )
    return 0


def cmd_induce_ecb(args: argparse.Namespace) -> int:
    pairs = jsonl.read_pairs(args.pairs)
    coref = jsonl.read_coref(args.coref)
    problems = ecb.validate_coref(coref)
    for v in problems:
        _summary(f"coref {v.severity}: {v.where}: {v.message}")
    if any(v.severity == validation.ERROR for v in problems):
        return 2
    index = ecb.build_index(coref)
    out = [ecb.induce_with_index(p, index) for p in pairs]
    jsonl.write_alignments(args.out, out)
    total = sum(len(s.alignments) for s in out)
    _summary(f"induce-ecb: {len(pairs)} pairs -> {total} alignments -> {args.out}")
    if args.compare_gold:
        golds = {g.pair_id: g for g in jsonl.read_alignments(args.compare_gold)}
        per_pair = []
        ind_hits = ind_total = gold_hits = gold_total = 0
        for aset in out:
            gold = golds.get(aset.pair_id)
            if gold is None:
                continue
            per_pair.append({"pair_id": aset.pair_id, **ecb.compare(aset, gold)})
            ind_total += len(aset.alignments)
            ind_hits += sum(evaluation.covered(a, gold) for a in aset.alignments)
            gold_total += len(gold.alignments)
            gold_hits += sum(evaluation.covered(g, aset) for g in gold.alignments)
        report = {
            "induced_covered_by_gold": 1.0 if ind_total == 0 else ind_hits / ind_total,
            "gold_covered_by_induced": 1.0 if gold_total == 0 else gold_hits / gold_total,
            "per_pair": per_pair,
        }
        _emit_report(report, args.report)
    return 0


def cmd_build_dataset(args: argparse.Namespace) -> int:
    sentences = jsonl.read_sentences(args.sentences)
    if args.source == "ecb":
        if not args.coref or not args.topics:
            raise ValueError("--source ecb needs --coref and --topics")
        coref = jsonl.read_coref(args.coref)
        topics = jsonl.read_topics(args.topics)
        pairs = dataset.build_ecb_pairs(
            sentences,
            coref,
            topics,
            top_k=args.top_k,
            bottom_k=args.bottom_k,
            max_rouge2=args.max_rouge2,
        )
    elif args.source == "duc":
        if not args.scus:
            raise ValueError("--source duc needs --scus")
        pairs = dataset.build_duc_pairs(jsonl.read_scus(args.scus), sentences)
    else:
        if not args.span_alignments:
            raise ValueError("--source mn needs --span-alignments")
        pairs = dataset.build_mn_pairs(
            jsonl.read_span_alignments(args.span_alignments),
            sentences,
            min_iou=args.min_iou,
        )
    jsonl.write_jsonl(args.out, sorted(pairs, key=lambda p: p.pair_id))
    _summary(f"build-dataset: {args.source} -> {len(pairs)} pairs -> {args.out}")
    return 0


def cmd_augment_fusion(args: argparse.Namespace) -> int:
    instances = jsonl.read_fusion_instances(args.instances)
    records = []
    for inst in sorted(instances, key=lambda i: i.cluster_id):
        records.append(
            {
                "cluster_id": inst.cluster_id,
                "input": fusion.augment(inst),
                "target": " ".join(inst.target),
            }
        )
    with open(args.out, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    _summary(f"augment-fusion: {len(records)} instances -> {args.out}")
    return 0


def cmd_analyze_consolidation(args: argparse.Namespace) -> int:
    instances = {i.cluster_id: i for i in jsonl.read_fusion_instances(args.instances)}
    outputs = jsonl.read_fusion_outputs(args.outputs)
    rows = []
    reports = []
    for out in sorted(outputs, key=lambda o: o.cluster_id):
        inst = instances.get(out.cluster_id)
        if inst is None:
            raise ValueError(f"output references unknown cluster_id {out.cluster_id!r}")
        rep = fusion.classify_consolidating(out.tokens, inst.sources)
        reports.append(rep)
        rows.append(
            {
                "cluster_id": out.cluster_id,
                "is_consolidating": rep.is_consolidating,
                "contributing_sources": list(rep.contributing_sources),
            }
        )
    report = {
        "consolidation_rate": fusion.consolidation_rate(reports),
        "num_outputs": len(rows),
        "outputs": rows,
    }
    _emit_report(report, args.report)
    _summary(
        f"analyze-consolidation: {len(rows)} outputs, "
        f"rate {report['consolidation_rate']:.3f}"
    )
    return 0


def cmd_serialize_candidates(args: argparse.Namespace) -> int:
    pairs = jsonl.read_pairs(args.pairs)
    labels = None
    if args.gold:
        labels = {}
        for aset in jsonl.read_alignments(args.gold):
            labels[aset.pair_id] = aset.one_to_one_pairs()
    count = 0
    with open(args.out, "w", encoding="utf-8") as fh:
        for pair in sorted(pairs, key=lambda p: p.pair_id):
            for cand in candidates_for_pair(pair):
                text_a, text_b = cand.texts()
                rec = {
                    "pair_id": pair.pair_id,
                    "candidate_id": cand.candidate_id,
                    "qa_a": cand.qa_a.qa_id,
                    "qa_b": cand.qa_b.qa_id,
                    "text_a": text_a,
                    "text_b": text_b,
                }
                if labels is not None:
                    hit = (cand.qa_a.qa_id, cand.qa_b.qa_id) in labels.get(
                        pair.pair_id, ()
                    )
                    rec["label"] = 1.0 if hit else 0.0
                fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
                count += 1
    _summary(f"serialize-candidates: {len(pairs)} pairs -> {count} candidates -> {args.out}")
    return 0


def cmd_selfcheck(args: argparse.Namespace) -> int:
    results = selfcheck.run_all(seed=args.seed)
    for res in results:
        print(res.line())
    failed = [r for r in results if not r.skipped and not r.passed]
    _summary(
        f"selfcheck: {sum(r.passed and not r.skipped for r in results)} passed, "
        f"{len(failed)} failed, {sum(r.skipped for r in results)} skipped"
    )
    return 1 if failed else 0


def _wire_score_fn(spec: str):
    if spec == "lemma":
        return text_lemma_score
    if spec.startswith("constant:"):
        value = float(spec.split(":", 1)[1])
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"constant score {value} outside [0, 1]")
        return lambda text_a, text_b: value
    raise ValueError(
        f"unknown wire scorer {spec!r} (expected lemma or constant:X)"
    )


def cmd_scorer_serve(args: argparse.Namespace) -> int:
    fn = _wire_score_fn(args.scorer)
    serve_stdio(lambda it: fn(it.text_a, it.text_b), sys.stdin, sys.stdout)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import make_app

    app = make_app(score_fn=_wire_score_fn(args.scorer))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="align",
        description="Align predicate-argument QA pairs across related sentences.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"align {__version__} (schema 1)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lemma", help="run the lemma baseline over sentence pairs")
    p.add_argument("--pairs", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--heads", help="optional per-token dependency heads JSONL")
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("decode", help="score candidates and decode a matching")
    p.add_argument("--pairs", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--scorer", help="lemma | constant:X | external:ADDR | gold-oracle")
    p.add_argument("--tau", type=float, default=0.5)
    p.add_argument("--heads")
    p.add_argument("--gold", help="gold alignments (required for gold-oracle)")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("eval", help="exact-match F1 of predictions against gold")
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--report", help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("induce-ecb", help="induce alignments from coreference clusters")
    p.add_argument("--pairs", required=True)
    p.add_argument("--coref", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--compare-gold", help="also report coverage against this gold file")
    p.add_argument("--report", help="write the coverage report here instead of stdout")
    p.set_defaults(func=cmd_induce_ecb)

    p = sub.add_parser("build-dataset", help="assemble sentence pairs from a corpus")
    p.add_argument("--source", required=True, choices=["ecb", "duc", "mn"])
    p.add_argument("--sentences", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--coref")
    p.add_argument("--topics")
    p.add_argument("--scus")
    p.add_argument("--span-alignments")
    p.add_argument("--top-k", type=int, default=6)
    p.add_argument("--bottom-k", type=int, default=2)
    p.add_argument("--max-rouge2", type=float, default=0.9)
    p.add_argument("--min-iou", type=float, default=0.1)
    p.set_defaults(func=cmd_build_dataset)

    p = sub.add_parser("augment-fusion", help="emit alignment-augmented fusion inputs")
    p.add_argument("--instances", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_augment_fusion)

    p = sub.add_parser(
        "analyze-consolidation", help="classify fused outputs as consolidating or not"
    )
    p.add_argument("--outputs", required=True)
    p.add_argument("--instances", required=True)
    p.add_argument("--report", help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_analyze_consolidation)

    p = sub.add_parser(
        "serialize-candidates",
        help="emit wire-format candidate texts (optionally labeled) for training",
    )
    p.add_argument("--pairs", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--gold", help="label candidates against these gold alignments")
    p.set_defaults(func=cmd_serialize_candidates)

    p = sub.add_parser("selfcheck", help="run the bundled fixture checks")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selfcheck)

    p = sub.add_parser("scorer-serve", help="speak the scorer protocol over stdio")
    p.add_argument("--scorer", default="lemma", help="lemma | constant:X")
    p.set_defaults(func=cmd_scorer_serve)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--scorer", default="lemma", help="wire scorer: lemma | constant:X")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        jsonl.JsonlError,
        OwnershipError,
        ecb.CoverageError,
        fusion.FusionMarkupError,
        TransportError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
