"""Built-in acceptance checks over the bundled fixtures.

`align selfcheck` and the test suite both run these. Each check compares
the library against an independent reference implementation (brute-force
matching, naive set comparison) or against hand-derived fixture facts,
and reports one PASS/FAIL/SKIP line.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import dataset, decode, ecb, evaluation, fixtures, fusion, lemma, scorers
from .models import (
    Alignment,
    AlignmentSet,
    AnswerSpan,
    DecoderConfig,
    FusionInstance,
    FusionPairAlignments,
    Provenance,
    QARelation,
    ScoredEdge,
    SentenceText,
)

# Directory holding released dev/test pair and gold files; the dataset
# score check is skipped when unset.
DATA_DIR_ENV = "QA_ALIGN_DATA_DIR"


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    skipped: bool = False

    @property
    def status(self) -> str:
        if self.skipped:
            return "SKIP"
        return "PASS" if self.passed else "FAIL"

    def line(self) -> str:
        return f"{self.status} {self.name}: {self.detail}"


# --- independent references


def brute_force_total(edges: list[tuple[str, str, Fraction]]) -> Fraction:
    """Best total weight over all matchings, by exhaustive enumeration."""
    lefts = sorted({l for l, _, _ in edges})
    by_left = {l: [(r, w) for l2, r, w in edges if l2 == l] for l in lefts}
    best = Fraction(0)

    def walk(i: int, used: set[str], acc: Fraction) -> None:
        nonlocal best
        if acc > best:
            best = acc
        if i == len(lefts):
            return
        walk(i + 1, used, acc)
        for r, w in by_left[lefts[i]]:
            if r not in used:
                used.add(r)
                walk(i + 1, used, acc + w)
                used.remove(r)

    walk(0, set(), Fraction(0))
    return best


def naive_counts(pred: AlignmentSet, gold: AlignmentSet) -> tuple[int, int, int]:
    pk = pred.keys()
    gk = gold.keys()
    tp = len(pk & gk)
    return tp, len(pk - gk), len(gk - pk)


def naive_f1(tp: int, fp: int, fn: int) -> float:
    p = 1.0 if tp + fp == 0 else tp / (tp + fp)
    r = 1.0 if tp + fn == 0 else tp / (tp + fn)
    return 0.0 if p + r == 0 else 2 * p * r / (p + r)


def naive_coverage(src: AlignmentSet, ref: AlignmentSet) -> float:
    if not src.alignments:
        return 1.0
    hits = 0
    for a in src.alignments:
        for b in ref.alignments:
            if set(a.left) <= set(b.left) and set(a.right) <= set(b.right):
                hits += 1
                break
    return hits / len(src.alignments)


# --- random generators


def _random_edges(rng: random.Random) -> list[ScoredEdge]:
    n_l = rng.randint(0, 6)
    n_r = rng.randint(0, 6)
    edges = []
    for i in range(n_l):
        for j in range(n_r):
            if rng.random() < 0.5:
                edges.append(
                    ScoredEdge(left_qa=f"L{i}", right_qa=f"R{j}", score=rng.random())
                )
    return edges


def _random_alignment_set(rng: random.Random, pair_id: str) -> AlignmentSet:
    lefts = [f"a{i}" for i in range(6)]
    rights = [f"b{i}" for i in range(6)]
    als = []
    for _ in range(rng.randint(0, 4)):
        if rng.random() < 0.25:
            l = rng.sample(lefts, rng.randint(1, 2))
            r = rng.sample(rights, rng.randint(1, 2))
        else:
            l = [rng.choice(lefts)]
            r = [rng.choice(rights)]
        als.append(Alignment.of(l, r))
    return AlignmentSet.of(pair_id, Provenance.GOLD, als)


_WORDS = "alpha bravo charlie delta echo foxtrot golf hotel india juliet".split()


def _random_sentence_tokens(rng: random.Random, n_min: int = 3, n_max: int = 12) -> list[str]:
    return [rng.choice(_WORDS) for _ in range(rng.randint(n_min, n_max))]


def _random_spans(rng: random.Random, n: int) -> list[AnswerSpan]:
    # Disjoint spans by a left-to-right walk, plus an occasional covering
    # parent span; same-kind crossings never occur by construction.
    spans: list[AnswerSpan] = []
    i = 0
    while i < n:
        if rng.random() < 0.45:
            j = min(n, i + rng.randint(1, 3))
            spans.append(AnswerSpan(start=i, end=j))
            i = j
        else:
            i += 1
    if len(spans) >= 2 and rng.random() < 0.3:
        k = rng.randrange(len(spans) - 1)
        spans.append(AnswerSpan(start=spans[k].start, end=spans[k + 1].end))
    return spans


def random_fusion_instance(rng: random.Random, idx: int) -> FusionInstance:
    n_sources = rng.randint(2, 4)
    sources = []
    source_qas: list[list[QARelation]] = []
    for s in range(n_sources):
        tokens = _random_sentence_tokens(rng)
        sources.append(
            SentenceText(doc_id=f"doc{idx}-{s}", sent_id="0", tokens=tokens)
        )
        spans = _random_spans(rng, len(tokens))
        qas = []
        for q, span in enumerate(spans):
            qas.append(
                QARelation(
                    qa_id=f"q{s}-{q}",
                    predicate_index=rng.randrange(len(tokens)),
                    question_tokens=["What", "happened", "?"],
                    question_predicate_index=1,
                    answers=[span],
                )
            )
        source_qas.append(qas)
    pair_alignments = []
    for ls in range(n_sources):
        for rs in range(ls + 1, n_sources):
            als = []
            for qa_l in source_qas[ls]:
                for qa_r in source_qas[rs]:
                    if rng.random() < 0.25:
                        als.append(Alignment.of([qa_l.qa_id], [qa_r.qa_id]))
            pair_alignments.append(
                FusionPairAlignments(
                    left_source=ls, right_source=rs, alignments=tuple(als)
                )
            )
    return FusionInstance(
        cluster_id=f"rand{idx}",
        sources=sources,
        source_qas=source_qas,
        target=["none"],
        pair_alignments=pair_alignments,
    )


# --- checks


def check_decoder_oracle(n_graphs: int = 1000, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    started = time.monotonic()
    cfg = DecoderConfig(tau=0.5)
    for g in range(n_graphs):
        edges = _random_edges(rng)
        result = decode.decode_matching(edges, cfg)
        weight = {(e.left_qa, e.right_qa): Fraction(e.score) for e in edges}
        got = sum((weight[e] for e in result.edges), Fraction(0))
        survivors = [
            (e.left_qa, e.right_qa, Fraction(e.score))
            for e in edges
            if e.score >= cfg.tau
        ]
        want = brute_force_total(survivors)
        if got != want:
            return CheckResult(
                "decoder-oracle",
                False,
                f"graph {g}: decoder weight {got} != brute force {want}",
            )
    elapsed = time.monotonic() - started
    if elapsed >= 10.0:
        return CheckResult(
            "decoder-oracle", False, f"{n_graphs} graphs took {elapsed:.1f}s (>= 10s)"
        )
    return CheckResult(
        "decoder-oracle",
        True,
        f"{n_graphs} random graphs match brute force exactly in {elapsed:.1f}s",
    )


def check_perfect_oracle() -> CheckResult:
    for pair, gold in fixtures.pair_fixtures():
        scorer = scorers.GoldOracleScorer([gold])
        pred = decode.decode_pair(pair, scorer)
        target = AlignmentSet.of(
            pair.pair_id,
            gold.provenance,
            [a for a in gold.alignments if a.is_one_to_one()],
        )
        prf = evaluation.exact_match_f1(pred, target)
        if prf.f1 != 1.0:
            return CheckResult(
                "perfect-oracle",
                False,
                f"{pair.pair_id}: F1 {prf.f1} != 1.0 against gold 1:1 alignments",
            )
    return CheckResult(
        "perfect-oracle",
        True,
        "gold-oracle scoring + decode reproduces every fixture's 1:1 gold exactly",
    )


def check_metric_oracles(n_pairs: int = 500, seed: int = 1) -> CheckResult:
    rng = random.Random(seed)
    for i in range(n_pairs):
        pred = _random_alignment_set(rng, f"m{i}")
        gold = _random_alignment_set(rng, f"m{i}")
        prf = evaluation.exact_match_counts(pred, gold)
        tp, fp, fn = naive_counts(pred, gold)
        if (prf.tp, prf.fp, prf.fn) != (tp, fp, fn):
            return CheckResult(
                "metric-oracle", False, f"case {i}: counts differ from naive reference"
            )
        if prf.f1 != naive_f1(tp, fp, fn):
            return CheckResult(
                "metric-oracle", False, f"case {i}: F1 differs from naive reference"
            )
        if evaluation.exact_match_f1(gold, pred).f1 != prf.f1:
            return CheckResult(
                "metric-oracle", False, f"case {i}: F1 not symmetric"
            )
        if evaluation.exact_match_f1(pred, pred).f1 != 1.0:
            return CheckResult(
                "metric-oracle", False, f"case {i}: F1(x, x) != 1.0"
            )
        cov = evaluation.coverage(pred, gold)
        if cov != naive_coverage(pred, gold):
            return CheckResult(
                "metric-oracle",
                False,
                f"case {i}: coverage differs from naive reference",
            )
    return CheckResult(
        "metric-oracle",
        True,
        f"{n_pairs} random set pairs match the naive reference exactly",
    )


def check_rouge2(n_sentences: int = 200, seed: int = 2) -> CheckResult:
    got = dataset.rouge2("a b c d".split(), "b c e".split())
    if got != 0.4:
        return CheckResult("rouge2", False, f"pinned case gave {got}, want 0.4")
    rng = random.Random(seed)
    for i in range(n_sentences):
        a = _random_sentence_tokens(rng, 0, 8)
        b = _random_sentence_tokens(rng, 0, 8)
        if abs(dataset.rouge2(a, b) - dataset.rouge2(b, a)) > 1e-9:
            return CheckResult("rouge2", False, f"case {i}: not symmetric")
        if abs(dataset.rouge2(a, a) - 1.0) > 1e-9:
            return CheckResult("rouge2", False, f"case {i}: self-score != 1.0")
    return CheckResult(
        "rouge2",
        True,
        f"pinned value 0.4 exact; symmetry and self-identity on {n_sentences} random sentences",
    )


def check_lemma_baseline() -> CheckResult:
    painting = lemma.lemma_align(fixtures.painting_pair())
    if len(painting.alignments) != 0:
        return CheckResult(
            "lemma-baseline",
            False,
            f"painting pair: expected 0 alignments, got {len(painting.alignments)}",
        )
    if len(fixtures.painting_gold().alignments) != 2:
        return CheckResult(
            "lemma-baseline", False, "painting gold fixture should hold 2 alignments"
        )
    coach = lemma.lemma_align(fixtures.coach_pair())
    if coach.keys() != fixtures.coach_gold().keys():
        return CheckResult(
            "lemma-baseline",
            False,
            f"coach pair: expected exactly the gold alignment, got {coach.alignments}",
        )
    return CheckResult(
        "lemma-baseline",
        True,
        "painting pair -> 0 of 2 gold; coach pair -> exactly 1 (high precision, low recall)",
    )


def check_ecb_induction() -> CheckResult:
    parade = ecb.induce(fixtures.parade_pair(), fixtures.parade_coref())
    want = {
        (frozenset({"ra-1"}), frozenset({"rb-1"})),
        (frozenset({"ra-2"}), frozenset({"rb-1"})),
    }
    if parade.keys() != want:
        return CheckResult(
            "ecb-induction",
            False,
            f"parade pair: expected two alignments sharing rb-1, got {parade.alignments}",
        )
    driver = ecb.induce(fixtures.driver_pair(), fixtures.driver_coref())
    if driver.keys() != {(frozenset({"da-1"}), frozenset({"db-1"}))}:
        return CheckResult(
            "ecb-induction",
            False,
            f"driver pair: expected only the who-argument alignment, got {driver.alignments}",
        )
    report = ecb.compare(driver, fixtures.driver_gold())
    if report["induced_covered_by_gold"] != 1.0 or report["gold_covered_by_induced"] != 0.5:
        return CheckResult(
            "ecb-induction",
            False,
            f"driver pair coverage report unexpected: {report}",
        )
    return CheckResult(
        "ecb-induction",
        True,
        "redundant coreferent arguments induce two alignments; clause argument stays uncovered (gold coverage 0.5)",
    )


def check_fusion_roundtrip(n_instances: int = 200, seed: int = 3) -> CheckResult:
    inst = fixtures.dogs_fusion()
    text = fusion.augment(inst)
    if text.count("[P1] use [\\P1] [A1] dogs [\\A1]") != 2:
        return CheckResult(
            "fusion-roundtrip",
            False,
            "dogs instance: shared proposition not wrapped identically in both sources",
        )
    flat = [t for s in inst.sources for t in s.tokens]
    if fusion.strip_fusion_markup(text) != flat:
        return CheckResult(
            "fusion-roundtrip", False, "dogs instance: stripping does not recover sources"
        )
    rng = random.Random(seed)
    for i in range(n_instances):
        rand_inst = random_fusion_instance(rng, i)
        stripped = fusion.strip_fusion_markup(fusion.augment(rand_inst))
        if stripped != [t for s in rand_inst.sources for t in s.tokens]:
            return CheckResult(
                "fusion-roundtrip", False, f"instance {i}: round-trip mismatch"
            )
    fused = fusion.classify_consolidating(
        fixtures.dogs_fused_output().tokens, inst.sources
    )
    baseline = fusion.classify_consolidating(
        fixtures.dogs_baseline_output().tokens, inst.sources
    )
    if not fused.is_consolidating:
        return CheckResult(
            "fusion-roundtrip", False, "fused output should classify as consolidating"
        )
    if baseline.is_consolidating:
        return CheckResult(
            "fusion-roundtrip",
            False,
            "single-source baseline output should not classify as consolidating",
        )
    return CheckResult(
        "fusion-roundtrip",
        True,
        f"markup strips cleanly on {n_instances} random instances; "
        "fused output consolidating, baseline not",
    )


def check_dataset_scores() -> CheckResult:
    """Score the lemma baseline against released dev/test gold, when present."""
    root = os.environ.get(DATA_DIR_ENV)
    if not root:
        return CheckResult(
            "dataset-scores",
            True,
            f"released dataset not supplied ({DATA_DIR_ENV} unset)",
            skipped=True,
        )
    from . import jsonl

    targets = {"dev": 50.0, "test": 45.0}
    details = []
    for split, want in targets.items():
        pairs_path = Path(root) / f"{split}_pairs.jsonl"
        gold_path = Path(root) / f"{split}_gold.jsonl"
        if not pairs_path.exists() or not gold_path.exists():
            return CheckResult(
                "dataset-scores",
                False,
                f"{DATA_DIR_ENV} set but {pairs_path.name} or {gold_path.name} is missing",
            )
        pairs = jsonl.read_pairs(pairs_path)
        golds = jsonl.read_alignments(gold_path)
        preds = [lemma.lemma_align(p) for p in pairs]
        f1 = evaluation.corpus_f1(preds, golds).f1 * 100.0
        details.append(f"{split} F1 {f1:.1f} (target {want:.0f} +/- 3)")
        if abs(f1 - want) > 3.0:
            return CheckResult("dataset-scores", False, "; ".join(details))
    return CheckResult("dataset-scores", True, "; ".join(details))


def run_all(seed: int = 0) -> list[CheckResult]:
    return [
        check_decoder_oracle(seed=seed),
        check_perfect_oracle(),
        check_metric_oracles(seed=seed + 1),
        check_rouge2(seed=seed + 2),
        check_lemma_baseline(),
        check_ecb_induction(),
        check_fusion_roundtrip(seed=seed + 3),
        check_dataset_scores(),
    ]
