"""Exact-match alignment F1, annotator agreement, and coverage analysis.

An alignment counts as correct only when its left and right QA sets both
equal a reference alignment's exactly. Zero-denominator convention:
precision is 1.0 with no predictions, recall is 1.0 with no reference,
so two empty sets agree perfectly.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict

from .models import Alignment, AlignmentSet


class PRF(BaseModel):
    model_config = ConfigDict(frozen=True)

    tp: int
    fp: int
    fn: int

    @property
    def precision(self) -> float:
        return self.tp / (self.tp + self.fp) if self.tp + self.fp else 1.0

    @property
    def recall(self) -> float:
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else 1.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    def as_dict(self) -> dict:
        return {
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


def exact_match_counts(pred: AlignmentSet, gold: AlignmentSet) -> PRF:
    if pred.pair_id != gold.pair_id:
        raise ValueError(
            f"evaluating mismatched pairs: {pred.pair_id!r} vs {gold.pair_id!r}"
        )
    pred_keys = pred.keys()
    gold_keys = gold.keys()
    tp = len(pred_keys & gold_keys)
    return PRF(tp=tp, fp=len(pred_keys) - tp, fn=len(gold_keys) - tp)


def exact_match_f1(pred: AlignmentSet, gold: AlignmentSet) -> PRF:
    return exact_match_counts(pred, gold)


def corpus_f1(preds: list[AlignmentSet], golds: list[AlignmentSet]) -> PRF:
    """Micro average: tp/fp/fn summed across pairs before computing P/R/F1.

    Pairs are joined on pair_id; a pair present on only one side counts
    with an empty counterpart."""
    by_pred = {p.pair_id: p for p in preds}
    by_gold = {g.pair_id: g for g in golds}
    tp = fp = fn = 0
    for pair_id in sorted(set(by_pred) | set(by_gold)):
        pred = by_pred.get(pair_id) or AlignmentSet(pair_id=pair_id, provenance="MODEL")
        gold = by_gold.get(pair_id) or AlignmentSet(pair_id=pair_id, provenance="GOLD")
        counts = exact_match_counts(pred, gold)
        tp += counts.tp
        fp += counts.fp
        fn += counts.fn
    return PRF(tp=tp, fp=fp, fn=fn)


def agreement(a1: AlignmentSet, a2: AlignmentSet) -> dict:
    """Exact-match F1 between two annotations of the same pair, plus whether
    they agree completely."""
    prf = exact_match_counts(a1, a2)
    return {"f1": prf.f1, "full_agreement": a1.keys() == a2.keys()}


def covered(src: Alignment, ref: AlignmentSet) -> bool:
    """True when some single ref alignment contains src on both sides."""
    left = set(src.left)
    right = set(src.right)
    return any(
        left <= set(r.left) and right <= set(r.right) for r in ref.alignments
    )


def coverage(src: AlignmentSet, ref: AlignmentSet) -> float:
    """Fraction of src alignments contained (both sides) in some single ref
    alignment. Vacuously 1.0 for an empty src."""
    if not src.alignments:
        return 1.0
    hits = sum(1 for a in src.alignments if covered(a, ref))
    return hits / len(src.alignments)


def build_eval_report(
    preds: list[AlignmentSet], golds: list[AlignmentSet]
) -> dict:
    """The `align eval` report: corpus PRF, per-pair details, agreement stats.

    Key order is fixed so reports diff cleanly."""
    by_pred = {p.pair_id: p for p in preds}
    by_gold = {g.pair_id: g for g in golds}
    per_pair = []
    full_count = 0
    f1_sum = 0.0
    pair_ids = sorted(set(by_pred) | set(by_gold))
    for pair_id in pair_ids:
        pred = by_pred.get(pair_id) or AlignmentSet(pair_id=pair_id, provenance="MODEL")
        gold = by_gold.get(pair_id) or AlignmentSet(pair_id=pair_id, provenance="GOLD")
        prf = exact_match_counts(pred, gold)
        full = pred.keys() == gold.keys()
        full_count += full
        f1_sum += prf.f1
        per_pair.append({"pair_id": pair_id, **prf.as_dict(), "full_agreement": full})
    corpus = corpus_f1(preds, golds)
    n = len(pair_ids)
    return {
        "corpus": corpus.as_dict(),
        "per_pair": per_pair,
        "per_pair_mean_f1": f1_sum / n if n else 1.0,
        "full_agreement_rate": full_count / n if n else 1.0,
        "num_pairs": n,
    }
