"""Semantic checks over parsed inputs.

Violations are returned as data so callers decide whether to stop, warn,
or count them; nothing here raises. Severity ERROR means the record
cannot be used downstream, WARNING means it can but looks suspect.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .models import (
    Alignment,
    AlignmentSet,
    Provenance,
    QARelation,
    SentencePairInstance,
    SentenceText,
)

ERROR = "ERROR"
WARNING = "WARNING"


@dataclass(frozen=True)
class Violation:
    severity: str
    where: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity} {self.where}: {self.message}"


def errors(violations: Iterable[Violation]) -> list[Violation]:
    return [v for v in violations if v.severity == ERROR]


def _check_qa(qa: QARelation, sent: SentenceText, where: str) -> list[Violation]:
    out: list[Violation] = []
    n = len(sent.tokens)
    if not 0 <= qa.predicate_index < n:
        out.append(
            Violation(ERROR, where, f"predicate_index {qa.predicate_index} outside sentence of {n} tokens")
        )
    if not qa.question_tokens:
        out.append(Violation(ERROR, where, "empty question_tokens"))
    elif not 0 <= qa.question_predicate_index < len(qa.question_tokens):
        out.append(
            Violation(
                ERROR,
                where,
                f"question_predicate_index {qa.question_predicate_index} outside question of {len(qa.question_tokens)} tokens",
            )
        )
    if not qa.answers:
        out.append(Violation(ERROR, where, "no answer spans"))
    for i, span in enumerate(qa.answers):
        if span.start < 0 or span.end > n or span.start >= span.end:
            out.append(
                Violation(ERROR, where, f"answers[{i}] span [{span.start},{span.end}) invalid for {n} tokens")
            )
    for i, a in enumerate(qa.answers):
        for b in qa.answers[i + 1:]:
            if a.overlaps(b):
                out.append(Violation(WARNING, where, f"answer spans [{a.start},{a.end}) and [{b.start},{b.end}) overlap"))
    return out


def validate_pair(pair: SentencePairInstance) -> list[Violation]:
    out: list[Violation] = []
    for side, sent, qas in (("a", pair.a, pair.qas_a), ("b", pair.b, pair.qas_b)):
        if not sent.tokens:
            out.append(Violation(ERROR, f"{pair.pair_id}.{side}", "empty sentence tokens"))
        seen: set[str] = set()
        for qa in qas:
            where = f"{pair.pair_id}.{side}.{qa.qa_id}"
            if qa.qa_id in seen:
                out.append(Violation(ERROR, where, "duplicate qa_id on this side"))
            seen.add(qa.qa_id)
            out.extend(_check_qa(qa, sent, where))
    return out


# Arity and disjointness rules differ by how an alignment set was produced:
# gold annotation may group many-to-many and (with a warning) reuse a QA,
# the baselines and induction emit 1:1 links that may share endpoints, and
# the decoder's output is strictly 1:1 and node-disjoint.
_ONE_TO_ONE = {Provenance.LEMMA, Provenance.MODEL, Provenance.ECB_INDUCED}
_DISJOINT = {Provenance.MODEL}


def validate_alignment_set(
    aset: AlignmentSet, pair: SentencePairInstance | None = None
) -> list[Violation]:
    out: list[Violation] = []
    where = aset.pair_id
    if pair is not None and pair.pair_id != aset.pair_id:
        out.append(Violation(ERROR, where, f"alignment pair_id does not match pair {pair.pair_id!r}"))
        pair = None

    ids_a = pair.qa_ids_a() if pair is not None else None
    ids_b = pair.qa_ids_b() if pair is not None else None

    used_left: set[str] = set()
    used_right: set[str] = set()
    for al in aset.alignments:
        out.extend(_check_alignment(al, aset.provenance, where, ids_a, ids_b))
        reused_l = used_left.intersection(al.left)
        reused_r = used_right.intersection(al.right)
        if reused_l or reused_r:
            sev = ERROR if aset.provenance in _DISJOINT else WARNING
            names = ", ".join(sorted(reused_l | reused_r))
            out.append(Violation(sev, where, f"qa used by multiple alignments: {names}"))
        used_left.update(al.left)
        used_right.update(al.right)
    return out


def _check_alignment(
    al: Alignment,
    provenance: Provenance,
    where: str,
    ids_a: set[str] | None,
    ids_b: set[str] | None,
) -> list[Violation]:
    out: list[Violation] = []
    if not al.left or not al.right:
        out.append(Violation(ERROR, where, "alignment with an empty side"))
    if provenance in _ONE_TO_ONE and not al.is_one_to_one():
        out.append(
            Violation(ERROR, where, f"{provenance.value} alignment must be 1:1, got {len(al.left)}:{len(al.right)}")
        )
    if ids_a is not None:
        for qa_id in al.left:
            if qa_id not in ids_a:
                out.append(Violation(ERROR, where, f"left qa_id {qa_id!r} not in side a"))
    if ids_b is not None:
        for qa_id in al.right:
            if qa_id not in ids_b:
                out.append(Violation(ERROR, where, f"right qa_id {qa_id!r} not in side b"))
    return out


def validate_batch(
    pairs: list[SentencePairInstance],
    alignment_sets: list[AlignmentSet] | None = None,
) -> list[Violation]:
    out: list[Violation] = []
    by_id = {p.pair_id: p for p in pairs}
    for p in pairs:
        out.extend(validate_pair(p))
    for aset in alignment_sets or []:
        pair = by_id.get(aset.pair_id)
        if pair is None:
            out.append(Violation(ERROR, aset.pair_id, "alignments reference unknown pair_id"))
        else:
            out.extend(validate_alignment_set(aset, pair))
    return out
