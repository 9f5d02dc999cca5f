"""Induce QA alignments from cross-document event/entity coreference.

A cross-side QA pair is induced when (i) both predicate tokens sit inside
event mentions of one shared event cluster, and (ii) some answer span on
each side overlaps an entity mention, the two mentions sharing an entity
cluster. Every qualifying pair is emitted, so one QA may appear in
several induced alignments; coreferring arguments inside one sentence
("the man" / "he") produce exactly that redundancy.
"""

from __future__ import annotations

from dataclasses import dataclass

from .evaluation import coverage
from .models import (
    Alignment,
    AlignmentSet,
    AnswerSpan,
    CorefAnnotation,
    CorefMention,
    MentionKind,
    Provenance,
    QARelation,
    SentencePairInstance,
    SentenceText,
)
from .validation import ERROR, Violation


class CoverageError(ValueError):
    """The coref annotation has no mentions for a document the pair needs."""


@dataclass(frozen=True)
class _Index:
    by_sentence: dict[tuple[str, str], list[tuple[CorefMention, str]]]
    doc_ids: frozenset[str]

    def mentions_in(
        self, sent: SentenceText, kind: MentionKind
    ) -> list[tuple[CorefMention, str]]:
        return [
            (m, cluster_id)
            for m, cluster_id in self.by_sentence.get((sent.doc_id, sent.sent_id), [])
            if m.kind == kind
        ]


def build_index(coref: CorefAnnotation) -> _Index:
    cluster_of: dict[str, str] = {}
    for cluster in coref.clusters:
        for mid in cluster.mention_ids:
            cluster_of[mid] = cluster.cluster_id
    by_sentence: dict[tuple[str, str], list[tuple[CorefMention, str]]] = {}
    for m in coref.mentions:
        cid = cluster_of.get(m.mention_id)
        if cid is None:
            continue
        by_sentence.setdefault((m.doc_id, m.sent_id), []).append((m, cid))
    return _Index(by_sentence=by_sentence, doc_ids=frozenset(coref.doc_ids()))


def validate_coref(coref: CorefAnnotation) -> list[Violation]:
    out: list[Violation] = []
    owner: dict[str, str] = {}
    kinds = {m.mention_id: m.kind for m in coref.mentions}
    for cluster in coref.clusters:
        for mid in cluster.mention_ids:
            if mid in owner:
                out.append(
                    Violation(ERROR, cluster.cluster_id, f"mention {mid!r} already in cluster {owner[mid]!r}")
                )
            owner[mid] = cluster.cluster_id
            if mid not in kinds:
                out.append(Violation(ERROR, cluster.cluster_id, f"unknown mention {mid!r}"))
            elif kinds[mid] != cluster.kind:
                out.append(
                    Violation(ERROR, cluster.cluster_id, f"mention {mid!r} kind {kinds[mid].value} in {cluster.kind.value} cluster")
                )
    for m in coref.mentions:
        if m.mention_id not in owner:
            out.append(Violation(ERROR, m.mention_id, "mention belongs to no cluster"))
    return out


def _predicate_clusters(qa: QARelation, sent: SentenceText, index: _Index) -> set[str]:
    return {
        cid
        for m, cid in index.mentions_in(sent, MentionKind.EVENT)
        if m.span.start <= qa.predicate_index < m.span.end
    }


def _argument_clusters(qa: QARelation, sent: SentenceText, index: _Index) -> set[str]:
    out: set[str] = set()
    for span in qa.answers:
        for m, cid in index.mentions_in(sent, MentionKind.ENTITY):
            if span.overlaps(m.span):
                out.add(cid)
    return out


def induce(pair: SentencePairInstance, coref: CorefAnnotation) -> AlignmentSet:
    index = build_index(coref)
    return induce_with_index(pair, index)


def induce_with_index(pair: SentencePairInstance, index: _Index) -> AlignmentSet:
    for sent in (pair.a, pair.b):
        if sent.doc_id not in index.doc_ids:
            raise CoverageError(
                f"coref annotation covers no mentions in document {sent.doc_id!r}"
            )
    found = []
    for qa_a in pair.qas_a:
        ev_a = _predicate_clusters(qa_a, pair.a, index)
        if not ev_a:
            continue
        ent_a = _argument_clusters(qa_a, pair.a, index)
        if not ent_a:
            continue
        for qa_b in pair.qas_b:
            if not ev_a & _predicate_clusters(qa_b, pair.b, index):
                continue
            if not ent_a & _argument_clusters(qa_b, pair.b, index):
                continue
            found.append(Alignment.of([qa_a.qa_id], [qa_b.qa_id]))
    return AlignmentSet.of(pair.pair_id, Provenance.ECB_INDUCED, found)


def compare(induced: AlignmentSet, gold: AlignmentSet) -> dict:
    """Containment coverage in both directions (induced 1:1 alignments may be
    covered by wider gold groupings and vice versa)."""
    return {
        "induced_covered_by_gold": coverage(induced, gold),
        "gold_covered_by_induced": coverage(gold, induced),
    }
