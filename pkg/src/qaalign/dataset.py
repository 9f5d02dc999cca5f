"""Assemble sentence-pair instances from the three source families.

Builders are deterministic given input order. Sentence texts come from a
sentences file; topic/cluster/anchor structure decides which pairs exist,
and per-family filters (shared-event ranking + ROUGE-2 cap, none, span
IOU floor) decide which survive.
"""

from __future__ import annotations

from collections import Counter

from .ecb import _Index, build_index
from .models import (
    AnswerSpan,
    CorefAnnotation,
    CorpusTag,
    MentionKind,
    RawSentence,
    ScuCluster,
    SentencePairInstance,
    SentenceText,
    SpanAlignmentRecord,
    Split,
    Topic,
)

SentKey = tuple[str, str]


def rouge2(a: list[str], b: list[str]) -> float:
    """Clipped bigram-overlap F1 over lowercased tokens, no stemming.

    Under two tokens there are no bigrams: identical token lists score 1.0,
    anything else 0.0."""
    la = [t.lower() for t in a]
    lb = [t.lower() for t in b]
    if len(la) < 2 or len(lb) < 2:
        return 1.0 if la == lb else 0.0
    ga = Counter(zip(la, la[1:]))
    gb = Counter(zip(lb, lb[1:]))
    overlap = sum(min(ga[g], gb[g]) for g in ga)
    # same value as the harmonic mean of overlap/|ga| and overlap/|gb|
    return 2 * overlap / (len(la) - 1 + len(lb) - 1)


def span_iou(spans_a: list[AnswerSpan], spans_b: list[AnswerSpan]) -> float:
    """Token-coverage intersection over union of two span sets."""
    cov_a = {i for s in spans_a for i in s.indices()}
    cov_b = {i for s in spans_b for i in s.indices()}
    union = cov_a | cov_b
    if not union:
        return 0.0
    return len(cov_a & cov_b) / len(union)


class SentenceStore:
    """Sentence lookup plus predecessor-context derivation in file order."""

    def __init__(self, sentences: list[RawSentence]):
        self.by_key: dict[SentKey, RawSentence] = {}
        self._prev: dict[SentKey, RawSentence | None] = {}
        last_in_doc: dict[str, RawSentence] = {}
        for s in sentences:
            key = (s.doc_id, s.sent_id)
            if key in self.by_key:
                raise ValueError(f"duplicate sentence {key}")
            self.by_key[key] = s
            self._prev[key] = last_in_doc.get(s.doc_id)
            last_in_doc[s.doc_id] = s

    def get(self, doc_id: str, sent_id: str) -> RawSentence:
        try:
            return self.by_key[(doc_id, sent_id)]
        except KeyError:
            raise ValueError(f"unknown sentence {doc_id!r}/{sent_id!r}") from None

    def text(self, doc_id: str, sent_id: str, tag: CorpusTag) -> SentenceText:
        s = self.get(doc_id, sent_id)
        if s.context_tokens is not None:
            context = s.context_tokens
        else:
            prev = self._prev[(doc_id, sent_id)]
            context = prev.tokens if prev is not None else []
        return SentenceText(
            doc_id=doc_id,
            sent_id=sent_id,
            tokens=s.tokens,
            context_tokens=context,
            corpus_tag=tag,
        )


def _make_pair(
    prefix: str,
    store: SentenceStore,
    key_a: SentKey,
    key_b: SentKey,
    tag: CorpusTag,
    split: Split,
) -> SentencePairInstance:
    key_a, key_b = sorted((key_a, key_b))
    a = store.get(*key_a)
    b = store.get(*key_b)
    return SentencePairInstance(
        pair_id=f"{prefix}:{key_a[0]}:{key_a[1]}:{key_b[0]}:{key_b[1]}",
        split=split,
        a=store.text(*key_a, tag),
        b=store.text(*key_b, tag),
        qas_a=a.qas,
        qas_b=b.qas,
    )


def _event_clusters_by_sentence(index: _Index) -> dict[SentKey, set[str]]:
    out: dict[SentKey, set[str]] = {}
    for key, mentions in index.by_sentence.items():
        clusters = {cid for m, cid in mentions if m.kind == MentionKind.EVENT}
        if clusters:
            out[key] = clusters
    return out


def build_ecb_pairs(
    sentences: list[RawSentence],
    coref: CorefAnnotation,
    topics: list[Topic],
    top_k: int = 6,
    bottom_k: int = 2,
    max_rouge2: float = 0.9,
) -> list[SentencePairInstance]:
    """Cross-document pairs within a topic sharing coreferring events.

    Per topic: rank candidates by shared event-cluster count (descending),
    keep the top 6 and the bottom 2, then drop near-duplicates with
    ROUGE-2 above the cap."""
    store = SentenceStore(sentences)
    topics_by_id = {t.topic_id: t for t in topics}
    topic_of: dict[str, Topic] = {}
    for t in topics:
        for doc in t.doc_ids:
            topic_of[doc] = t
    missing = sorted({s.doc_id for s in sentences if s.doc_id not in topic_of})
    if missing:
        raise ValueError(f"documents missing from topics: {missing}")

    events = _event_clusters_by_sentence(build_index(coref))
    by_topic: dict[str, list[SentKey]] = {}
    for s in sentences:
        key = (s.doc_id, s.sent_id)
        if key in events:
            by_topic.setdefault(topic_of[s.doc_id].topic_id, []).append(key)

    out: list[SentencePairInstance] = []
    for topic_id in sorted(by_topic):
        keys = by_topic[topic_id]
        candidates: list[tuple[int, SentKey, SentKey]] = []
        for i, ka in enumerate(keys):
            for kb in keys[i + 1 :]:
                if ka[0] == kb[0]:
                    continue
                shared = len(events[ka] & events[kb])
                if shared:
                    candidates.append((shared, *sorted((ka, kb))))
        # stable rank: most shared clusters first, then pair key
        candidates.sort(key=lambda c: (-c[0], c[1], c[2]))
        picked = candidates[:top_k] + candidates[max(top_k, len(candidates) - bottom_k):]
        split = topics_by_id[topic_id].split
        for _, ka, kb in picked:
            pair = _make_pair(f"ecb:{topic_id}", store, ka, kb, CorpusTag.ECB, split)
            if rouge2(pair.a.tokens, pair.b.tokens) > max_rouge2:
                continue
            out.append(pair)
    out.sort(key=lambda p: p.pair_id)
    return out


def build_duc_pairs(
    clusters: list[ScuCluster], sentences: list[RawSentence]
) -> list[SentencePairInstance]:
    """Every unordered pair of sentences contributing to one SCU cluster,
    deduplicated across clusters. No similarity filter."""
    store = SentenceStore(sentences)
    seen: set[tuple[SentKey, SentKey]] = set()
    out: list[SentencePairInstance] = []
    for cluster in clusters:
        keys = sorted({(c.doc_id, c.sent_id) for c in cluster.contributors})
        for i, ka in enumerate(keys):
            for kb in keys[i + 1 :]:
                if (ka, kb) in seen:
                    continue
                seen.add((ka, kb))
                out.append(
                    _make_pair("duc", store, ka, kb, CorpusTag.DUC, cluster.split)
                )
    out.sort(key=lambda p: p.pair_id)
    return out


def build_mn_pairs(
    records: list[SpanAlignmentRecord],
    sentences: list[RawSentence],
    min_iou: float = 0.1,
) -> list[SentencePairInstance]:
    """Document-sentence pairs anchored to the same summary sentence, kept
    when the token IOU of their summary span sets reaches the floor."""
    store = SentenceStore(sentences)
    by_anchor: dict[SentKey, list[SpanAlignmentRecord]] = {}
    for rec in records:
        by_anchor.setdefault((rec.summary_doc_id, rec.summary_sent_id), []).append(rec)

    seen: set[tuple[SentKey, SentKey]] = set()
    out: list[SentencePairInstance] = []
    for anchor in sorted(by_anchor):
        recs = by_anchor[anchor]
        for i, ra in enumerate(recs):
            for rb in recs[i + 1 :]:
                ka = (ra.doc_id, ra.sent_id)
                kb = (rb.doc_id, rb.sent_id)
                if ka == kb:
                    continue
                if span_iou(ra.spans, rb.spans) < min_iou:
                    continue
                key = tuple(sorted((ka, kb)))
                if key in seen:
                    continue
                seen.add(key)
                out.append(
                    _make_pair("mn", store, ka, kb, CorpusTag.MN, ra.split)
                )
    out.sort(key=lambda p: p.pair_id)
    return out
