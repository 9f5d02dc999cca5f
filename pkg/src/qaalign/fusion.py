"""Alignment-augmented fusion inputs and consolidation analysis.

augment() wraps aligned predicates and argument spans with indexed markers
("[P1] use [\\P1]", "[A1] dogs [\\A1]") so a generation model can see which
pieces of different source sentences assert the same thing. Spans linked
by any alignment, directly or transitively, form one component and share
one index. Indices count P and A components separately, in order of first
appearance in the emitted text; sources are joined by the "</s>" token.
Questions and context are not emitted.

The consolidation side classifies a fused output: it consolidates when at
least two different sources each contribute a content word that no other
source contains (matched by lemma).
"""

from __future__ import annotations

import re

from .lemma import lemmatize
from .models import (
    ConsolidationReport,
    FusionInstance,
    SentenceText,
)

SOURCE_SEP = "</s>"

_MARKER_RE = re.compile(r"^\[\\?[PA]\d+\]$")


class FusionMarkupError(ValueError):
    """Same-kind spans cross without containment; markup would be ambiguous."""


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, key) -> None:
        self.parent.setdefault(key, key)

    def find(self, key):
        root = key
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[key] != root:
            self.parent[key], key = root, self.parent[key]
        return root

    def union(self, a, b) -> None:
        self.add(a)
        self.add(b)
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # deterministic root: smaller key wins
            lo, hi = sorted((ra, rb))
            self.parent[hi] = lo


def _check_instance(inst: FusionInstance) -> None:
    if not 2 <= len(inst.sources) <= 4:
        raise ValueError(
            f"{inst.cluster_id}: expected 2-4 sources, got {len(inst.sources)}"
        )
    if len(inst.source_qas) != len(inst.sources):
        raise ValueError(
            f"{inst.cluster_id}: {len(inst.source_qas)} QA lists for {len(inst.sources)} sources"
        )
    for fpa in inst.pair_alignments:
        for idx in (fpa.left_source, fpa.right_source):
            if not 0 <= idx < len(inst.sources):
                raise ValueError(f"{inst.cluster_id}: source index {idx} out of range")
        if fpa.left_source == fpa.right_source:
            raise ValueError(
                f"{inst.cluster_id}: alignment within source {fpa.left_source}"
            )


def _components(inst: FusionInstance) -> tuple[_UnionFind, _UnionFind]:
    preds = _UnionFind()
    args = _UnionFind()
    for fpa in inst.pair_alignments:
        ls, rs = fpa.left_source, fpa.right_source
        for al in fpa.alignments:
            for l_id in al.left:
                qa_l = inst.qa(ls, l_id)
                for r_id in al.right:
                    qa_r = inst.qa(rs, r_id)
                    preds.union(
                        (ls, qa_l.predicate_index), (rs, qa_r.predicate_index)
                    )
                    for sa in qa_l.answers:
                        for sb in qa_r.answers:
                            args.union(
                                (ls, sa.start, sa.end), (rs, sb.start, sb.end)
                            )
    return preds, args


def _resolve_spans(
    spans: list[tuple[int, int, tuple]], cluster_id: str, source_index: int, tokens: list[str]
) -> list[tuple[int, int, tuple]]:
    """Outermost-wins for contained same-kind spans; crossing is an error."""
    ordered = sorted(spans, key=lambda s: (s[0], -s[1]))
    kept: list[tuple[int, int, tuple]] = []
    for start, end, key in ordered:
        contained = False
        for ks, ke, _ in kept:
            if ks <= start and end <= ke:
                contained = True
                break
            if ks < start < ke < end:
                raise FusionMarkupError(
                    f"{cluster_id}: source {source_index} spans cross at "
                    f"tokens {tokens[start:ke]!r}"
                )
        if not contained:
            kept.append((start, end, key))
    return kept


def augment(inst: FusionInstance) -> str:
    _check_instance(inst)
    preds, args = _components(inst)

    # occurrences per source, already resolved to non-overlapping spans
    per_source: list[tuple[list[tuple[int, int, tuple]], list[tuple[int, int, tuple]]]] = []
    for si, sent in enumerate(inst.sources):
        p_spans = [
            (idx, idx + 1, key)
            for key in preds.parent
            if key[0] == si
            for idx in [key[1]]
        ]
        a_spans = [(key[1], key[2], key) for key in args.parent if key[0] == si]
        per_source.append(
            (
                _resolve_spans(p_spans, inst.cluster_id, si, sent.tokens),
                _resolve_spans(a_spans, inst.cluster_id, si, sent.tokens),
            )
        )

    p_index: dict = {}
    a_index: dict = {}

    def index_of(table: dict, uf: _UnionFind, key) -> int:
        root = uf.find(key)
        if root not in table:
            table[root] = len(table) + 1
        return table[root]

    parts: list[str] = []
    for si, sent in enumerate(inst.sources):
        if si:
            parts.append(SOURCE_SEP)
        p_spans, a_spans = per_source[si]
        p_open = {s: key for s, _, key in p_spans}
        p_close = {e - 1: key for _, e, key in p_spans}
        a_open = {s: key for s, _, key in a_spans}
        a_close = {e - 1: key for _, e, key in a_spans}
        for i, tok in enumerate(sent.tokens):
            if i in a_open:
                parts.append(f"[A{index_of(a_index, args, a_open[i])}]")
            if i in p_open:
                parts.append(f"[P{index_of(p_index, preds, p_open[i])}]")
            parts.append(tok)
            if i in p_close:
                parts.append(f"[\\P{p_index[preds.find(p_close[i])]}]")
            if i in a_close:
                parts.append(f"[\\A{a_index[args.find(a_close[i])]}]")
    return " ".join(parts)


def strip_fusion_markup(text: str) -> list[str]:
    return [
        tok
        for tok in text.split(" ")
        if tok != SOURCE_SEP and not _MARKER_RE.match(tok)
    ]


# Function words that cannot serve as consolidation evidence on their own.
FUSION_STOPLIST = frozenset(
    """
    the a an and or but not no of in on at to for with by from as is are
    was were be been being am do does did have has had will would can
    could should may might must it its this that these those he she they
    them his her their we you i me my your our us who which what when
    where 's n't there here
    """.split()
)


def _tokens_of(source) -> list[str]:
    if isinstance(source, SentenceText):
        return source.tokens
    return list(source)


def link_output_words(output: list[str], sources: list) -> list[list[int]]:
    """For each output word, the source indices holding a lemma-equal token."""
    lemma_sets = [
        {lemmatize(t) for t in _tokens_of(src)} for src in sources
    ]
    out: list[list[int]] = []
    for word in output:
        lemma = lemmatize(word)
        out.append([si for si, lemmas in enumerate(lemma_sets) if lemma in lemmas])
    return out


def _is_content(word: str) -> bool:
    return word.lower() not in FUSION_STOPLIST and any(c.isalnum() for c in word)


def classify_consolidating(output: list[str], sources: list) -> ConsolidationReport:
    contributors = link_output_words(output, sources)
    exclusive: set[int] = set()
    for word, who in zip(output, contributors):
        if len(who) == 1 and _is_content(word):
            exclusive.add(who[0])
    return ConsolidationReport(
        per_word_contributors=contributors,
        is_consolidating=len(exclusive) >= 2,
        contributing_sources=sorted(exclusive),
    )


def consolidation_rate(reports: list[ConsolidationReport]) -> float:
    if not reports:
        return 0.0
    return sum(r.is_consolidating for r in reports) / len(reports)
