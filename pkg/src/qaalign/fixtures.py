"""Bundled sentence-pair, coreference, and fusion fixtures.

These small hand-built instances back `align selfcheck` and the test
suite. Each function returns a fresh object; nothing here touches disk.
"""

from __future__ import annotations

from .models import (
    Alignment,
    AlignmentSet,
    AnswerSpan,
    CorefAnnotation,
    CorefCluster,
    CorefMention,
    FusionInstance,
    FusionOutput,
    FusionPairAlignments,
    MentionKind,
    Provenance,
    QARelation,
    SentencePairInstance,
    SentenceText,
    Split,
)


def _span(start: int, end: int) -> AnswerSpan:
    return AnswerSpan(start=start, end=end)


# --- painting pair: same sale described from the buyer and seller side.
# The lemma baseline finds nothing here (purchase vs sell) even though
# both argument roles align.


def painting_pair() -> SentencePairInstance:
    a = SentenceText(
        doc_id="painting-buy",
        sent_id="0",
        tokens="Wade purchased the painting for $7 million .".split(),
    )
    b = SentenceText(
        doc_id="painting-sell",
        sent_id="0",
        tokens="The auction house sold the painting to Wade for $7 million .".split(),
    )
    qas_a = [
        QARelation(
            qa_id="pa-1",
            predicate_index=1,
            question_tokens="Who purchased something ?".split(),
            question_predicate_index=1,
            answers=[_span(0, 1)],
        ),
        QARelation(
            qa_id="pa-2",
            predicate_index=1,
            question_tokens="What did someone purchase ?".split(),
            question_predicate_index=3,
            answers=[_span(2, 4)],
        ),
    ]
    qas_b = [
        QARelation(
            qa_id="pb-1",
            predicate_index=3,
            question_tokens="Who did someone sell something to ?".split(),
            question_predicate_index=3,
            answers=[_span(7, 8)],
        ),
        QARelation(
            qa_id="pb-2",
            predicate_index=3,
            question_tokens="What did someone sell ?".split(),
            question_predicate_index=3,
            answers=[_span(4, 6)],
        ),
    ]
    return SentencePairInstance(
        pair_id="painting:0",
        split=Split.DEV,
        a=a,
        b=b,
        qas_a=qas_a,
        qas_b=qas_b,
    )


def painting_gold() -> AlignmentSet:
    return AlignmentSet.of(
        "painting:0",
        Provenance.GOLD,
        [
            Alignment.of(["pa-1"], ["pb-1"]),
            Alignment.of(["pa-2"], ["pb-2"]),
        ],
    )


# --- coach pair: the same firing reported by two outlets. The lemma
# baseline aligns the single QA pair (fire/fired, Cheeks/Cheeks).


def coach_pair() -> SentencePairInstance:
    a = SentenceText(
        doc_id="coach-dpa",
        sent_id="0",
        tokens=(
            "The Philadelphia 76ers fired coach Maurice Cheeks on Saturday , "
            "one day after the team continued its slide with a season-worst "
            "offensive effort , dpa reported ."
        ).split(),
    )
    b = SentenceText(
        doc_id="coach-column",
        sent_id="1",
        tokens=(
            "Today , Maurice Cheeks became the fifth coach fired within the "
            "first quarter of the season ."
        ).split(),
        context_tokens=(
            "If you do n't know by now : you disappoint in the NBA , "
            "you get canned ."
        ).split(),
    )
    qas_a = [
        QARelation(
            qa_id="ca-1",
            predicate_index=3,
            question_tokens="Who did someone fire ?".split(),
            question_predicate_index=3,
            answers=[_span(4, 7)],
        )
    ]
    qas_b = [
        QARelation(
            qa_id="cb-1",
            predicate_index=8,
            question_tokens="Who was fired ?".split(),
            question_predicate_index=2,
            answers=[_span(2, 4)],
        )
    ]
    return SentencePairInstance(
        pair_id="coach:0",
        split=Split.DEV,
        a=a,
        b=b,
        qas_a=qas_a,
        qas_b=qas_b,
    )


def coach_gold() -> AlignmentSet:
    return AlignmentSet.of(
        "coach:0",
        Provenance.GOLD,
        [Alignment.of(["ca-1"], ["cb-1"])],
    )


# --- parade pair: within-document entity coreference ("The man" / "he")
# gives two QAs for the same argument, so coreference induction emits two
# alignments onto one target QA.


def parade_pair() -> SentencePairInstance:
    a = SentenceText(
        doc_id="parade-1",
        sent_id="0",
        tokens="The man said that he came early .".split(),
    )
    b = SentenceText(
        doc_id="parade-2",
        sent_id="0",
        tokens="The man arrived at noon .".split(),
    )
    qas_a = [
        QARelation(
            qa_id="ra-1",
            predicate_index=5,
            question_tokens="Who came ?".split(),
            question_predicate_index=1,
            answers=[_span(0, 2)],
        ),
        QARelation(
            qa_id="ra-2",
            predicate_index=5,
            question_tokens="Who came ?".split(),
            question_predicate_index=1,
            answers=[_span(4, 5)],
        ),
    ]
    qas_b = [
        QARelation(
            qa_id="rb-1",
            predicate_index=2,
            question_tokens="Who arrived ?".split(),
            question_predicate_index=1,
            answers=[_span(0, 2)],
        )
    ]
    return SentencePairInstance(
        pair_id="parade:0",
        split=Split.DEV,
        a=a,
        b=b,
        qas_a=qas_a,
        qas_b=qas_b,
    )


def parade_gold() -> AlignmentSet:
    return AlignmentSet.of(
        "parade:0",
        Provenance.GOLD,
        [Alignment.of(["ra-1"], ["rb-1"])],
    )


def parade_coref() -> CorefAnnotation:
    mentions = [
        CorefMention(
            mention_id="p-ev-a",
            doc_id="parade-1",
            sent_id="0",
            span=_span(5, 6),
            kind=MentionKind.EVENT,
        ),
        CorefMention(
            mention_id="p-ev-b",
            doc_id="parade-2",
            sent_id="0",
            span=_span(2, 3),
            kind=MentionKind.EVENT,
        ),
        CorefMention(
            mention_id="p-man-a",
            doc_id="parade-1",
            sent_id="0",
            span=_span(0, 2),
            kind=MentionKind.ENTITY,
        ),
        CorefMention(
            mention_id="p-he-a",
            doc_id="parade-1",
            sent_id="0",
            span=_span(4, 5),
            kind=MentionKind.ENTITY,
        ),
        CorefMention(
            mention_id="p-man-b",
            doc_id="parade-2",
            sent_id="0",
            span=_span(0, 2),
            kind=MentionKind.ENTITY,
        ),
    ]
    clusters = [
        CorefCluster(
            cluster_id="p-ev",
            kind=MentionKind.EVENT,
            mention_ids=["p-ev-a", "p-ev-b"],
        ),
        CorefCluster(
            cluster_id="p-man",
            kind=MentionKind.ENTITY,
            mention_ids=["p-man-a", "p-he-a", "p-man-b"],
        ),
    ]
    return CorefAnnotation(mentions=mentions, clusters=clusters)


# --- driver pair: the charge reported as a headline and as body text.
# Coreference induction recovers the who-argument (Driver/driver entity
# mentions) but not the why-argument, whose clause answers contain no
# entity mention at all.


def driver_pair() -> SentencePairInstance:
    a = SentenceText(
        doc_id="driver-head",
        sent_id="0",
        tokens="Woman Killed In Queens Crash , Driver Charged".split(),
    )
    b = SentenceText(
        doc_id="driver-body",
        sent_id="0",
        tokens=(
            "Prosecutors filed charges against the driver after a woman "
            "was killed in the crash ."
        ).split(),
    )
    qas_a = [
        QARelation(
            qa_id="da-1",
            predicate_index=7,
            question_tokens="Who was charged with something ?".split(),
            question_predicate_index=2,
            answers=[_span(6, 7)],
        ),
        QARelation(
            qa_id="da-2",
            predicate_index=7,
            question_tokens="Why was someone charged with something ?".split(),
            question_predicate_index=3,
            answers=[_span(0, 2)],
        ),
    ]
    qas_b = [
        QARelation(
            qa_id="db-1",
            predicate_index=1,
            question_tokens="Who did someone file something against ?".split(),
            question_predicate_index=3,
            answers=[_span(4, 6)],
        ),
        QARelation(
            qa_id="db-2",
            predicate_index=1,
            question_tokens="Why did someone file something ?".split(),
            question_predicate_index=3,
            answers=[_span(7, 11)],
        ),
    ]
    return SentencePairInstance(
        pair_id="driver:0",
        split=Split.DEV,
        a=a,
        b=b,
        qas_a=qas_a,
        qas_b=qas_b,
    )


def driver_gold() -> AlignmentSet:
    return AlignmentSet.of(
        "driver:0",
        Provenance.GOLD,
        [
            Alignment.of(["da-1"], ["db-1"]),
            Alignment.of(["da-2"], ["db-2"]),
        ],
    )


def driver_coref() -> CorefAnnotation:
    mentions = [
        CorefMention(
            mention_id="d-ev-a",
            doc_id="driver-head",
            sent_id="0",
            span=_span(7, 8),
            kind=MentionKind.EVENT,
        ),
        CorefMention(
            mention_id="d-ev-b",
            doc_id="driver-body",
            sent_id="0",
            span=_span(1, 2),
            kind=MentionKind.EVENT,
        ),
        CorefMention(
            mention_id="d-drv-a",
            doc_id="driver-head",
            sent_id="0",
            span=_span(6, 7),
            kind=MentionKind.ENTITY,
        ),
        CorefMention(
            mention_id="d-drv-b",
            doc_id="driver-body",
            sent_id="0",
            span=_span(5, 6),
            kind=MentionKind.ENTITY,
        ),
    ]
    clusters = [
        CorefCluster(
            cluster_id="d-ev",
            kind=MentionKind.EVENT,
            mention_ids=["d-ev-a", "d-ev-b"],
        ),
        CorefCluster(
            cluster_id="d-drv",
            kind=MentionKind.ENTITY,
            mention_ids=["d-drv-a", "d-drv-b"],
        ),
    ]
    return CorefAnnotation(mentions=mentions, clusters=clusters)


# --- display pair: a light-verb construction, so the gold alignment
# groups one QA on the left with two QAs on the right.


def display_pair() -> SentencePairInstance:
    a = SentenceText(
        doc_id="display-1",
        sent_id="0",
        tokens="The owner hopes to display the painting .".split(),
    )
    b = SentenceText(
        doc_id="display-2",
        sent_id="0",
        tokens="He hopes the Picasso painting will go on display tomorrow .".split(),
    )
    qas_a = [
        QARelation(
            qa_id="la-1",
            predicate_index=4,
            question_tokens="What might someone display ?".split(),
            question_predicate_index=3,
            answers=[_span(5, 7)],
        )
    ]
    qas_b = [
        QARelation(
            qa_id="lb-1",
            predicate_index=6,
            question_tokens="What will something go on ?".split(),
            question_predicate_index=3,
            answers=[_span(8, 9)],
        ),
        QARelation(
            qa_id="lb-2",
            predicate_index=6,
            question_tokens="What will go on something ?".split(),
            question_predicate_index=2,
            answers=[_span(2, 5)],
        ),
    ]
    return SentencePairInstance(
        pair_id="display:0",
        split=Split.DEV,
        a=a,
        b=b,
        qas_a=qas_a,
        qas_b=qas_b,
    )


def display_gold() -> AlignmentSet:
    return AlignmentSet.of(
        "display:0",
        Provenance.GOLD,
        [Alignment.of(["la-1"], ["lb-1", "lb-2"])],
    )


# --- dogs fusion cluster: three sources, two of which share the
# use/dogs proposition. The fused output draws exclusively-owned words
# from sources 0 and 2; the baseline output copies source 1.


def dogs_fusion() -> FusionInstance:
    s0 = SentenceText(
        doc_id="dogs-1",
        sent_id="0",
        tokens="Law enforcement agencies use dogs worldwide .".split(),
    )
    s1 = SentenceText(
        doc_id="dogs-2",
        sent_id="0",
        tokens="Dogs perform many different law-enforcement tasks around the world .".split(),
    )
    s2 = SentenceText(
        doc_id="dogs-3",
        sent_id="0",
        tokens=(
            "City and county police agencies , customs departments , fire "
            "departments , the Secret Service , highway patrol , border patrol , "
            "military bases and some prisons in the US and many other countries "
            "use dogs to help in police work ."
        ).split(),
    )
    qa0 = QARelation(
        qa_id="f0-1",
        predicate_index=3,
        question_tokens="What does someone use ?".split(),
        question_predicate_index=3,
        answers=[_span(4, 5)],
    )
    qa2 = QARelation(
        qa_id="f2-1",
        predicate_index=34,
        question_tokens="What does someone use ?".split(),
        question_predicate_index=3,
        answers=[_span(35, 36)],
    )
    return FusionInstance(
        cluster_id="dogs",
        sources=[s0, s1, s2],
        source_qas=[[qa0], [], [qa2]],
        target="Law enforcement agencies use dogs to help in law enforcement".split(),
        pair_alignments=[
            FusionPairAlignments(left_source=0, right_source=1),
            FusionPairAlignments(
                left_source=0,
                right_source=2,
                alignments=(Alignment.of(["f0-1"], ["f2-1"]),),
            ),
            FusionPairAlignments(left_source=1, right_source=2),
        ],
    )


def dogs_fused_output() -> FusionOutput:
    return FusionOutput(
        cluster_id="dogs",
        tokens="Law enforcement agencies use dogs to help in law enforcement".split(),
    )


def dogs_baseline_output() -> FusionOutput:
    return FusionOutput(
        cluster_id="dogs",
        tokens="Dogs perform many different law-enforcement tasks around the world".split(),
    )


def pair_fixtures() -> list[tuple[SentencePairInstance, AlignmentSet]]:
    """Every bundled sentence pair with its gold alignments."""
    return [
        (painting_pair(), painting_gold()),
        (coach_pair(), coach_gold()),
        (parade_pair(), parade_gold()),
        (driver_pair(), driver_gold()),
        (display_pair(), display_gold()),
    ]
