"""Shared hypothesis strategies and small builders used across test modules."""

import string

from hypothesis import strategies as st

from qaalign.models import (
    Alignment,
    AlignmentSet,
    AnswerSpan,
    Provenance,
    QARelation,
    SentencePairInstance,
    SentenceText,
    Split,
)

# Lowercase-ascii words can never collide with marker tokens like "[P]".
word = st.text(alphabet=string.ascii_lowercase, min_size=1, max_size=8)


def token_lists(min_size: int = 1, max_size: int = 12):
    return st.lists(word, min_size=min_size, max_size=max_size)


@st.composite
def spans_within(draw, n_tokens: int):
    start = draw(st.integers(0, n_tokens - 1))
    end = draw(st.integers(start + 1, n_tokens))
    return AnswerSpan(start=start, end=end)


@st.composite
def qa_relations(draw, n_tokens: int, qa_id: str = "q0"):
    question = draw(token_lists(1, 6))
    return QARelation(
        qa_id=qa_id,
        predicate_index=draw(st.integers(0, n_tokens - 1)),
        question_tokens=question,
        question_predicate_index=draw(st.integers(0, len(question) - 1)),
        answers=draw(st.lists(spans_within(n_tokens), min_size=1, max_size=3)),
    )


@st.composite
def sentences(draw, doc_id: str = "doc", sent_id: str = "0"):
    return SentenceText(
        doc_id=doc_id,
        sent_id=sent_id,
        tokens=draw(token_lists(1, 12)),
        context_tokens=draw(token_lists(0, 5)),
    )


@st.composite
def pair_instances(draw, max_qas: int = 3):
    a = draw(sentences(doc_id="da"))
    b = draw(sentences(doc_id="db"))
    qas_a = [
        draw(qa_relations(len(a.tokens), f"qa{i}"))
        for i in range(draw(st.integers(0, max_qas)))
    ]
    qas_b = [
        draw(qa_relations(len(b.tokens), f"qb{i}"))
        for i in range(draw(st.integers(0, max_qas)))
    ]
    return SentencePairInstance(
        pair_id="hyp:0", split=Split.TRAIN, a=a, b=b, qas_a=qas_a, qas_b=qas_b
    )


LEFT_IDS = tuple(f"a{i}" for i in range(5))
RIGHT_IDS = tuple(f"b{i}" for i in range(5))


@st.composite
def alignments(draw):
    left = draw(st.lists(st.sampled_from(LEFT_IDS), min_size=1, max_size=3, unique=True))
    right = draw(st.lists(st.sampled_from(RIGHT_IDS), min_size=1, max_size=3, unique=True))
    return Alignment.of(left, right)


@st.composite
def alignment_sets(draw, pair_id: str = "hyp:0", provenance: Provenance = Provenance.GOLD):
    return AlignmentSet.of(pair_id, provenance, draw(st.lists(alignments(), max_size=4)))


def simple_sentence(tokens: str, doc_id: str = "d", sent_id: str = "0") -> SentenceText:
    return SentenceText(doc_id=doc_id, sent_id=sent_id, tokens=tokens.split())


def simple_qa(qa_id: str, pred: int, question: str, qpred: int, *spans) -> QARelation:
    return QARelation(
        qa_id=qa_id,
        predicate_index=pred,
        question_tokens=question.split(),
        question_predicate_index=qpred,
        answers=[AnswerSpan(start=s, end=e) for s, e in spans],
    )
