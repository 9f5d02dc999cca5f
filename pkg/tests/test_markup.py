"""Candidate text serialization: marker placement, nesting, and recovery."""

import pytest
from hypothesis import given

from conftest import qa_relations, sentences, simple_qa, simple_sentence
from qaalign import fixtures
from qaalign.markup import (
    ANSWER_CLOSE,
    ANSWER_OPEN,
    OwnershipError,
    PRED_CLOSE,
    PRED_OPEN,
    QUESTION_SEP,
    candidate_texts,
    serialize_candidate,
    strip_markup,
)
from qaalign.models import AnswerSpan

COACH_A = (
    "Who did someone [P] fire [/P] ? [Q] The Philadelphia 76ers [P] fired [/P] "
    "[A] coach Maurice Cheeks [/A] on Saturday , one day after the team continued "
    "its slide with a season-worst offensive effort , dpa reported ."
)


def test_reference_sentence_serializes_exactly():
    pair = fixtures.coach_pair()
    assert serialize_candidate(pair.qa_a("ca-1"), pair.a) == COACH_A


def test_context_tokens_precede_the_sentence():
    pair = fixtures.coach_pair()
    text = serialize_candidate(pair.qa_b("cb-1"), pair.b)
    assert text == (
        "Who was [P] fired [/P] ? [Q] If you do n't know by now : you disappoint "
        "in the NBA , you get canned . Today , [A] Maurice Cheeks [/A] became the "
        "fifth coach [P] fired [/P] within the first quarter of the season ."
    )
    # Context is plain text: no markers before the [Q]-side predicate wrap.
    ctx = text.split(" Today ,")[0]
    assert PRED_OPEN not in ctx.split(QUESTION_SEP)[1]


def test_single_token_sentence_where_answer_covers_predicate():
    sent = simple_sentence("w")
    qa = simple_qa("q", 0, "w", 0, (0, 1))
    assert serialize_candidate(qa, sent) == "[P] w [/P] [Q] [A] [P] w [/P] [/A]"


def test_answer_opens_before_predicate_and_closes_after():
    sent = simple_sentence("a b c d e")
    qa = simple_qa("q", 2, "what ?", 0, (1, 4))
    text = serialize_candidate(qa, sent)
    assert "[A] b [P] c [/P] d [/A]" in text


def test_disjoint_answer_spans_each_get_markers():
    sent = simple_sentence("a b c d e")
    qa = simple_qa("q", 0, "what ?", 0, (1, 2), (3, 5))
    text = serialize_candidate(qa, sent)
    assert text.count(ANSWER_OPEN) == 2
    assert text.count(ANSWER_CLOSE) == 2
    assert "[A] b [/A]" in text
    assert "[A] d e [/A]" in text


def test_strip_markup_recovers_plain_tokens():
    pair = fixtures.coach_pair()
    text = serialize_candidate(pair.qa_a("ca-1"), pair.a)
    qa = pair.qa_a("ca-1")
    expected = qa.question_tokens + pair.a.context_tokens + pair.a.tokens
    assert strip_markup(text) == expected


@given(sentences(), qa_relations(12))
def test_markers_always_balanced(sent, qa):
    if qa.predicate_index >= len(sent.tokens):
        return
    if any(s.end > len(sent.tokens) for s in qa.answers):
        return
    toks = serialize_candidate(qa, sent).split(" ")
    assert toks.count(QUESTION_SEP) == 1
    assert toks.count(PRED_OPEN) == 2
    assert toks.count(PRED_CLOSE) == 2
    assert toks.count(ANSWER_OPEN) == len(qa.answers)
    assert toks.count(ANSWER_CLOSE) == len(qa.answers)
    assert strip_markup(" ".join(toks)) == (
        qa.question_tokens + sent.context_tokens + sent.tokens
    )


def test_predicate_index_out_of_range_raises():
    sent = simple_sentence("a b")
    qa = simple_qa("q", 5, "who ?", 0, (0, 1))
    with pytest.raises(OwnershipError):
        serialize_candidate(qa, sent)


def test_answer_span_out_of_range_raises():
    sent = simple_sentence("a b")
    qa = simple_qa("q", 0, "who ?", 0, (0, 9))
    with pytest.raises(OwnershipError):
        serialize_candidate(qa, sent)


def test_question_predicate_index_out_of_range_raises():
    sent = simple_sentence("a b")
    qa = simple_qa("q", 0, "who ?", 7, (0, 1))
    with pytest.raises(OwnershipError):
        serialize_candidate(qa, sent)


def test_reversed_span_raises():
    sent = simple_sentence("a b c")
    qa = simple_qa("q", 0, "who ?", 0, (0, 1))
    qa = qa.model_copy(update={"answers": [AnswerSpan(start=2, end=1)]})
    with pytest.raises(OwnershipError):
        serialize_candidate(qa, sent)


def test_candidate_texts_returns_both_sides():
    pair = fixtures.coach_pair()
    text_a, text_b = candidate_texts(
        pair.qa_a("ca-1"), pair.a, pair.qa_b("cb-1"), pair.b
    )
    assert text_a == COACH_A
    assert text_b.startswith("Who was [P] fired [/P] ? [Q]")
