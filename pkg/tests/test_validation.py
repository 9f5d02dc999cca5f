"""Semantic validation: violations come back as data, never as exceptions."""

from hypothesis import given

from conftest import pair_instances, simple_qa, simple_sentence
from qaalign.models import (
    Alignment,
    AlignmentSet,
    AnswerSpan,
    Provenance,
    SentencePairInstance,
    SentenceText,
    Split,
)
from qaalign.validation import (
    ERROR,
    WARNING,
    errors,
    validate_alignment_set,
    validate_batch,
    validate_pair,
)


def make_pair(qas_a=(), qas_b=(), tokens_a="a b c d e f", tokens_b="g h i"):
    return SentencePairInstance(
        pair_id="p2",
        split=Split.DEV,
        a=simple_sentence(tokens_a, "da"),
        b=simple_sentence(tokens_b, "db"),
        qas_a=list(qas_a),
        qas_b=list(qas_b),
    )


def test_clean_pair_has_no_violations():
    pair = make_pair([simple_qa("qa", 0, "who is ?", 1, (1, 3))])
    assert validate_pair(pair) == []


def test_out_of_range_answer_span_message():
    pair = make_pair(qas_b=[simple_qa("qb", 0, "who ?", 0, (4, 9))])
    found = [str(v) for v in validate_pair(pair)]
    assert "ERROR p2.b.qb: answers[0] span [4,9) invalid for 3 tokens" in found


def test_predicate_index_out_of_range():
    pair = make_pair([simple_qa("qa", 6, "who ?", 0, (0, 1))])
    msgs = [v.message for v in errors(validate_pair(pair))]
    assert any("predicate_index 6" in m for m in msgs)


def test_question_predicate_index_out_of_range():
    pair = make_pair([simple_qa("qa", 0, "who ?", 5, (0, 1))])
    msgs = [v.message for v in errors(validate_pair(pair))]
    assert any("question_predicate_index 5" in m for m in msgs)


def test_empty_question_and_missing_answers():
    qa = simple_qa("qa", 0, "x", 0, (0, 1))
    qa = qa.model_copy(update={"question_tokens": [], "answers": []})
    pair = make_pair([qa])
    msgs = {v.message for v in errors(validate_pair(pair))}
    assert "empty question_tokens" in msgs
    assert "no answer spans" in msgs


def test_reversed_span_is_an_error():
    qa = simple_qa("qa", 0, "who ?", 0, (0, 1))
    qa = qa.model_copy(update={"answers": [AnswerSpan(start=3, end=2)]})
    pair = make_pair([qa])
    assert errors(validate_pair(pair))


def test_overlapping_answer_spans_warn_only():
    pair = make_pair([simple_qa("qa", 0, "who ?", 0, (0, 3), (2, 4))])
    found = validate_pair(pair)
    assert errors(found) == []
    assert [v.severity for v in found] == [WARNING]


def test_duplicate_qa_id_on_one_side():
    qa = simple_qa("qa", 0, "who ?", 0, (0, 1))
    pair = make_pair([qa, qa])
    msgs = [v.message for v in errors(validate_pair(pair))]
    assert "duplicate qa_id on this side" in msgs


def test_empty_sentence_tokens():
    pair = SentencePairInstance(
        pair_id="p2",
        split=Split.DEV,
        a=SentenceText(doc_id="d", sent_id="0", tokens=[]),
        b=simple_sentence("g h"),
    )
    msgs = [v.message for v in errors(validate_pair(pair))]
    assert "empty sentence tokens" in msgs


@given(pair_instances())
def test_generated_pairs_are_always_clean(pair):
    # The strategies only build in-range indices, so no ERROR should fire;
    # overlapping answers may still warn.
    assert errors(validate_pair(pair)) == []


class TestAlignmentSetRules:
    def _pair(self):
        return make_pair(
            [simple_qa("a1", 0, "who ?", 0, (0, 1)), simple_qa("a2", 1, "who ?", 0, (0, 1))],
            [simple_qa("b1", 0, "who ?", 0, (0, 1)), simple_qa("b2", 1, "who ?", 0, (0, 1))],
        )

    def test_gold_allows_many_to_many(self):
        aset = AlignmentSet.of("p2", Provenance.GOLD, [Alignment.of(["a1", "a2"], ["b1"])])
        assert validate_alignment_set(aset, self._pair()) == []

    def test_lemma_requires_one_to_one(self):
        aset = AlignmentSet.of("p2", Provenance.LEMMA, [Alignment.of(["a1", "a2"], ["b1"])])
        msgs = [v.message for v in errors(validate_alignment_set(aset, self._pair()))]
        assert any("must be 1:1" in m for m in msgs)

    def test_lemma_may_reuse_endpoints_with_warning(self):
        aset = AlignmentSet.of(
            "p2",
            Provenance.LEMMA,
            [Alignment.of(["a1"], ["b1"]), Alignment.of(["a1"], ["b2"])],
        )
        found = validate_alignment_set(aset, self._pair())
        assert errors(found) == []
        assert any(v.severity == WARNING and "a1" in v.message for v in found)

    def test_model_output_must_be_node_disjoint(self):
        aset = AlignmentSet.of(
            "p2",
            Provenance.MODEL,
            [Alignment.of(["a1"], ["b1"]), Alignment.of(["a1"], ["b2"])],
        )
        assert any(
            v.severity == ERROR and "multiple alignments" in v.message
            for v in validate_alignment_set(aset, self._pair())
        )

    def test_unknown_qa_ids_are_errors(self):
        aset = AlignmentSet.of("p2", Provenance.GOLD, [Alignment.of(["nope"], ["b1"])])
        msgs = [v.message for v in errors(validate_alignment_set(aset, self._pair()))]
        assert any("left qa_id 'nope' not in side a" in m for m in msgs)

    def test_empty_side_is_an_error(self):
        aset = AlignmentSet(
            pair_id="p2",
            provenance=Provenance.GOLD,
            alignments=(Alignment(left=(), right=("b1",)),),
        )
        msgs = [v.message for v in errors(validate_alignment_set(aset, self._pair()))]
        assert "alignment with an empty side" in msgs

    def test_pair_id_mismatch(self):
        aset = AlignmentSet.of("other", Provenance.GOLD, [])
        msgs = [v.message for v in errors(validate_alignment_set(aset, self._pair()))]
        assert any("does not match pair" in m for m in msgs)


def test_validate_batch_flags_unknown_pair_id():
    pair = make_pair()
    stray = AlignmentSet.of("ghost", Provenance.GOLD, [])
    found = validate_batch([pair], [stray])
    assert any(v.where == "ghost" and "unknown pair_id" in v.message for v in found)
