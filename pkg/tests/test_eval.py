"""Exact-match F1, zero-denominator conventions, coverage, report shape."""

import pytest
from hypothesis import given

from conftest import alignment_sets
from qaalign.evaluation import (
    PRF,
    agreement,
    build_eval_report,
    corpus_f1,
    coverage,
    covered,
    exact_match_counts,
    exact_match_f1,
)
from qaalign.models import Alignment, AlignmentSet, Provenance


def aset(pair_id, *groups, provenance=Provenance.GOLD):
    return AlignmentSet.of(
        pair_id, provenance, [Alignment.of(l, r) for l, r in groups]
    )


class TestConventions:
    def test_no_predictions_means_perfect_precision(self):
        prf = PRF(tp=0, fp=0, fn=3)
        assert prf.precision == 1.0
        assert prf.recall == 0.0
        assert prf.f1 == 0.0

    def test_no_reference_means_perfect_recall(self):
        prf = PRF(tp=0, fp=3, fn=0)
        assert prf.recall == 1.0
        assert prf.precision == 0.0
        assert prf.f1 == 0.0

    def test_both_empty_is_perfect(self):
        prf = PRF(tp=0, fp=0, fn=0)
        assert (prf.precision, prf.recall, prf.f1) == (1.0, 1.0, 1.0)

    def test_plain_case(self):
        prf = PRF(tp=2, fp=1, fn=2)
        assert prf.precision == pytest.approx(2 / 3)
        assert prf.recall == pytest.approx(0.5)
        assert prf.f1 == pytest.approx(2 * (2 / 3) * 0.5 / (2 / 3 + 0.5))


class TestExactMatch:
    def test_partial_group_overlap_is_not_a_match(self):
        # ("a1","a2")->("b1") vs ("a1")->("b1"): set equality, not subset
        pred = aset("p", (["a1", "a2"], ["b1"]))
        gold = aset("p", (["a1"], ["b1"]))
        prf = exact_match_counts(pred, gold)
        assert (prf.tp, prf.fp, prf.fn) == (0, 1, 1)

    def test_member_order_is_irrelevant(self):
        pred = aset("p", (["a2", "a1"], ["b1"]))
        gold = aset("p", (["a1", "a2"], ["b1"]))
        assert exact_match_counts(pred, gold).f1 == 1.0

    def test_mismatched_pair_ids_raise(self):
        with pytest.raises(ValueError, match="mismatched pairs"):
            exact_match_counts(aset("p"), aset("q"))

    def test_exact_match_f1_is_an_alias(self):
        pred = aset("p", (["a1"], ["b1"]))
        assert exact_match_f1(pred, pred) == exact_match_counts(pred, pred)

    @given(alignment_sets())
    def test_self_comparison_is_perfect(self, s):
        prf = exact_match_counts(s, s)
        assert prf.fp == prf.fn == 0
        assert prf.f1 == 1.0

    @given(alignment_sets(), alignment_sets())
    def test_counts_are_symmetric_under_swap(self, s1, s2):
        fwd = exact_match_counts(s1, s2)
        rev = exact_match_counts(s2, s1)
        assert (fwd.tp, fwd.fp, fwd.fn) == (rev.tp, rev.fn, rev.fp)


class TestCorpus:
    def test_micro_average_sums_counts(self):
        preds = [aset("p1", (["a1"], ["b1"])), aset("p2", (["a1"], ["b2"]))]
        golds = [aset("p1", (["a1"], ["b1"])), aset("p2", (["a1"], ["b1"]))]
        prf = corpus_f1(preds, golds)
        assert (prf.tp, prf.fp, prf.fn) == (1, 1, 1)

    def test_pair_missing_on_one_side_counts_as_empty(self):
        preds = [aset("p1", (["a1"], ["b1"]))]
        golds = [
            aset("p1", (["a1"], ["b1"])),
            aset("p2", (["a1"], ["b1"]), (["a2"], ["b2"])),
        ]
        prf = corpus_f1(preds, golds)
        assert (prf.tp, prf.fp, prf.fn) == (1, 0, 2)

    def test_empty_corpus(self):
        assert corpus_f1([], []).f1 == 1.0


def test_agreement_reports_full_match_flag():
    s1 = aset("p", (["a1"], ["b1"]))
    s2 = aset("p", (["a1"], ["b1"]), (["a2"], ["b2"]))
    got = agreement(s1, s2)
    assert got["full_agreement"] is False
    assert got["f1"] == pytest.approx(2 / 3)
    assert agreement(s1, s1) == {"f1": 1.0, "full_agreement": True}


class TestCoverage:
    def test_subset_containment_on_both_sides(self):
        ref = aset("p", (["a1", "a2"], ["b1", "b2"]))
        assert covered(Alignment.of(["a1"], ["b2"]), ref)
        assert not covered(Alignment.of(["a1"], ["b3"]), ref)

    def test_containment_must_come_from_one_single_ref_group(self):
        ref = aset("p", (["a1"], ["b1"]), (["a2"], ["b2"]))
        assert not covered(Alignment.of(["a1", "a2"], ["b1"]), ref)

    def test_fraction_over_src_alignments(self):
        src = aset("p", (["a1"], ["b1"]), (["a2"], ["b3"]))
        ref = aset("p", (["a1", "a2"], ["b1", "b2"]))
        assert coverage(src, ref) == 0.5

    def test_empty_src_is_vacuously_covered(self):
        assert coverage(aset("p"), aset("p")) == 1.0

    @given(alignment_sets())
    def test_every_set_covers_itself(self, s):
        assert coverage(s, s) == 1.0


class TestReport:
    def test_report_shape_and_rates(self):
        preds = [aset("p1", (["a1"], ["b1"])), aset("p2", (["a1"], ["b2"]))]
        golds = [aset("p1", (["a1"], ["b1"])), aset("p2", (["a1"], ["b1"]))]
        report = build_eval_report(preds, golds)
        assert report["num_pairs"] == 2
        assert report["full_agreement_rate"] == 0.5
        assert report["per_pair_mean_f1"] == pytest.approx(0.5)
        assert report["corpus"]["tp"] == 1
        assert [row["pair_id"] for row in report["per_pair"]] == ["p1", "p2"]
        assert report["per_pair"][0]["full_agreement"] is True

    def test_identical_inputs_score_ones(self):
        golds = [aset("p1", (["a1"], ["b1"]))]
        report = build_eval_report(golds, golds)
        assert report["corpus"]["f1"] == 1.0
        assert report["full_agreement_rate"] == 1.0

    def test_empty_report_defaults_to_ones(self):
        report = build_eval_report([], [])
        assert report["num_pairs"] == 0
        assert report["per_pair_mean_f1"] == 1.0
        assert report["full_agreement_rate"] == 1.0
        assert report["corpus"]["f1"] == 1.0

    def test_both_sides_empty_for_a_pair_is_full_agreement(self):
        report = build_eval_report([aset("p1")], [aset("p1")])
        assert report["per_pair"][0]["f1"] == 1.0
        assert report["full_agreement_rate"] == 1.0
