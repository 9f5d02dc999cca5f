"""Threshold surviving edges, then pick the maximum-weight matching.

Scores exactly equal to tau survive. Weights enter the matcher as exact
fractions of the float scores, so equal-weight ties are recognized
exactly and broken by the lexicographically smallest sorted edge list.
"""

from __future__ import annotations

from fractions import Fraction

from .matching import max_weight_matching
from .models import (
    Alignment,
    AlignmentSet,
    DecoderConfig,
    Matching,
    Provenance,
    ScoredEdge,
    SentencePairInstance,
)
from .protocol import TransportError
from .scorers import Candidate, candidates_for_pair


def score_all(pair: SentencePairInstance, scorer) -> list[ScoredEdge]:
    """One scored edge per cross-side QA pair, ordered by (left, right) id."""
    cands = candidates_for_pair(pair)
    if not cands:
        return []
    try:
        scores = scorer.score(cands)
    except TransportError:
        raise
    except Exception as exc:
        raise TransportError(
            f"scorer failed: {exc}",
            candidate_ids=[c.candidate_id for c in cands],
        ) from exc
    if len(scores) != len(cands):
        raise TransportError(
            f"scorer returned {len(scores)} scores for {len(cands)} candidates",
            candidate_ids=[c.candidate_id for c in cands],
        )
    bad = [c.candidate_id for c, s in zip(cands, scores) if not 0.0 <= s <= 1.0]
    if bad:
        raise TransportError("scores outside [0, 1]", candidate_ids=bad)
    return [
        ScoredEdge(left_qa=c.qa_a.qa_id, right_qa=c.qa_b.qa_id, score=s)
        for c, s in zip(cands, scores)
    ]


def decode_matching(edges: list[ScoredEdge], cfg: DecoderConfig) -> Matching:
    survivors = [
        (e.left_qa, e.right_qa, Fraction(e.score))
        for e in edges
        if e.score >= cfg.tau
    ]
    chosen, total = max_weight_matching(survivors)
    return Matching(edges=tuple(chosen), total_weight=float(total))


def decode(
    pair_id: str, edges: list[ScoredEdge], cfg: DecoderConfig | None = None
) -> AlignmentSet:
    matching = decode_matching(edges, cfg or DecoderConfig())
    return AlignmentSet.of(
        pair_id,
        Provenance.MODEL,
        [Alignment.of([l], [r]) for l, r in matching.edges],
    )


def decode_pair(
    pair: SentencePairInstance, scorer, cfg: DecoderConfig | None = None
) -> AlignmentSet:
    return decode(pair.pair_id, score_all(pair, scorer), cfg)
