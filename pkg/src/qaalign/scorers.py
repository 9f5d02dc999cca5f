"""Scorers the decoder can drive: built-in references and external clients.

A scorer maps candidate QA pairs to probabilities in [0, 1]. Built-ins run
in-process; the external scorer sends serialized candidate texts over the
wire protocol. The CLI names scorers with a spec string:

    lemma            lemma-baseline criterion as a 0/1 scorer
    constant:0.7     the same score for every candidate
    external:ADDR    http(s) URL, or a command line to spawn over stdio
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass

from .lemma import HeadIndex, _is_content, lemmatize, qa_pair_matches
from .markup import (
    ANSWER_CLOSE,
    ANSWER_OPEN,
    PRED_CLOSE,
    PRED_OPEN,
    QUESTION_SEP,
    serialize_candidate,
)
from .models import AlignmentSet, QARelation, SentencePairInstance, SentenceText
from .protocol import (
    DEFAULT_BATCH_SIZE,
    HttpScorerClient,
    ScoreRequestItem,
    StdioScorerClient,
    TransportError,
)


@dataclass(frozen=True)
class Candidate:
    """One cross-side QA pair, with the serialized texts the wire needs."""

    candidate_id: str
    pair: SentencePairInstance
    qa_a: QARelation
    qa_b: QARelation

    @property
    def sent_a(self) -> SentenceText:
        return self.pair.a

    @property
    def sent_b(self) -> SentenceText:
        return self.pair.b

    def texts(self) -> tuple[str, str]:
        return (
            serialize_candidate(self.qa_a, self.pair.a),
            serialize_candidate(self.qa_b, self.pair.b),
        )


def candidates_for_pair(pair: SentencePairInstance) -> list[Candidate]:
    """All |A|*|B| cross-side QA pairs, ordered by (left id, right id)."""
    out = [
        Candidate(
            candidate_id=f"{pair.pair_id}:{qa_a.qa_id}:{qa_b.qa_id}",
            pair=pair,
            qa_a=qa_a,
            qa_b=qa_b,
        )
        for qa_a in pair.qas_a
        for qa_b in pair.qas_b
    ]
    out.sort(key=lambda c: (c.qa_a.qa_id, c.qa_b.qa_id))
    return out


class ConstantScorer:
    def __init__(self, value: float):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"constant score {value} outside [0, 1]")
        self.value = value

    def score(self, cands: list[Candidate]) -> list[float]:
        return [self.value] * len(cands)


class LemmaScorer:
    """1.0 where the lemma-baseline criterion holds, else 0.0."""

    def __init__(self, heads: HeadIndex | None = None):
        self.heads = heads

    def score(self, cands: list[Candidate]) -> list[float]:
        out = []
        for c in cands:
            ha = self.heads.get((c.sent_a.doc_id, c.sent_a.sent_id)) if self.heads else None
            hb = self.heads.get((c.sent_b.doc_id, c.sent_b.sent_id)) if self.heads else None
            out.append(
                1.0 if qa_pair_matches(c.qa_a, c.sent_a, c.qa_b, c.sent_b, ha, hb) else 0.0
            )
        return out


class GoldOracleScorer:
    """1.0 on edges that appear as gold 1:1 alignments, 0.0 elsewhere."""

    def __init__(self, gold: list[AlignmentSet]):
        self._pairs: dict[str, set[tuple[str, str]]] = {}
        for aset in gold:
            self._pairs.setdefault(aset.pair_id, set()).update(aset.one_to_one_pairs())

    def score(self, cands: list[Candidate]) -> list[float]:
        return [
            1.0
            if (c.qa_a.qa_id, c.qa_b.qa_id) in self._pairs.get(c.pair.pair_id, ())
            else 0.0
            for c in cands
        ]


class ExternalScorer:
    """Serializes candidates and scores them over HTTP or child-process stdio."""

    def __init__(self, addr: str, batch_size: int = DEFAULT_BATCH_SIZE):
        if addr.startswith(("http://", "https://")):
            self._client = HttpScorerClient(addr, batch_size=batch_size)
        else:
            self._client = StdioScorerClient(shlex.split(addr), batch_size=batch_size)
        self.addr = addr

    def score(self, cands: list[Candidate]) -> list[float]:
        items = []
        for c in cands:
            text_a, text_b = c.texts()
            items.append(
                ScoreRequestItem(candidate_id=c.candidate_id, text_a=text_a, text_b=text_b)
            )
        scores = self._client.score_items(items)
        return [scores[c.candidate_id] for c in cands]

    def close(self) -> None:
        self._client.close()


def _wire_sentence_parts(text: str) -> tuple[str, list[list[str]]]:
    """Sentence-side predicate token and answer token groups of a wire text."""
    tokens = text.split(" ")
    try:
        start = tokens.index(QUESTION_SEP) + 1
    except ValueError:
        start = 0
    pred_tokens: list[str] = []
    answers: list[list[str]] = []
    in_pred = in_answer = False
    for tok in tokens[start:]:
        if tok == PRED_OPEN:
            in_pred = True
            continue
        if tok == PRED_CLOSE:
            in_pred = False
            continue
        if tok == ANSWER_OPEN:
            in_answer = True
            answers.append([])
            continue
        if tok == ANSWER_CLOSE:
            in_answer = False
            continue
        if in_pred:
            pred_tokens.append(tok)
        if in_answer:
            answers[-1].append(tok)
    return (pred_tokens[0] if pred_tokens else "", answers)


def _wire_head_lemmas(answers: list[list[str]]) -> set[str]:
    heads = set()
    for group in answers:
        if not group:
            continue
        content = [t for t in group if _is_content(t)]
        heads.add(lemmatize((content or group)[-1]))
    return heads


def text_lemma_score(text_a: str, text_b: str) -> float:
    """Lemma-baseline criterion applied to two wire-format candidate texts.

    Equivalent to LemmaScorer without dependency heads; malformed texts
    (no predicate or no answers) simply score 0.0.
    """
    pred_a, answers_a = _wire_sentence_parts(text_a)
    pred_b, answers_b = _wire_sentence_parts(text_b)
    if not pred_a or not pred_b:
        return 0.0
    if lemmatize(pred_a) != lemmatize(pred_b):
        return 0.0
    return 1.0 if _wire_head_lemmas(answers_a) & _wire_head_lemmas(answers_b) else 0.0


def make_scorer(spec: str, heads: HeadIndex | None = None, gold: list[AlignmentSet] | None = None):
    """Build a scorer from its CLI spec string."""
    if spec == "lemma":
        return LemmaScorer(heads)
    if spec.startswith("constant:"):
        try:
            value = float(spec.split(":", 1)[1])
        except ValueError as exc:
            raise ValueError(f"bad constant scorer spec {spec!r}") from exc
        return ConstantScorer(value)
    if spec.startswith("external:"):
        addr = spec.split(":", 1)[1]
        if not addr:
            raise ValueError("external scorer spec has no address")
        return ExternalScorer(addr)
    if spec == "gold-oracle":
        if gold is None:
            raise ValueError("gold-oracle scorer needs gold alignments (--gold)")
        return GoldOracleScorer(gold)
    raise ValueError(
        f"unknown scorer spec {spec!r} (expected lemma, constant:X, external:ADDR, or gold-oracle)"
    )


__all__ = [
    "Candidate",
    "candidates_for_pair",
    "ConstantScorer",
    "LemmaScorer",
    "GoldOracleScorer",
    "ExternalScorer",
    "make_scorer",
    "text_lemma_score",
    "TransportError",
]
