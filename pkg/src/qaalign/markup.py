"""Candidate serialization: flatten a QA and its sentence into one marked-up string.

The scorer sees each candidate side as plain text. Markers are ordinary
tokens so the result stays a single-space-joined token sequence:

    Who did someone [P] fire [/P] ? [Q] <context> ... [P] fired [/P] ... [A] coach Maurice Cheeks [/A] ...

Exactly one "[Q]" separator, one "[P]"/"[/P]" pair in the question and one
in the sentence, and one "[A]"/"[/A]" pair per answer span. Stripping all
marker tokens recovers question + context + sentence tokens exactly.
"""

from __future__ import annotations

from .models import QARelation, SentenceText

PRED_OPEN = "[P]"
PRED_CLOSE = "[/P]"
QUESTION_SEP = "[Q]"
ANSWER_OPEN = "[A]"
ANSWER_CLOSE = "[/A]"

MARKER_TOKENS = frozenset(
    {PRED_OPEN, PRED_CLOSE, QUESTION_SEP, ANSWER_OPEN, ANSWER_CLOSE}
)


class OwnershipError(ValueError):
    """The QA's indices do not fit the sentence it was serialized against."""


def _check_ownership(qa: QARelation, sent: SentenceText) -> None:
    n = len(sent.tokens)
    if not 0 <= qa.predicate_index < n:
        raise OwnershipError(
            f"qa {qa.qa_id!r}: predicate_index {qa.predicate_index} outside sentence "
            f"{sent.doc_id}/{sent.sent_id} of {n} tokens"
        )
    if not 0 <= qa.question_predicate_index < len(qa.question_tokens):
        raise OwnershipError(
            f"qa {qa.qa_id!r}: question_predicate_index {qa.question_predicate_index} "
            f"outside question of {len(qa.question_tokens)} tokens"
        )
    for span in qa.answers:
        if span.start < 0 or span.end > n or span.start >= span.end:
            raise OwnershipError(
                f"qa {qa.qa_id!r}: answer span [{span.start},{span.end}) outside sentence "
                f"{sent.doc_id}/{sent.sent_id} of {n} tokens"
            )


def serialize_candidate(qa: QARelation, sent: SentenceText) -> str:
    """Question with its predicate marked, then [Q], then context + sentence
    with the predicate and every answer span marked."""
    _check_ownership(qa, sent)

    parts: list[str] = []
    for i, tok in enumerate(qa.question_tokens):
        if i == qa.question_predicate_index:
            parts.extend((PRED_OPEN, tok, PRED_CLOSE))
        else:
            parts.append(tok)
    parts.append(QUESTION_SEP)
    parts.extend(sent.context_tokens)

    # Answer markers go outside predicate markers when both land on the
    # same token, so a predicate inside a span nests as [A] .. [P] w [/P] .. [/A].
    opens: dict[int, list[str]] = {}
    closes: dict[int, list[str]] = {}
    for span in qa.answers:
        opens.setdefault(span.start, []).append(ANSWER_OPEN)
        closes.setdefault(span.end - 1, []).insert(0, ANSWER_CLOSE)
    opens.setdefault(qa.predicate_index, []).append(PRED_OPEN)
    closes.setdefault(qa.predicate_index, []).insert(0, PRED_CLOSE)

    for i, tok in enumerate(sent.tokens):
        parts.extend(opens.get(i, ()))
        parts.append(tok)
        parts.extend(closes.get(i, ()))
    return " ".join(parts)


def strip_markup(text: str) -> list[str]:
    """Drop marker tokens; the remainder is question + context + sentence."""
    return [tok for tok in text.split(" ") if tok not in MARKER_TOKENS]


def candidate_texts(
    qa_a: QARelation, sent_a: SentenceText, qa_b: QARelation, sent_b: SentenceText
) -> tuple[str, str]:
    return serialize_candidate(qa_a, sent_a), serialize_candidate(qa_b, sent_b)
