"""JSONL readers and writers for every file the CLI consumes or emits.

One JSON object per line, UTF-8. Readers fail fast with the path and
1-based line number; writers emit keys in model declaration order so
output files are byte-stable across runs.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Iterator, Type, TypeVar

from pydantic import BaseModel, ValidationError

from .models import (
    Alignment,
    AlignmentSet,
    AnswerSpan,
    CorefAnnotation,
    FusionInstance,
    FusionOutput,
    Provenance,
    RawSentence,
    ScuCluster,
    SentenceHeads,
    SentencePairInstance,
    SpanAlignmentRecord,
    Topic,
)

M = TypeVar("M", bound=BaseModel)


class JsonlError(ValueError):
    """A malformed line in a JSONL file."""

    def __init__(self, path: str | Path, line: int, reason: str):
        self.path = str(path)
        self.line = line
        self.reason = reason
        super().__init__(f"{path}:{line}: {reason}")


def _iter_lines(path: str | Path) -> Iterator[tuple[int, str]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if line:
                yield lineno, line


def read_jsonl(path: str | Path, model: Type[M]) -> list[M]:
    records: list[M] = []
    for lineno, line in _iter_lines(path):
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise JsonlError(path, lineno, f"invalid JSON: {exc.msg}") from exc
        if not isinstance(data, dict):
            raise JsonlError(path, lineno, "expected a JSON object")
        try:
            records.append(model.model_validate(data))
        except ValidationError as exc:
            first = exc.errors()[0]
            loc = ".".join(str(p) for p in first["loc"]) or "<root>"
            raise JsonlError(path, lineno, f"{loc}: {first['msg']}") from exc
    return records


def write_jsonl(path: str | Path, records: Iterable[BaseModel]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(dump_record(rec))
            fh.write("\n")


def dump_record(rec: BaseModel) -> str:
    return json.dumps(rec.model_dump(mode="json"), ensure_ascii=False)


# Readers for the concrete file kinds, so call sites stay self-describing.


def read_pairs(path: str | Path) -> list[SentencePairInstance]:
    pairs = read_jsonl(path, SentencePairInstance)
    seen: set[str] = set()
    for i, p in enumerate(pairs):
        if p.pair_id in seen:
            raise JsonlError(path, i + 1, f"duplicate pair_id {p.pair_id!r}")
        seen.add(p.pair_id)
    return pairs


def read_alignments(path: str | Path) -> list[AlignmentSet]:
    return read_jsonl(path, AlignmentSet)


def write_alignments(path: str | Path, sets: Iterable[AlignmentSet]) -> None:
    write_jsonl(path, sorted(sets, key=lambda s: s.pair_id))


def read_coref(path: str | Path) -> CorefAnnotation:
    """The coref file is a single JSON object, not JSONL."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return CorefAnnotation.model_validate(data)


def read_heads(path: str | Path) -> dict[tuple[str, str], list[int]]:
    out: dict[tuple[str, str], list[int]] = {}
    for rec in read_jsonl(path, SentenceHeads):
        out[(rec.doc_id, rec.sent_id)] = rec.heads
    return out


def read_sentences(path: str | Path) -> list[RawSentence]:
    return read_jsonl(path, RawSentence)


def read_topics(path: str | Path) -> list[Topic]:
    return read_jsonl(path, Topic)


def read_scus(path: str | Path) -> list[ScuCluster]:
    return read_jsonl(path, ScuCluster)


def read_span_alignments(path: str | Path) -> list[SpanAlignmentRecord]:
    return read_jsonl(path, SpanAlignmentRecord)


def read_fusion_instances(path: str | Path) -> list[FusionInstance]:
    return read_jsonl(path, FusionInstance)


def read_fusion_outputs(path: str | Path) -> list[FusionOutput]:
    return read_jsonl(path, FusionOutput)


def alignment_set_from_pairs(
    pair_id: str, provenance: Provenance, pairs: Iterable[tuple[str, str]]
) -> AlignmentSet:
    """Build a 1:1 alignment set from (left_qa, right_qa) tuples."""
    return AlignmentSet.of(
        pair_id,
        provenance,
        [Alignment.of([l], [r]) for l, r in pairs],
    )


__all__ = [
    "JsonlError",
    "read_jsonl",
    "write_jsonl",
    "dump_record",
    "read_pairs",
    "read_alignments",
    "write_alignments",
    "read_coref",
    "read_heads",
    "read_sentences",
    "read_topics",
    "read_scus",
    "read_span_alignments",
    "read_fusion_instances",
    "read_fusion_outputs",
    "alignment_set_from_pairs",
    "AnswerSpan",
]
