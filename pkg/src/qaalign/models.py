"""Domain types shared by every pipeline stage.

All models are frozen (immutable after construction) and safe to share
across threads. Parsing only enforces shape (field presence and types);
semantic invariants such as span bounds are checked by
:mod:`qaalign.validation`, which reports violations as data instead of
raising.
"""

from __future__ import annotations

import enum

from pydantic import BaseModel, ConfigDict


class CorpusTag(str, enum.Enum):
    ECB = "ECB"
    DUC = "DUC"
    MN = "MN"
    OTHER = "OTHER"


class Split(str, enum.Enum):
    TRAIN = "TRAIN"
    DEV = "DEV"
    TEST = "TEST"


class Provenance(str, enum.Enum):
    GOLD = "GOLD"
    LEMMA = "LEMMA"
    MODEL = "MODEL"
    ECB_INDUCED = "ECB_INDUCED"


class MentionKind(str, enum.Enum):
    EVENT = "EVENT"
    ENTITY = "ENTITY"


class FrozenModel(BaseModel):
    model_config = ConfigDict(frozen=True)


class SentenceText(FrozenModel):
    """A tokenized sentence plus its predecessor sentence as context."""

    doc_id: str
    sent_id: str
    tokens: list[str]
    context_tokens: list[str] = []
    corpus_tag: CorpusTag = CorpusTag.OTHER


class AnswerSpan(FrozenModel):
    """Token span over the owning sentence; start inclusive, end exclusive."""

    start: int
    end: int

    def indices(self) -> range:
        return range(self.start, self.end)

    def overlaps(self, other: "AnswerSpan") -> bool:
        return self.start < other.end and other.start < self.end


class QARelation(FrozenModel):
    """One predicate-argument relation: a question plus its answer span(s)."""

    qa_id: str
    predicate_index: int
    question_tokens: list[str]
    question_predicate_index: int
    answers: list[AnswerSpan]

    @property
    def wh_word(self) -> str:
        """First question token, lowercased ('' for an empty question)."""
        return self.question_tokens[0].lower() if self.question_tokens else ""


class SentencePairInstance(FrozenModel):
    """The unit of alignment: two sentences with their QA sets."""

    pair_id: str
    split: Split
    a: SentenceText
    b: SentenceText
    qas_a: list[QARelation] = []
    qas_b: list[QARelation] = []

    def qa_ids_a(self) -> set[str]:
        return {qa.qa_id for qa in self.qas_a}

    def qa_ids_b(self) -> set[str]:
        return {qa.qa_id for qa in self.qas_b}

    def qa_a(self, qa_id: str) -> QARelation:
        for qa in self.qas_a:
            if qa.qa_id == qa_id:
                return qa
        raise KeyError(qa_id)

    def qa_b(self, qa_id: str) -> QARelation:
        for qa in self.qas_b:
            if qa.qa_id == qa_id:
                return qa
        raise KeyError(qa_id)


class Alignment(FrozenModel):
    """A grouping of QA ids from each side that convey the same fact.

    ``left``/``right`` are stored as sorted lists so serialization is
    deterministic; equality and hashing treat them as sets.
    """

    left: tuple[str, ...]
    right: tuple[str, ...]

    @classmethod
    def of(cls, left, right) -> "Alignment":
        return cls(left=tuple(sorted(set(left))), right=tuple(sorted(set(right))))

    @property
    def key(self) -> tuple[frozenset[str], frozenset[str]]:
        return (frozenset(self.left), frozenset(self.right))

    def is_one_to_one(self) -> bool:
        return len(self.left) == 1 and len(self.right) == 1


class AlignmentSet(FrozenModel):
    """All alignments annotated or predicted for one sentence pair."""

    pair_id: str
    provenance: Provenance
    alignments: tuple[Alignment, ...] = ()

    @classmethod
    def of(cls, pair_id: str, provenance: Provenance, alignments) -> "AlignmentSet":
        uniq: dict[tuple, Alignment] = {}
        for a in alignments:
            uniq.setdefault(a.key, a)
        ordered = sorted(uniq.values(), key=lambda a: (a.left, a.right))
        return cls(pair_id=pair_id, provenance=provenance, alignments=tuple(ordered))

    def keys(self) -> set[tuple[frozenset[str], frozenset[str]]]:
        return {a.key for a in self.alignments}

    def one_to_one_pairs(self) -> set[tuple[str, str]]:
        return {
            (a.left[0], a.right[0]) for a in self.alignments if a.is_one_to_one()
        }


class ScoredEdge(FrozenModel):
    """A candidate 1:1 QA-to-QA link with its model probability."""

    left_qa: str
    right_qa: str
    score: float


class DecoderConfig(FrozenModel):
    tau: float = 0.5


class Matching(FrozenModel):
    """Node-disjoint edge set chosen by the decoder."""

    edges: tuple[tuple[str, str], ...]
    total_weight: float


class CorefMention(FrozenModel):
    mention_id: str
    doc_id: str
    sent_id: str
    span: AnswerSpan
    kind: MentionKind


class CorefCluster(FrozenModel):
    cluster_id: str
    kind: MentionKind
    mention_ids: list[str]


class CorefAnnotation(FrozenModel):
    """Cross-document event and entity coreference clusters."""

    mentions: list[CorefMention]
    clusters: list[CorefCluster]

    def mention(self, mention_id: str) -> CorefMention:
        for m in self.mentions:
            if m.mention_id == mention_id:
                return m
        raise KeyError(mention_id)

    def doc_ids(self) -> set[str]:
        return {m.doc_id for m in self.mentions}


class ScuContributor(FrozenModel):
    doc_id: str
    sent_id: str
    span: AnswerSpan


class ScuCluster(FrozenModel):
    """A summary content unit with its contributing sentence spans."""

    scu_id: str
    label: str
    contributors: list[ScuContributor]
    split: Split = Split.TRAIN


class SpanAlignmentRecord(FrozenModel):
    """A document sentence aligned to a summary sentence via proposition spans."""

    summary_doc_id: str
    summary_sent_id: str
    doc_id: str
    sent_id: str
    spans: list[AnswerSpan]
    split: Split = Split.TRAIN


class FusionInstance(FrozenModel):
    """A sentence-fusion cluster: source sentences, their QAs, alignments, target."""

    cluster_id: str
    sources: list[SentenceText]
    source_qas: list[list[QARelation]]
    target: list[str]
    pair_alignments: list["FusionPairAlignments"] = []

    def qa(self, source_index: int, qa_id: str) -> QARelation:
        for qa in self.source_qas[source_index]:
            if qa.qa_id == qa_id:
                return qa
        raise KeyError((source_index, qa_id))


class FusionPairAlignments(FrozenModel):
    """Alignments between one unordered pair of fusion sources."""

    left_source: int
    right_source: int
    alignments: tuple[Alignment, ...] = ()


class ConsolidationReport(FrozenModel):
    """Which sources each output word traces to, and the consolidation verdict."""

    per_word_contributors: list[list[int]]
    is_consolidating: bool
    contributing_sources: list[int]


class RawSentence(FrozenModel):
    """Dataset-builder input: one corpus sentence, optionally with its QAs."""

    doc_id: str
    sent_id: str
    tokens: list[str]
    context_tokens: list[str] | None = None
    qas: list[QARelation] = []


class Topic(FrozenModel):
    """A set of related documents annotated together (dataset-builder input)."""

    topic_id: str
    doc_ids: list[str]
    split: Split = Split.TRAIN


class SentenceHeads(FrozenModel):
    """Optional per-token dependency head indices (-1 marks the root)."""

    doc_id: str
    sent_id: str
    heads: list[int]


class FusionOutput(FrozenModel):
    """A fused sentence produced by some generation model, tokenized."""

    cluster_id: str
    tokens: list[str]
