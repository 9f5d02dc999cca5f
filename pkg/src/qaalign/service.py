"""HTTP service exposing the scorer wire protocol and the main pipelines.

POST /v1/score speaks the same request/response schema as the stdio
scorer, so `align decode --scorer external:http://host:port/v1/score`
works against a running instance. The remaining endpoints wrap the
library for non-CLI clients.
"""

from __future__ import annotations

from typing import Callable

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import __version__, decode, evaluation, lemma
from .models import (
    AlignmentSet,
    DecoderConfig,
    SentenceHeads,
    SentencePairInstance,
)
from .protocol import ScoreRequest, ScoreResponse
from .scorers import make_scorer, text_lemma_score

ScoreFn = Callable[[str, str], float]


class LemmaRequest(BaseModel):
    pairs: list[SentencePairInstance]
    heads: list[SentenceHeads] = []


class DecodeRequest(BaseModel):
    pairs: list[SentencePairInstance]
    tau: float = 0.5
    scorer: str = "lemma"
    heads: list[SentenceHeads] = []
    gold: list[AlignmentSet] = []


class AlignmentsResponse(BaseModel):
    alignments: list[AlignmentSet]


class EvalRequest(BaseModel):
    pred: list[AlignmentSet]
    gold: list[AlignmentSet]


def _head_index(heads: list[SentenceHeads]) -> lemma.HeadIndex | None:
    if not heads:
        return None
    return {(h.doc_id, h.sent_id): h.heads for h in heads}


def make_app(score_fn: ScoreFn = text_lemma_score) -> FastAPI:
    app = FastAPI(title="align", version=__version__)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/v1/score")
    def score(req: ScoreRequest) -> ScoreResponse:
        scores = {}
        for item in req.items:
            value = score_fn(item.text_a, item.text_b)
            if not 0.0 <= value <= 1.0:
                raise HTTPException(
                    status_code=500,
                    detail=f"scorer produced {value} for {item.candidate_id}",
                )
            scores[item.candidate_id] = value
        return ScoreResponse(request_id=req.request_id, scores=scores)

    @app.post("/v1/lemma")
    def run_lemma(req: LemmaRequest) -> AlignmentsResponse:
        index = _head_index(req.heads)
        return AlignmentsResponse(
            alignments=[lemma.lemma_align(p, index) for p in req.pairs]
        )

    @app.post("/v1/decode")
    def run_decode(req: DecodeRequest) -> AlignmentsResponse:
        try:
            scorer = make_scorer(
                req.scorer, _head_index(req.heads), req.gold or None
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        cfg = DecoderConfig(tau=req.tau)
        try:
            out = [decode.decode_pair(p, scorer, cfg) for p in req.pairs]
        finally:
            if hasattr(scorer, "close"):
                scorer.close()
        return AlignmentsResponse(alignments=out)

    @app.post("/v1/eval")
    def run_eval(req: EvalRequest) -> dict:
        return evaluation.build_eval_report(req.pred, req.gold)

    return app
