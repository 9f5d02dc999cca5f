"""Wire contract between the decoder and any scorer implementation.

One JSON object per line. Request:

    {"request_id": "r1", "items": [{"candidate_id": "c1", "text_a": "...", "text_b": "..."}]}

Response:

    {"request_id": "r1", "scores": {"c1": 0.87}}

The same payloads travel over a child process's standard streams or an
HTTP POST body. Responses may arrive out of order and are matched by
request_id. Scores outside [0, 1] are protocol errors, never clamped.
"""

from __future__ import annotations

import json
import subprocess
import threading
from typing import Iterable

import httpx
from pydantic import BaseModel, ConfigDict

DEFAULT_BATCH_SIZE = 32
DEFAULT_TIMEOUT_S = 60.0


class TransportError(RuntimeError):
    """Scorer exchange failed; carries the request and candidate ids."""

    def __init__(self, message: str, request_id: str | None = None,
                 candidate_ids: list[str] | None = None):
        detail = message
        if request_id is not None:
            detail += f" (request_id={request_id}"
            if candidate_ids:
                detail += f", candidates={candidate_ids}"
            detail += ")"
        super().__init__(detail)
        self.request_id = request_id
        self.candidate_ids = candidate_ids or []


class ScoreRequestItem(BaseModel):
    model_config = ConfigDict(frozen=True)
    candidate_id: str
    text_a: str
    text_b: str


class ScoreRequest(BaseModel):
    model_config = ConfigDict(frozen=True)
    request_id: str
    items: list[ScoreRequestItem]

    def candidate_ids(self) -> list[str]:
        return [it.candidate_id for it in self.items]


class ScoreResponse(BaseModel):
    model_config = ConfigDict(frozen=True)
    request_id: str
    scores: dict[str, float]


def check_response(req: ScoreRequest, resp: ScoreResponse) -> None:
    """Key-set equality with the request, and every score in [0, 1]."""
    if resp.request_id != req.request_id:
        raise TransportError(
            f"response for {resp.request_id!r} does not match request",
            request_id=req.request_id,
        )
    want = set(req.candidate_ids())
    got = set(resp.scores)
    if want != got:
        missing = sorted(want - got)
        extra = sorted(got - want)
        raise TransportError(
            f"score keys mismatch (missing={missing}, unexpected={extra})",
            request_id=req.request_id,
            candidate_ids=missing or extra,
        )
    bad = sorted(cid for cid, s in resp.scores.items() if not 0.0 <= s <= 1.0)
    if bad:
        raise TransportError(
            "scores outside [0, 1]",
            request_id=req.request_id,
            candidate_ids=bad,
        )


def parse_response_line(line: str) -> ScoreResponse:
    try:
        return ScoreResponse.model_validate_json(line)
    except ValueError as exc:
        raise TransportError(f"malformed response line: {exc}") from exc


def _batches(items: list[ScoreRequestItem], size: int) -> Iterable[list[ScoreRequestItem]]:
    for i in range(0, len(items), size):
        yield items[i : i + size]


class HttpScorerClient:
    """POSTs each request batch as a JSON body; expects the response JSON back."""

    def __init__(
        self,
        url: str,
        client: httpx.Client | None = None,
        batch_size: int = DEFAULT_BATCH_SIZE,
        timeout_s: float = DEFAULT_TIMEOUT_S,
    ):
        self.url = url
        self.batch_size = batch_size
        self._client = client or httpx.Client(timeout=timeout_s)
        self._seq = 0
        self._lock = threading.Lock()

    def _next_id(self) -> str:
        with self._lock:
            self._seq += 1
            return f"r{self._seq}"

    def score_items(self, items: list[ScoreRequestItem]) -> dict[str, float]:
        scores: dict[str, float] = {}
        for batch in _batches(items, self.batch_size):
            req = ScoreRequest(request_id=self._next_id(), items=batch)
            try:
                resp = self._client.post(self.url, json=req.model_dump(mode="json"))
                resp.raise_for_status()
            except httpx.HTTPError as exc:
                raise TransportError(
                    f"HTTP exchange failed: {exc}",
                    request_id=req.request_id,
                    candidate_ids=req.candidate_ids(),
                ) from exc
            parsed = parse_response_line(resp.text)
            check_response(req, parsed)
            scores.update(parsed.scores)
        return scores

    def close(self) -> None:
        self._client.close()


class StdioScorerClient:
    """Spawns the scorer as a child process and exchanges JSON lines.

    All batches are written before responses are collected, so the server
    may answer out of order; replies are matched by request_id.
    """

    def __init__(
        self,
        command: list[str],
        batch_size: int = DEFAULT_BATCH_SIZE,
        timeout_s: float = DEFAULT_TIMEOUT_S,
    ):
        self.command = command
        self.batch_size = batch_size
        self.timeout_s = timeout_s
        self._proc: subprocess.Popen[str] | None = None

    def _ensure_proc(self) -> subprocess.Popen[str]:
        if self._proc is None or self._proc.poll() is not None:
            self._proc = subprocess.Popen(
                self.command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                bufsize=1,
            )
        return self._proc

    def score_items(self, items: list[ScoreRequestItem]) -> dict[str, float]:
        proc = self._ensure_proc()
        assert proc.stdin is not None and proc.stdout is not None
        pending: dict[str, ScoreRequest] = {}
        for batch in _batches(items, self.batch_size):
            req = ScoreRequest(request_id=f"r{len(pending) + 1}", items=batch)
            pending[req.request_id] = req
            try:
                proc.stdin.write(json.dumps(req.model_dump(mode="json")) + "\n")
                proc.stdin.flush()
            except (BrokenPipeError, OSError) as exc:
                raise TransportError(
                    f"scorer process pipe closed: {exc}",
                    request_id=req.request_id,
                    candidate_ids=req.candidate_ids(),
                ) from exc

        scores: dict[str, float] = {}
        while pending:
            line = proc.stdout.readline()
            if not line:
                raise TransportError(
                    "scorer process closed its output stream",
                    request_id=sorted(pending)[0],
                )
            line = line.strip()
            if not line:
                continue
            resp = parse_response_line(line)
            req = pending.pop(resp.request_id, None)
            if req is None:
                raise TransportError(
                    f"response for unknown request_id {resp.request_id!r}"
                )
            check_response(req, resp)
            scores.update(resp.scores)
        return scores

    def close(self) -> None:
        if self._proc is None:
            return
        if self._proc.stdin is not None:
            self._proc.stdin.close()
        if self._proc.poll() is None:
            self._proc.wait(timeout=10)
        if self._proc.stdout is not None:
            self._proc.stdout.close()
        self._proc = None


def serve_stdio(score_fn, stdin, stdout) -> None:
    """Run a scorer server loop over text streams: one request line in,
    one response line out. score_fn maps ScoreRequestItem -> float."""
    for raw in stdin:
        line = raw.strip()
        if not line:
            continue
        req = ScoreRequest.model_validate_json(line)
        scores = {it.candidate_id: score_fn(it) for it in req.items}
        resp = ScoreResponse(request_id=req.request_id, scores=scores)
        stdout.write(json.dumps(resp.model_dump(mode="json")) + "\n")
        stdout.flush()
