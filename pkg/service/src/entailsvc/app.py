"""HTTP surface of the scoring service.

Contract (fixed, shared with the consumer's client):
  POST /v1/score   {"pairs": [{"premise", "hypothesis"}, ...]}  (max 256)
                   -> {"scores": [...]} in request order
  GET  /v1/health  -> {"status": "ok", "model": "<identifier>"}

Errors: 400 malformed body, 413 oversize batch, 503 while the model is
not loaded or the bounded request queue is full.
"""

from __future__ import annotations

import asyncio
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .scoring import Scorer, load_scorer

MAX_BATCH = 256
DEFAULT_QUEUE_SIZE = 64


class PairIn(BaseModel):
    premise: str
    hypothesis: str


class ScoreRequest(BaseModel):
    pairs: list[PairIn]


class ScoreResponse(BaseModel):
    scores: list[float]


class HealthResponse(BaseModel):
    status: str
    model: str


def create_app(
    model: str = "lexical",
    queue_size: int = DEFAULT_QUEUE_SIZE,
    defer_load: bool = False,
) -> FastAPI:
    """Build the service; defer_load leaves the model unloaded (503s)."""

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        if not defer_load:
            app.state.scorer = load_scorer(model)
        yield

    app = FastAPI(title="entail-svc", lifespan=lifespan)
    app.state.scorer = None
    app.state.in_flight = 0
    app.state.queue_size = queue_size
    # one inference worker; requests queue on this lock
    app.state.inference_lock = asyncio.Lock()

    @app.exception_handler(RequestValidationError)
    async def malformed_body(_: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    def _scorer(request: Request) -> Scorer | None:
        return request.app.state.scorer

    @app.get("/v1/health")
    async def health(request: Request):
        scorer = _scorer(request)
        if scorer is None:
            return JSONResponse(status_code=503, content={"detail": "model not loaded"})
        return HealthResponse(status="ok", model=scorer.name)

    @app.post("/v1/score")
    async def score(request: Request, body: ScoreRequest):
        scorer = _scorer(request)
        if scorer is None:
            return JSONResponse(status_code=503, content={"detail": "model not loaded"})
        if len(body.pairs) > MAX_BATCH:
            return JSONResponse(
                status_code=413,
                content={"detail": f"batch of {len(body.pairs)} exceeds limit {MAX_BATCH}"},
            )
        state = request.app.state
        if state.in_flight >= state.queue_size:
            return JSONResponse(status_code=503, content={"detail": "request queue full"})
        state.in_flight += 1
        try:
            pairs = [(p.premise, p.hypothesis) for p in body.pairs]
            async with state.inference_lock:
                loop = asyncio.get_running_loop()
                scores = await loop.run_in_executor(None, scorer.score_batch, pairs)
        finally:
            state.in_flight -= 1
        return ScoreResponse(scores=scores)

    return app
