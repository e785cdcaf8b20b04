"""HTTP service exposing the solver; run with

    uvicorn regsolve.service:app

The endpoints wrap the same handlers the CLI uses and return the identical
report documents, plus the CLI exit code for easy scripting.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import api
from ..serialize import SCHEMA
from .models import CommandResponse, HealthResponse, ProblemRequest, VerifyRequest


def create_app() -> FastAPI:
    app = FastAPI(
        title="regsolve",
        description="Continuous rational solutions of f1*y1 + ... + fr*yr = phi on the plane",
        version="0.1.0",
    )

    def _problem_doc(req: ProblemRequest) -> dict:
        doc: dict = {"f": req.f}
        if req.phi is not None:
            doc["phi"] = req.phi
        if req.options is not None:
            doc["options"] = req.options.as_dict()
        return doc

    def _cfg(doc: dict):
        try:
            return api.make_config(doc.get("options"))
        except api.InputError as e:
            raise HTTPException(status_code=400, detail=str(e))

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", name="regsolve", schema_version=SCHEMA)

    @app.post("/check-pt", response_model=CommandResponse)
    def check_pt_endpoint(req: ProblemRequest) -> CommandResponse:
        doc = _problem_doc(req)
        try:
            code, out = api.run_check_pt(doc, _cfg(doc))
        except api.InputError as e:
            raise HTTPException(status_code=400, detail=str(e))
        return CommandResponse(exit_code=code, report=out)

    @app.post("/solve", response_model=CommandResponse)
    def solve_endpoint(req: ProblemRequest) -> CommandResponse:
        doc = _problem_doc(req)
        try:
            code, out = api.run_solve(doc, _cfg(doc))
        except api.InputError as e:
            raise HTTPException(status_code=400, detail=str(e))
        return CommandResponse(exit_code=code, report=out)

    @app.post("/analyze", response_model=CommandResponse)
    def analyze_endpoint(req: ProblemRequest) -> CommandResponse:
        doc = _problem_doc(req)
        try:
            code, out = api.run_analyze(doc, _cfg(doc))
        except api.InputError as e:
            raise HTTPException(status_code=400, detail=str(e))
        return CommandResponse(exit_code=code, report=out)

    @app.post("/verify", response_model=CommandResponse)
    def verify_endpoint(req: VerifyRequest) -> CommandResponse:
        options = req.options.as_dict() if req.options is not None else None
        try:
            cfg = api.make_config(options)
            code, out = api.run_verify(req.solution, cfg)
        except api.InputError as e:
            raise HTTPException(status_code=400, detail=str(e))
        return CommandResponse(exit_code=code, report=out)

    return app


app = create_app()
