"""HTTP surface: one POST endpoint per scenario, JSON reports throughout.

Precondition and invalid-input failures answer 400 with a structured error
body; numeric/truncation failures answer 500.  The command line is a thin
client of this app (in-process by default, remote with --url).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .errors import InvalidInputError, NearshiftError, NumericError, PreconditionError
from .runner import SCHEMA_VERSION, run_command
from .schemas import (
    DecomposeRequest,
    ExampleRequest,
    FactorizeRequest,
    NearCheckRequest,
    NormsRequest,
    RunReportModel,
    VerifyRequest,
)
from .suites import available_suites

app = FastAPI(
    title="nearshift",
    version=__version__,
    description="Truncated-degree verification of block decompositions and "
    "nearly invariant subspace structure for Blaschke multipliers.",
)


@app.exception_handler(NearshiftError)
async def nearshift_error_handler(request: Request, exc: NearshiftError):
    if isinstance(exc, (InvalidInputError, PreconditionError)):
        status, kind = 400, "precondition"
    elif isinstance(exc, NumericError):
        status, kind = 500, "numeric"
    else:  # pragma: no cover - base class is never raised directly
        status, kind = 500, "numeric"
    return JSONResponse(
        status_code=status,
        content={"error": {"kind": kind, "detail": str(exc)}},
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__, "schema_version": SCHEMA_VERSION}


@app.get("/suites")
def suites() -> dict:
    return {"suites": available_suites() + ["all"]}


def _run(command: str, model) -> RunReportModel:
    params = model.model_dump(exclude_none=True)
    return RunReportModel.model_validate(run_command(command, params))


@app.post("/decompose", response_model=RunReportModel)
def decompose(req: DecomposeRequest):
    return _run("decompose", req)


@app.post("/norms", response_model=RunReportModel)
def norms(req: NormsRequest):
    return _run("norms", req)


@app.post("/near-check", response_model=RunReportModel)
def near_check(req: NearCheckRequest):
    return _run("near-check", req)


@app.post("/factorize", response_model=RunReportModel)
def factorize(req: FactorizeRequest):
    return _run("factorize", req)


@app.post("/example-sec2", response_model=RunReportModel)
def example_sec2(req: ExampleRequest):
    return _run("example-sec2", req)


@app.post("/verify", response_model=RunReportModel)
def verify(req: VerifyRequest):
    return _run("verify", req)
