"""HTTP surface: a FastAPI service wrapping the analysis driver.

Endpoints accept ``.lie`` documents as request text and return the same
schema-stable report the CLI emits with ``--json``.  Run with::

    uvicorn symhodge.service:app
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__, analysis, dsl
from .errors import ValidationError

app = FastAPI(
    title="symhodge",
    version=__version__,
    description=(
        "Exact symplectic Hodge analysis of Lie algebras: cohomology tables, "
        "Lefschetz / dδ / natural-map levels, and witness forms."
    ),
)


class AnalyzeRequest(BaseModel):
    text: str = Field(description="A .lie document")
    invariants: bool = Field(default=False, description="Also run the invariant suite")


class GatesModel(BaseModel):
    unimodular: bool
    poincare_duality: bool
    nilpotent: bool
    solvable: bool
    completely_solvable_heuristic: bool
    abelian: bool


class WitnessModel(BaseModel):
    kind: str
    degree: int
    form: str


class SuiteOutcome(BaseModel):
    passed: bool
    failures: list[str]


class AnalyzeResponse(BaseModel):
    dim: int
    names: list[str]
    betti: list[int]
    hr_dims: list[int]
    hdelta_dims: list[int]
    lefschetz_level: int
    ddelta_level: int
    i_level: int
    ddelta_level_dual: int
    i_lower_range_ok: bool
    gates: GatesModel
    witnesses: list[WitnessModel]
    primitive_star_constants: dict[str, str]
    failures: list[str]
    consistent: bool
    invariant_suite: Optional[SuiteOutcome] = None


class CheckRequest(BaseModel):
    text: str


class CheckResponse(BaseModel):
    ok: bool
    dim: int
    names: list[str]
    canonical: str = Field(description="Canonical printing of the parsed document")


class SuiteRequest(BaseModel):
    text: Optional[str] = Field(default=None, description="Restrict to one document")
    seed: int = 0
    dim: Optional[int] = None
    trials: int = 20


class SuiteResponse(BaseModel):
    passed: bool
    instances: int
    failures: list[str]
    counterexample: Optional[str] = None


class SearchRequest(BaseModel):
    dim: int
    target_s: int
    trials: int = 100
    seed: int = 0
    non_abelian: bool = False


class SearchResponse(BaseModel):
    documents: list[str]


def _parse_or_400(text: str) -> dsl.AlgebraDocument:
    try:
        return dsl.parse(text)
    except dsl.ParseError as exc:
        raise HTTPException(
            status_code=400,
            detail={"error": "parse", "line": exc.line, "column": exc.column,
                    "message": exc.message},
        )
    except ValidationError as exc:
        raise HTTPException(status_code=400, detail={"error": "parse", "message": str(exc)})


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/analyze", response_model=AnalyzeResponse)
def analyze_endpoint(request: AnalyzeRequest) -> AnalyzeResponse:
    doc = _parse_or_400(request.text)
    try:
        report = analysis.analyze(doc, run_invariants=request.invariants)
    except ValidationError as exc:
        raise HTTPException(status_code=422,
                            detail={"error": "validation", "message": str(exc)})
    return AnalyzeResponse(**report.to_dict())


@app.post("/check", response_model=CheckResponse)
def check_endpoint(request: CheckRequest) -> CheckResponse:
    doc = _parse_or_400(request.text)
    try:
        analysis.build(doc.algebra(), doc.omega)
    except ValidationError as exc:
        raise HTTPException(status_code=422,
                            detail={"error": "validation", "message": str(exc)})
    return CheckResponse(ok=True, dim=doc.dim, names=doc.names,
                         canonical=dsl.print_document(doc))


@app.post("/suite", response_model=SuiteResponse)
def suite_endpoint(request: SuiteRequest) -> SuiteResponse:
    doc = _parse_or_400(request.text) if request.text is not None else None
    try:
        result = analysis.run_invariant_suite(doc=doc, seed=request.seed,
                                              dim=request.dim, trials=request.trials)
    except ValidationError as exc:
        raise HTTPException(status_code=422,
                            detail={"error": "validation", "message": str(exc)})
    return SuiteResponse(passed=result.passed, instances=result.instances,
                         failures=result.failures, counterexample=result.counterexample)


@app.post("/search", response_model=SearchResponse)
def search_endpoint(request: SearchRequest) -> SearchResponse:
    if request.dim % 2 or request.dim <= 0:
        raise HTTPException(status_code=400,
                            detail={"error": "parse", "message": "dim must be even and positive"})
    docs = analysis.search(request.dim, request.target_s, request.trials,
                           request.seed, non_abelian=request.non_abelian)
    return SearchResponse(documents=[dsl.print_document(d) for d in docs])
