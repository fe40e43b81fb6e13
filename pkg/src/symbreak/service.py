"""HTTP facade over the preprocessing pipeline.

Every endpoint is stateless: programs travel as smodels-format text in JSON
bodies. Parse errors map to 400, unsupported features to 422, exceeded
oracle budgets to 422 with a budget detail.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .errors import BudgetExceededError, NotTightError, ParseError, UnsupportedFeatureError
from .instances import HouseSpec, PhpSpec, gen_house, gen_php, manifest_line
from .pipeline import run_break, run_detect, run_verify
from .program import Program
from .smodels import SmodelsDocument, parse, write

app = FastAPI(
    title="symbreak",
    description="Symmetry detection and lex-chain symmetry breaking for grounded logic programs.",
    version="0.1.0",
)


class DetectRequest(BaseModel):
    program: str = Field(description="program in numeric smodels format")
    limit: int | None = Field(default=None, ge=1)
    seed: int = 0


class DetectResponse(BaseModel):
    generators: list[str]
    symbolic: list[str]
    limit_hit: bool
    nodes_explored: int
    graph_vertices: int
    graph_edges: int


class BreakRequest(DetectRequest):
    ignore_minimize: bool = False


class BreakResponse(BaseModel):
    program: str
    generators: list[str]
    rules_added: int
    fresh_atoms: int


class VerifyRequest(DetectRequest):
    atom_budget: int = Field(default=26, ge=0)
    closure_budget: int = Field(default=10**4, ge=1)


class CheckModel(BaseModel):
    name: str
    passed: bool
    detail: str


class VerifyResponse(BaseModel):
    passed: bool
    generators: int
    models_before: int
    models_after: int
    orbits: int
    checks: list[CheckModel]


class PhpRequest(BaseModel):
    pigeons: int = Field(ge=1)
    holes: int = Field(ge=1)


class HouseRequest(BaseModel):
    persons: int = Field(ge=1)
    things_per_person: int | list[int] = 1
    cabinets: int = Field(ge=1)
    capacity: int = Field(default=2, ge=1)
    cabinet_cost: int | None = Field(default=None, ge=0)


class ProgramResponse(BaseModel):
    program: str
    manifest: str


def _parse_program(text: str) -> Program:
    try:
        return parse(text).program
    except ParseError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def _guarded(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except UnsupportedFeatureError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    except (BudgetExceededError, NotTightError) as exc:
        raise HTTPException(status_code=422, detail=f"oracle budget: {exc}") from None


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/detect", response_model=DetectResponse)
def detect(request: DetectRequest):
    program = _parse_program(request.program)
    result = _guarded(run_detect, program, limit=request.limit, seed=request.seed)
    stats = result.generators.stats
    return DetectResponse(
        generators=result.raw_lines(),
        symbolic=result.symbolic_lines(),
        limit_hit=stats.limit_hit,
        nodes_explored=stats.nodes_explored,
        graph_vertices=result.graph.vertex_count,
        graph_edges=result.graph.edge_count,
    )


@app.post("/break", response_model=BreakResponse)
def break_program(request: BreakRequest):
    program = _parse_program(request.program)
    result = _guarded(run_break, program, limit=request.limit, seed=request.seed)
    return BreakResponse(
        program=write(SmodelsDocument(result.extended)),
        generators=result.detect.raw_lines(),
        rules_added=result.rules_added,
        fresh_atoms=result.fresh_atoms,
    )


@app.post("/verify", response_model=VerifyResponse)
def verify(request: VerifyRequest):
    program = _parse_program(request.program)
    report = _guarded(
        run_verify,
        program,
        limit=request.limit,
        seed=request.seed,
        atom_budget=request.atom_budget,
        closure_budget=request.closure_budget,
    )
    return VerifyResponse(
        passed=report.passed,
        generators=report.generators,
        models_before=report.models_before,
        models_after=report.models_after,
        orbits=report.orbits,
        checks=[CheckModel(name=c.name, passed=c.passed, detail=c.detail) for c in report.checks],
    )


@app.post("/generate/php", response_model=ProgramResponse)
def generate_php(request: PhpRequest):
    spec = PhpSpec(pigeons=request.pigeons, holes=request.holes)
    return ProgramResponse(
        program=write(SmodelsDocument(gen_php(spec))), manifest=manifest_line(spec)
    )


@app.post("/generate/house", response_model=ProgramResponse)
def generate_house(request: HouseRequest):
    things = request.things_per_person
    spec = HouseSpec(
        persons=request.persons,
        things_per_person=tuple(things) if isinstance(things, list) else things,
        cabinets=request.cabinets,
        capacity=request.capacity,
        cabinet_cost=request.cabinet_cost,
    )
    return ProgramResponse(
        program=write(SmodelsDocument(gen_house(spec))), manifest=manifest_line(spec)
    )
