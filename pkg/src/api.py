"""FastAPI REST API over scenario checks, level subsets and the verification suite."""

import logging
from typing import Any, Dict, List, Optional

import uvicorn
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field, ValidationError

from . import __version__
from .checks import OPS, describe_levels, run_check, run_scenario
from .cfla import LevelSpec
from .cfuzzy import to_fraction
from .config import settings
from .generators import GenConfig
from .homs import CATALOG_HOM_NAMES
from .lie_core import CATALOG_NAMES, table_cache_stats
from .models import CflaError, NotHomogeneousError
from .scenario import CheckEntry, parse_scenario
from .suite import THEOREMS, find_hypothesis_counterexample, run_suite

logger = logging.getLogger(__name__)

# FastAPI app
app = FastAPI(
    title="CFLA",
    description="Complex fuzzy Lie subalgebras and ideals over finite fields",
    version=__version__,
)

# CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# Request models
class CheckRequest(BaseModel):
    scenario: Dict[str, Any]
    op: str
    sets: List[str] = []
    hom: Optional[str] = None
    algebra: Optional[str] = None
    at: Optional[List[List[int]]] = None
    alpha: Optional[str] = None
    beta_over_pi: Optional[str] = None
    strict_r: bool = False
    strict_w: bool = False
    drop: List[str] = []


class ScenarioRequest(BaseModel):
    scenario: Dict[str, Any]


class LevelsRequest(BaseModel):
    scenario: Dict[str, Any]
    set: str
    alpha: Optional[str] = None
    beta_over_pi: Optional[str] = None
    strict_r: bool = False
    strict_w: bool = False


class VerifyRequest(BaseModel):
    seed: Optional[int] = None
    trials: Optional[int] = None
    theorems: Optional[List[str]] = None
    catalog: Optional[List[str]] = None


class ProbeRequest(VerifyRequest):
    theorem: str
    drop: str
    budget: int = Field(default_factory=lambda: settings.probe_budget)


def _gen_config(request: VerifyRequest) -> GenConfig:
    fields = request.model_dump(include={"seed", "trials", "theorems", "catalog"}, exclude_none=True)
    return GenConfig(**fields)


@app.get("/")
async def root():
    """Health check endpoint."""
    return {
        "status": "healthy",
        "service": "CFLA",
        "version": __version__,
        "catalog": list(CATALOG_NAMES),
        "homs": list(CATALOG_HOM_NAMES),
        "ops": sorted(OPS),
        "theorems": list(THEOREMS),
    }


@app.get("/health/detailed")
async def detailed_health_check():
    """Limits in force and carrier-table cache statistics."""
    return {
        "status": "healthy",
        "limits": {
            "max_prime": settings.max_prime,
            "max_dim": settings.max_dim,
            "carrier_budget": settings.carrier_budget,
        },
        "table_cache": table_cache_stats(),
    }


@app.post("/api/check")
async def check(request: CheckRequest):
    """Run one named check against an inline scenario."""
    try:
        scenario = parse_scenario(request.scenario, "<request>")
        entry = CheckEntry(**request.model_dump(exclude={"scenario"}))
        result = run_check(scenario, entry)
    except CflaError as e:
        raise HTTPException(status_code=400, detail=str(e))
    logger.info(f"Check '{request.op}' on {request.sets}: {result.verdict.value}")
    return {"op": request.op, "sets": request.sets, **result.to_dict()}


@app.post("/api/run")
async def run(request: ScenarioRequest):
    """Run the checks listed in an inline scenario."""
    try:
        return run_scenario(parse_scenario(request.scenario, "<request>")).to_dict()
    except CflaError as e:
        raise HTTPException(status_code=400, detail=str(e))


@app.post("/api/levels")
async def levels(request: LevelsRequest):
    """Im(mu) with its upper and strong upper levels, or one (alpha, beta) cut."""
    try:
        scenario = parse_scenario(request.scenario, "<request>")
        A = scenario.fuzzy_set(request.set)
        spec = None
        if request.alpha is not None or request.beta_over_pi is not None:
            spec = LevelSpec(
                to_fraction(request.alpha or "0"),
                to_fraction(request.beta_over_pi or "0"),
                request.strict_r,
                request.strict_w,
            )
        return describe_levels(A, spec)
    except NotHomogeneousError as e:
        raise HTTPException(status_code=400, detail={"set": request.set, **e.result.to_dict()})
    except CflaError as e:
        raise HTTPException(status_code=400, detail=str(e))


@app.post("/api/verify")
async def verify(request: VerifyRequest):
    """Run the verification suite; the default trial count comes from settings."""
    try:
        report = run_suite(_gen_config(request))
    except (CflaError, ValidationError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    return report.to_dict()


@app.post("/api/probe")
async def probe(request: ProbeRequest):
    """Search for a counterexample with one hypothesis dropped."""
    try:
        result = find_hypothesis_counterexample(request.theorem, request.drop, request.budget, _gen_config(request))
    except (CflaError, ValidationError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    return result.to_dict()


@app.on_event("startup")
async def startup_event():
    """Log limits on startup."""
    logger.info("=== CFLA API Starting ===")
    logger.info(f"Limits: p <= {settings.max_prime}, n <= {settings.max_dim}, carrier <= {settings.carrier_budget}")
    logger.info(f"{len(THEOREMS)} theorems, {len(OPS)} ops registered")


def main():
    """Run the API server."""
    logging.basicConfig(level=settings.clean_log_level)
    uvicorn.run("src.api:app", host=settings.api_host, port=settings.api_port)


if __name__ == "__main__":
    main()
