"""FastAPI application wrapping the computation package.

Stateless: every request carries a full scenario, every computation is a
pure function of it. Validation errors surface as 422 with field paths
(pydantic), physical-precondition violations as 400, and numerical
failures as 500; an oracle mismatch is reported in-band via ``passed``.
"""

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, runner
from ..errors import DomainError, NumericalError, ScenarioError
from .schemas import (HealthResponse, OptimizeResponse, OracleRequest,
                      OracleResponse, ScenarioRequest, SensitivityResponse,
                      SignalResponse, SweepRequest, TableResponse)

app = FastAPI(
    title="dmgrad",
    description="Sensitivity toolkit for vertical atom-gradiometer DM detectors",
    version=__version__,
)


@app.exception_handler(ScenarioError)
async def _scenario_error(request: Request, exc: ScenarioError):
    return JSONResponse(status_code=422, content={"error": "scenario", "detail": str(exc)})


@app.exception_handler(DomainError)
async def _domain_error(request: Request, exc: DomainError):
    return JSONResponse(status_code=400, content={"error": "domain", "detail": str(exc)})


@app.exception_handler(NumericalError)
async def _numerical_error(request: Request, exc: NumericalError):
    return JSONResponse(status_code=500, content={"error": "numerical", "detail": str(exc)})


def _table_response(table: runner.Table) -> TableResponse:
    return TableResponse(columns=table.columns,
                         rows=[list(row) for row in table.rows],
                         csv=runner.render_csv(table))


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/eval-signal", response_model=SignalResponse)
def eval_signal(req: ScenarioRequest) -> SignalResponse:
    return SignalResponse(**runner.eval_signal(req.scenario))


@app.post("/mode-function", response_model=TableResponse)
def mode_function(req: ScenarioRequest) -> TableResponse:
    return _table_response(runner.mode_function_table(req.scenario))


@app.post("/mode-max", response_model=TableResponse)
def mode_max(req: ScenarioRequest) -> TableResponse:
    return _table_response(runner.mode_max_table(req.scenario))


@app.post("/sensitivity", response_model=SensitivityResponse)
def sensitivity(req: ScenarioRequest) -> SensitivityResponse:
    result = runner.sensitivity_result(req.scenario)
    table = runner.Table(columns=runner.SENSITIVITY_COLUMNS,
                         rows=[runner._sensitivity_row(result)])
    return SensitivityResponse(result=result, csv=runner.render_csv(table))


@app.post("/optimize", response_model=OptimizeResponse)
def optimize(req: ScenarioRequest) -> OptimizeResponse:
    outcome, table = runner.optimize_run(req.scenario)
    return OptimizeResponse(outcome=outcome, sweep=_table_response(table))


@app.post("/sweep", response_model=TableResponse)
def sweep(req: SweepRequest) -> TableResponse:
    return _table_response(runner.sweep(req.scenario, req.axis))


@app.post("/oracle", response_model=OracleResponse)
def oracle(req: OracleRequest) -> OracleResponse:
    return OracleResponse(**runner.oracle_check(req.scenario, seed=req.seed,
                                                samples=req.samples))
