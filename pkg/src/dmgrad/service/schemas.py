"""Request and response models of the HTTP service.

Each endpoint wraps one runner operation. Responses carry both a structured
payload and, for table operations, the exact CSV body the CLI writes, so
client-side files are byte-identical to server-side rendering.
"""

from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from ..scenario import Scenario


class ScenarioRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: Scenario


class SweepRequest(ScenarioRequest):
    axis: Literal["omega", "B", "Q", "omega_T"]


class OracleRequest(ScenarioRequest):
    seed: Optional[int] = Field(default=None, ge=0)
    samples: Optional[int] = Field(default=None, ge=1)


Cell = Union[float, int, str, None]


class TableResponse(BaseModel):
    columns: List[str]
    rows: List[List[Cell]]
    csv: str


class SignalResponse(BaseModel):
    omega: float
    omega_T: float
    omega_tau_l: float
    variant: str
    Q: int
    N: int
    eps_bar: float
    delta_omega: float
    tau_l: float
    baseline: float
    height: float
    phi_s_exact: float
    phi_s_lmt: Optional[float]
    lmt_expansion_rel_diff: Optional[float]
    lmt_in_regime: bool


class SensitivityResponse(BaseModel):
    result: dict
    csv: str


class OptimizeResponse(BaseModel):
    outcome: dict
    sweep: TableResponse


class OracleWorst(BaseModel):
    relative_deviation: float
    variant: Optional[str] = None
    Q: Optional[int] = None
    omega_T: Optional[float] = None
    omega_tau_l: Optional[float] = None
    closed_form: Optional[float] = None
    oracle: Optional[float] = None


class OracleResponse(BaseModel):
    samples: int
    random_samples: int
    seed: int
    tolerance: float
    max_relative_deviation: float
    passed: bool
    worst: OracleWorst


class HealthResponse(BaseModel):
    status: str
    version: str
