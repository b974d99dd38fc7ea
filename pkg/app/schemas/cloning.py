from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, computed_field

from app.schemas.state import BlochTwoQubit, DensityMatrix

Mode = Literal["local", "nonlocal"]


class MachineParam(BaseModel):
    """Режим клонирования и параметр машины λ; μ вычисляется из λ"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    mode: Mode = Field(..., description="local - по кубиту в каждой лаборатории, nonlocal - вся пара сразу")
    lambda_: float = Field(..., alias="lambda", description="Параметр машины λ = d²", json_schema_extra={"example": 1 / 6})

    @computed_field
    @property
    def mu(self) -> float:
        """Коэффициент сжатия: 1 − 2λ (local), 1 − 4λ (nonlocal)."""
        return 1 - (2 if self.mode == "local" else 4) * self.lambda_


class OutputCoherences(BaseModel):
    c12: float = Field(..., ge=0)
    c34: float = Field(..., ge=0)
    c13: float = Field(..., ge=0)
    c24: float = Field(..., ge=0)


class CloneOutputs(BaseModel):
    """Четыре редуцированных выходных состояния в форме Блоха"""
    model_config = ConfigDict(frozen=True)

    rho12: BlochTwoQubit = Field(..., description="Нелокальная пара (1, 2)")
    rho34: BlochTwoQubit = Field(..., description="Нелокальная пара (3, 4)")
    rho13: BlochTwoQubit = Field(..., description="Локальная пара Алисы (1, 3)")
    rho24: BlochTwoQubit = Field(..., description="Локальная пара Боба (2, 4)")
    machine: MachineParam
    coherence: OutputCoherences


class DensityOutputs(BaseModel):
    """Те же четыре выхода, полученные оракулом в виде матриц плотности"""
    model_config = ConfigDict(frozen=True)

    rho12: DensityMatrix
    rho34: DensityMatrix
    rho13: DensityMatrix
    rho24: DensityMatrix
    machine: MachineParam
    coherence: OutputCoherences


class PositivityFinding(BaseModel):
    pair: str
    min_eigenvalue: float


class PositivitySurvey(BaseModel):
    """Замер положительности выходов замкнутых формул"""
    machine: MachineParam
    samples: int
    violations: int
    worst_min_eigenvalue: float
    findings: list[PositivityFinding] = Field(default_factory=list)
