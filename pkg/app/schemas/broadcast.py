from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from app.schemas.cloning import Mode
from app.utils.serialization import round_half_up


class BroadcastVerdict(BaseModel):
    """Когерентности четырёх выходов и оба критерия вещания"""
    coh_in: float = Field(..., ge=0, description="C(ρ12) входа")
    coh_12: float = Field(..., ge=0)
    coh_34: float = Field(..., ge=0)
    coh_13: float = Field(..., ge=0)
    coh_24: float = Field(..., ge=0)
    optimal: bool = Field(..., description="Локальные пары некогерентны, нелокальные когерентны")
    nonoptimal: bool = Field(..., description="Нелокальные пары когерентнее обеих локальных")
    gained: bool = Field(..., description="coh_12 > coh_in")


class Interval(BaseModel):
    model_config = ConfigDict(frozen=True)

    lower: float
    upper: float
    lower_open: bool
    upper_open: bool

    def contains(self, value: float) -> bool:
        above = value > self.lower if self.lower_open else value >= self.lower
        below = value < self.upper if self.upper_open else value <= self.upper
        return above and below

    def rounded(self, digits: int = 3) -> "Interval":
        return Interval(
            lower=round_half_up(self.lower, digits),
            upper=round_half_up(self.upper, digits),
            lower_open=self.lower_open,
            upper_open=self.upper_open,
        )


class Beta2Range(BaseModel):
    """Диапазон β2, при котором возможно вещание, для фиксированных β1, β3"""
    model_config = ConfigDict(populate_by_name=True)

    mode: Mode
    lambda_: float = Field(..., alias="lambda")
    beta1: float
    beta3: float
    intervals: list[Interval] = Field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not self.intervals


class RegionRecord(BaseModel):
    beta1: float
    beta2: float
    beta3: float
    in_tetrahedron: bool
    broadcastable: bool
    nonlocal_coherence: float = Field(..., ge=0)
    hue: Optional[float] = Field(None, ge=0, le=1, description="Нормированная нелокальная когерентность")


class RegionSummary(BaseModel):
    """Сводка по сетке тетраэдра"""
    model_config = ConfigDict(populate_by_name=True)

    mode: Mode
    lambda_: float = Field(..., alias="lambda")
    resolution: float
    points: int
    in_tetrahedron: int
    broadcastable: int
    broadcastable_fraction: float
    coherence_min: Optional[float] = None
    coherence_max: Optional[float] = None


class NoGainReport(BaseModel):
    """Итог выборочной проверки: когерентность не растёт при клонировании"""
    mode: Mode
    samples: int
    coherent_samples: int
    excluded_incoherent: int = Field(..., description="Входы с нулевой когерентностью, отношение не определено")
    max_ratio: Optional[float] = None
    max_mu_deviation: Optional[float] = Field(None, description="max |C(ρ̃12) − μ·C(ρ12)|")
    violations: int = 0


class CrosscheckRecord(BaseModel):
    """Печатная формула для BDS против расчёта из первых принципов"""
    model_config = ConfigDict(populate_by_name=True)

    mode: Mode
    lambda_: float = Field(..., alias="lambda")
    beta1: float
    beta2: float
    beta3: float
    printed: float
    first_principles: float
    disagree: bool
