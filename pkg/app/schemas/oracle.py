from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.schemas.cloning import Mode


class Isometry(BaseModel):
    """Изометрия Бужека–Хиллери: вход M → копия ⊗ копия ⊗ машина"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True, populate_by_name=True)

    M: int = Field(..., description="Размерность копируемой системы")
    lambda_: float = Field(..., alias="lambda")
    c: float
    d: float
    matrix: np.ndarray = Field(..., description="Матрица (M³)×M")


class MultiDensity(BaseModel):
    """Совместное состояние на тензорном произведении нескольких множителей"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dims: Tuple[int, ...] = Field(..., description="Размерности множителей по порядку")
    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def as_complex(cls, value) -> np.ndarray:
        matrix = np.array(value, dtype=complex)
        matrix.setflags(write=False)
        return matrix

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))


class PairDeviation(BaseModel):
    pair: str = Field(..., json_schema_extra={"example": "rho12"})
    max_entry_deviation: float
    coherence_deviation: float


class ComparisonReport(BaseModel):
    """Сравнение оракула с замкнутыми формулами по всем четырём парам"""
    model_config = ConfigDict(populate_by_name=True)

    mode: Mode
    lambda_: float = Field(..., alias="lambda")
    pairs: list[PairDeviation]
    max_deviation: float
    max_coherence_deviation: float
    flagged: bool = Field(..., description="Расхождение выше допуска оракула")
