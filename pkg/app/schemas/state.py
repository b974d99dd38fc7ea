from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.settings import TOL_TRACE, TOL_ZERO

Vector3 = Tuple[float, float, float]
Matrix3 = Tuple[Vector3, Vector3, Vector3]

_ZERO3 = (0.0, 0.0, 0.0)


class BlochTwoQubit(BaseModel):
    """Двухкубитное состояние в форме {x, y, T}"""
    model_config = ConfigDict(frozen=True)

    x: Vector3 = Field(_ZERO3, description="Вектор Блоха первого кубита", json_schema_extra={"example": [1.0, 0.0, 0.0]})
    y: Vector3 = Field(_ZERO3, description="Вектор Блоха второго кубита", json_schema_extra={"example": [1.0, 0.0, 0.0]})
    T: Matrix3 = Field((_ZERO3, _ZERO3, _ZERO3), description="Корреляционная матрица t_ij, по строкам",
                       json_schema_extra={"example": [[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]})

    @field_validator("x", "y")
    @classmethod
    def check_bloch_ball(cls, value: Vector3) -> Vector3:
        if float(np.linalg.norm(value)) > 1 + TOL_TRACE:
            raise ValueError("Вектор Блоха выходит за пределы единичного шара")
        return value

    @classmethod
    def from_arrays(cls, x, y, t) -> "BlochTwoQubit":
        return cls(
            x=tuple(np.asarray(x, dtype=float).tolist()),
            y=tuple(np.asarray(y, dtype=float).tolist()),
            T=tuple(tuple(row) for row in np.asarray(t, dtype=float).tolist()),
        )

    @property
    def x_vec(self) -> np.ndarray:
        return np.array(self.x, dtype=float)

    @property
    def y_vec(self) -> np.ndarray:
        return np.array(self.y, dtype=float)

    @property
    def t_mat(self) -> np.ndarray:
        return np.array(self.T, dtype=float)


class DensityMatrix(BaseModel):
    """Комплексная матрица плотности dim×dim"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: np.ndarray = Field(..., description="Элементы матрицы в вычислительном базисе")

    @field_validator("entries", mode="before")
    @classmethod
    def as_square_complex(cls, value) -> np.ndarray:
        matrix = np.array(value, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
            raise ValueError("Матрица плотности должна быть квадратной")
        matrix.setflags(write=False)
        return matrix

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


class ValidityReport(BaseModel):
    hermiticity_residual: float = Field(..., description="max |ρ_ij − conj(ρ_ji)|")
    trace_residual: float = Field(..., description="|Tr ρ − 1|")
    min_eigenvalue: float = Field(..., description="Минимальное собственное значение")
    valid: bool = Field(..., description="Все три проверки пройдены")


class BellProbs(BaseModel):
    """Вероятности смеси четырёх состояний Белла (Φ+, Φ−, Ψ+, Ψ−)"""
    model_config = ConfigDict(frozen=True)

    p1: float = Field(..., description="Вес |Φ+⟩", json_schema_extra={"example": 0.25})
    p2: float = Field(..., description="Вес |Φ−⟩", json_schema_extra={"example": 0.25})
    p3: float = Field(..., description="Вес |Ψ+⟩", json_schema_extra={"example": 0.25})
    p4: float = Field(..., description="Вес |Ψ−⟩", json_schema_extra={"example": 0.25})

    @model_validator(mode="after")
    def check_distribution(self) -> "BellProbs":
        probs = self.as_tuple()
        if min(probs) < -TOL_ZERO:
            raise ValueError("Вероятности не могут быть отрицательными")
        if abs(sum(probs) - 1) > TOL_ZERO:
            raise ValueError("Сумма вероятностей должна быть равна 1")
        return self

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return self.p1, self.p2, self.p3, self.p4


class BetaCoords(BaseModel):
    """β-координаты Белл-диагонального состояния; β0 всегда равно 1/2"""
    model_config = ConfigDict(frozen=True)

    beta1: float = Field(..., json_schema_extra={"example": 0.2})
    beta2: float = Field(..., json_schema_extra={"example": 0.43})
    beta3: float = Field(..., json_schema_extra={"example": -0.2})

    @property
    def beta0(self) -> float:
        return 0.5

    def as_tuple(self) -> Tuple[float, float, float]:
        return self.beta1, self.beta2, self.beta3


class MixParam(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: float = Field(..., ge=0, le=1, description="Вес MCS в смеси p·MCS + (1−p)·MIS", json_schema_extra={"example": 0.8})
