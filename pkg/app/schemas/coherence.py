from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.utils.linalg import BELL_BASIS


class CoherenceBreakdown(BaseModel):
    """Разложение l1-когерентности на слагаемые a1..a3 (вход) и b1..b3 (выход ρ̃12)"""
    a1: float = Field(0.0, ge=0)
    a2: float = Field(0.0, ge=0)
    a3: float = Field(0.0, ge=0)
    b1: float = Field(0.0, ge=0)
    b2: float = Field(0.0, ge=0)
    b3: float = Field(0.0, ge=0)
    total: float = Field(..., ge=0, description="(a1 + a2 + a3) / 2")
    output_total: Optional[float] = Field(None, description="(b1 + b2 + b3) / 2, если задана машина")

    @property
    def x_aggregate(self) -> float:
        return 2 * self.total


class BasisSpec(BaseModel):
    """Базис измерения: вычислительный (unitary=None) или столбцы унитарной матрицы"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    label: str = Field("computational", description="Название базиса")
    unitary: Optional[np.ndarray] = Field(None, description="Столбцы - векторы базиса")

    @classmethod
    def computational(cls) -> "BasisSpec":
        return cls()

    @classmethod
    def bell(cls) -> "BasisSpec":
        return cls(label="bell", unitary=BELL_BASIS)

    @classmethod
    def from_unitary(cls, unitary, label: str = "custom") -> "BasisSpec":
        return cls(label=label, unitary=np.asarray(unitary, dtype=complex))
