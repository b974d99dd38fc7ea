from pydantic import BaseModel, Field

from app.schemas.broadcast import Interval
from app.schemas.cloning import Mode


class TableRow(BaseModel):
    """Строка таблицы диапазонов β2: опубликованные и пересчитанные интервалы"""
    table: str = Field(..., json_schema_extra={"example": "I"})
    mode: Mode
    beta1: float
    beta3: float
    published: list[Interval]
    computed: list[Interval]
    match: bool


class TableReport(BaseModel):
    rows: list[TableRow]
    mismatches: int = Field(..., description="Число строк, не совпавших при округлении до 3 знаков")
