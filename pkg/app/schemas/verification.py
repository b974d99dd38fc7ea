from typing import Optional

from pydantic import BaseModel, Field

from app.schemas.broadcast import NoGainReport
from app.schemas.cloning import PositivitySurvey


class CheckResult(BaseModel):
    name: str = Field(..., json_schema_extra={"example": "oracle-local"})
    passed: bool
    samples: int = 0
    max_deviation: Optional[float] = None
    skipped: bool = False
    note: Optional[str] = None


class VerificationReport(BaseModel):
    """Итог проверочных батарей: проверки, находки и отчёты о неросте когерентности"""
    seed: Optional[int] = None
    samples: int
    checks: list[CheckResult] = Field(default_factory=list)
    no_gain: list[NoGainReport] = Field(default_factory=list)
    positivity: list[PositivitySurvey] = Field(default_factory=list, description="Находки, а не ошибки")

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks) and all(report.violations == 0 for report in self.no_gain)
