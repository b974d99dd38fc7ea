from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.schemas.cloning import Mode

Command = Literal["coherence", "clone", "tables", "verify", "region", "crosscheck"]
Family = Literal["mcs-mis", "bds"]

# команды, которым нужно входное состояние
STATE_COMMANDS = ("coherence", "clone")


class RunConfig(BaseModel):
    """Параметры запуска команды, собранные из аргументов командной строки"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    command: Command
    mode: Optional[Mode] = Field(None, description="Режим клонирования; без него команды перебирают оба")
    lambda_: Optional[float] = Field(None, alias="lambda", ge=0, description="Параметр машины λ")
    si: bool = Field(False, description="Состояние-независимая машина")
    family: Optional[Family] = None
    p: Optional[float] = Field(None, ge=0, le=1, json_schema_extra={"example": 0.8})
    beta: Optional[Tuple[float, float, float]] = Field(None, json_schema_extra={"example": [0.2, 0.43, -0.2]})
    bloch: Optional[str] = Field(None, description="JSON-файл с {x, y, T} или {beta}")
    density: Optional[str] = Field(None, description="JSON-файл с матрицей 4×4 из пар [re, im]")
    basis: Literal["computational", "bell", "eigen"] = "computational"
    emit: Optional[Literal["csv", "json"]] = Field(None, description="Формат вывода; по умолчанию зависит от команды")
    out: Optional[str] = None
    res: float = Field(0.02, gt=0, le=0.1, description="Шаг сетки по β")
    samples: int = Field(500, ge=1)
    seed: Optional[int] = Field(None, ge=0, lt=2 ** 64)
    scan: bool = False

    @field_validator("beta", mode="before")
    @classmethod
    def parse_beta(cls, value):
        if isinstance(value, str):
            parts = [part.strip() for part in value.split(",")]
            if len(parts) != 3:
                raise ValueError("β задаётся тремя числами через запятую")
            return tuple(float(part) for part in parts)
        return value

    @model_validator(mode="after")
    def check_sources(self) -> "RunConfig":
        if self.si and self.lambda_ is not None:
            raise ValueError("Нельзя одновременно указывать --lambda и --si")
        if self.command in STATE_COMMANDS:
            sources = sum(value is not None for value in (self.family, self.bloch, self.density))
            if sources != 1:
                raise ValueError("Нужен ровно один источник состояния: --family, --bloch или --density")
            if self.family == "mcs-mis" and self.p is None:
                raise ValueError("Для семейства mcs-mis нужен параметр --p")
            if self.family == "bds" and self.beta is None:
                raise ValueError("Для семейства bds нужен параметр --beta")
        if self.command == "clone" and self.mode is None:
            raise ValueError("Для клонирования нужен --mode")
        if self.command == "crosscheck":
            if self.mode is None:
                raise ValueError("Для сверки нужен --mode")
            if not self.scan and self.beta is None:
                raise ValueError("Для сверки нужен --beta или --scan")
        return self
