from typing import Optional


class CommandError(Exception):
    """Ошибка уровня команды: код выхода и сообщение для пользователя."""

    exit_code = 1

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class OutputError(CommandError):
    exit_code = 1


class InvalidStateError(CommandError):
    exit_code = 2


class TableMismatchError(CommandError):
    exit_code = 3


class PropertyViolationError(CommandError):
    exit_code = 4


class StateError(ValueError):
    """Некорректное состояние: размерность, эрмитовость, вероятности."""


class TetrahedronError(StateError):
    """β-координаты вне тетраэдра Белл-диагональных состояний."""


class MachineRangeError(ValueError):
    """Параметр машины вне допустимого диапазона или неверный режим."""


class OracleRangeError(ValueError):
    """λ за пределом существования изометрии."""


class BasisError(ValueError):
    """Базис не является унитарной матрицей."""


class GeometryError(ValueError):
    """Вырожденный треугольник или точка вне его."""
