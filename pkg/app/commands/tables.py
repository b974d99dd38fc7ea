from argparse import _SubParsersAction
from typing import List

from app.commands.arguments import add_output_arguments
from app.schemas.broadcast import Interval
from app.schemas.config import RunConfig
from app.services.tables import reproduce_tables
from app.utils.dependencies import get_output
from app.utils.errors import TableMismatchError
from app.utils.serialization import dumps


def register(subparsers: _SubParsersAction) -> None:
    parser = subparsers.add_parser("tables", help="Пересчёт таблиц диапазонов β2")
    parser.add_argument("--mode", choices=("local", "nonlocal"), help="Только одна таблица")
    add_output_arguments(parser)
    parser.set_defaults(handler=run)


def format_intervals(intervals: List[Interval]) -> str:
    if not intervals:
        return "∅"
    parts = []
    for interval in intervals:
        left = "(" if interval.lower_open else "["
        right = ")" if interval.upper_open else "]"
        parts.append(f"{left}{interval.lower:.3f}, {interval.upper:.3f}{right}")
    return " ∪ ".join(parts)


def run(config: RunConfig) -> int:
    """
    Воспроизведение таблиц диапазонов вещания для BDS.

    ## Описание:
    Для каждой опубликованной строки (β1, β3) решает условие вещания относительно β2
    и сравнивает интервалы с опубликованными после округления до 3 знаков,
    включая открытость концов.

    ## Аргументы:
    - **--mode** (`local` | `nonlocal`, необязательно): только таблица I (11 строк) или II (16 строк).
    - **--emit json**: строки в машиночитаемом виде, порядок стабилен.

    ## Ответ:
    Текстовая таблица «опубликовано / вычислено / совпадение» или JSON.

    ## Ошибки:
    - `3`: хотя бы одна строка не совпала.
    - `1`: ошибка записи результата.
    """
    report = reproduce_tables([config.mode] if config.mode else None)
    with get_output(config) as stream:
        if config.emit == "json":
            print(dumps(report.model_dump()), file=stream)
        else:
            for row in report.rows:
                print(
                    f"{row.table:<3} β1={row.beta1:>5} β3={row.beta3:>5}  "
                    f"{format_intervals(row.published):<36} {format_intervals(row.computed):<36} "
                    f"{'ok' if row.match else 'MISMATCH'}",
                    file=stream,
                )
    if report.mismatches:
        raise TableMismatchError(f"Не совпало строк: {report.mismatches}")
    return 0
