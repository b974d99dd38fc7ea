from argparse import _SubParsersAction

from app.commands.arguments import add_machine_arguments, add_output_arguments
from app.schemas.config import RunConfig
from app.services.broadcast import region
from app.utils.dependencies import get_lambda, get_machine, get_output
from app.utils.errors import OutputError
from app.utils.serialization import dumps, write_csv, write_jsonl


def register(subparsers: _SubParsersAction) -> None:
    parser = subparsers.add_parser("region", help="Сетка вещания по тетраэдру BDS")
    add_machine_arguments(parser)
    parser.add_argument("--res", type=float, help="Шаг сетки, 0 < res ≤ 0.1 (по умолчанию 0.02)")
    add_output_arguments(parser)
    parser.set_defaults(handler=run)


def run(config: RunConfig) -> int:
    """
    Данные области вещания для Белл-диагональных состояний.

    ## Описание:
    Строит регулярную сетку β1, β2, β3 ∈ [−1/√2, 1/√2] с шагом `--res`, для каждой точки
    тетраэдра отмечает возможность вещания и нелокальную когерентность, hue нормирован
    по вещательным точкам сетки. Записи идут в лексикографическом порядке.

    ## Аргументы:
    - **--mode** (`local` | `nonlocal`, по умолчанию `local`).
    - **--res** (`float`): шаг сетки.
    - **--emit** (`csv` | `json`, по умолчанию `csv`): CSV или JSON-lines.
    - **--out** (`str`): файл для записей; тогда сводка печатается в stdout.

    ## Ответ:
    Записи `RegionRecord`; сводка `RegionSummary` (точки в тетраэдре, доля вещания,
    min/max когерентности для hue).

    ## Ошибки:
    - `2`: некорректный шаг или λ.
    - `1`: ошибка записи.
    """
    mode = config.mode or "local"
    get_machine(config, mode)
    lam = get_lambda(config, mode)
    summary, records = region(mode, config.res, lam)
    with get_output(config) as stream:
        try:
            if config.emit == "json":
                write_jsonl(records, stream)
            else:
                write_csv(records, stream)
        except OSError as exc:
            raise OutputError(f"Ошибка записи сетки: {exc}")
    if config.out is not None:
        print(dumps(summary.model_dump(by_alias=True)))
    return 0
