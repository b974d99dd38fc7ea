from argparse import _SubParsersAction

from app.commands.arguments import add_machine_arguments, add_output_arguments
from app.schemas.config import RunConfig
from app.services.broadcast import crosscheck, crosscheck_scan
from app.utils.dependencies import get_beta, get_machine, get_output
from app.utils.errors import InvalidStateError, TetrahedronError
from app.utils.serialization import dumps


def register(subparsers: _SubParsersAction) -> None:
    parser = subparsers.add_parser("crosscheck", help="Печатная формула BDS против расчёта")
    add_machine_arguments(parser)
    parser.add_argument("--beta", help="β-координаты через запятую")
    parser.add_argument("--scan", action="store_true", help="Сверка по всей сетке тетраэдра")
    parser.add_argument("--res", type=float, help="Шаг сетки для --scan")
    add_output_arguments(parser, emit=False)
    parser.set_defaults(handler=run)


def run(config: RunConfig) -> int:
    """
    Сверка опубликованных выражений когерентности BDS с расчётом из первых принципов.

    ## Описание:
    Печатная формула для C(ρ̃12) Белл-диагональных состояний не совпадает с l1-когерентностью,
    полученной замкнутыми отображениями клонера. Команда выводит оба значения и флаг расхождения.
    С `--scan` перебирает сетку тетраэдра и сообщает число расхождений и максимум |Δ|.

    ## Аргументы:
    - **--mode** (`local` | `nonlocal`, обязательно).
    - **--beta** (`b1,b2,b3`) или **--scan** с **--res**.
    - **--lambda** (`float`) или **--si** (по умолчанию).

    ## Ответ:
    JSON `CrosscheckRecord` или сводка сканирования.

    ## Ошибки:
    - `2`: точка вне тетраэдра или λ вне диапазона.
    """
    machine = get_machine(config)
    if config.scan:
        total, disagreements, worst = crosscheck_scan(machine.mode, config.res, machine.lambda_)
        result = {
            "mode": machine.mode,
            "lambda": machine.lambda_,
            "resolution": config.res,
            "points": total,
            "disagreements": disagreements,
            "max_abs_difference": worst,
        }
    else:
        try:
            result = crosscheck(machine.mode, get_beta(config), machine.lambda_).model_dump(by_alias=True)
        except TetrahedronError as exc:
            raise InvalidStateError(str(exc))
    with get_output(config) as stream:
        print(dumps(result), file=stream)
    return 0
