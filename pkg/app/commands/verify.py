from argparse import _SubParsersAction

from app.commands.arguments import add_machine_arguments, add_output_arguments
from app.schemas.config import RunConfig
from app.services.verification import run_verification
from app.utils.dependencies import get_machine, get_output
from app.utils.errors import PropertyViolationError
from app.utils.serialization import dumps


def register(subparsers: _SubParsersAction) -> None:
    parser = subparsers.add_parser("verify", help="Проверочные батареи с фиксированным зерном")
    add_machine_arguments(parser)
    parser.add_argument("--samples", type=int, help="Число случайных состояний (по умолчанию 500)")
    parser.add_argument("--seed", type=int, help="Зерно генератора")
    add_output_arguments(parser, emit=False)
    parser.set_defaults(handler=run)


def run(config: RunConfig) -> int:
    """
    Проверка свойств клонеров на случайных состояниях.

    ## Описание:
    Запускает батареи: сверку оракула-изометрии с замкнутыми формулами в
    состояние-независимых точках, отсутствие оптимального вещания, неубывание
    когерентности, разложение на a1..a3, лемму о путях в треугольнике и пороги
    смеси MCS/MIS. Нарушения положительности выходов выводятся как находки.
    Если λ больше границы существования изометрии, сверка с оракулом пропускается
    с пометкой, остальные проверки выполняются.

    ## Аргументы:
    - **--samples** (`int`, ≥ 1): число состояний, треугольников берётся в 10 раз больше.
    - **--seed** (`int`): зерно; одинаковое зерно даёт одинаковый вывод.
    - **--mode**, **--lambda**: ограничить режим и зафиксировать λ.

    ## Ответ:
    JSON-отчёт `VerificationReport` с полем `passed`.

    ## Ошибки:
    - `4`: нарушено хотя бы одно свойство.
    - `2`: некорректные параметры.
    """
    modes = [config.mode] if config.mode else ["local", "nonlocal"]
    for mode in modes:
        get_machine(config, mode)
    report = run_verification(config.samples, config.seed, modes, config.lambda_)
    with get_output(config) as stream:
        print(dumps({**report.model_dump(by_alias=True), "passed": report.passed}), file=stream)
    if not report.passed:
        failed = [check.name for check in report.checks if not check.passed]
        failed += [f"no-gain-{item.mode}" for item in report.no_gain if item.violations]
        raise PropertyViolationError(f"Нарушены свойства: {', '.join(failed)}")
    return 0
