import logging
from argparse import _SubParsersAction

from app.commands.arguments import add_machine_arguments, add_output_arguments, add_state_arguments
from app.schemas.config import RunConfig
from app.services.broadcast import bds_condition, bds_local_output_coherence, bds_printed_coherence, verdict
from app.services.cloning import clone
from app.utils.dependencies import get_beta, get_bloch_state, get_machine, get_output
from app.utils.serialization import dumps

logger = logging.getLogger(__name__)


def register(subparsers: _SubParsersAction) -> None:
    parser = subparsers.add_parser("clone", help="Четыре выхода клонера и вердикт вещания")
    add_state_arguments(parser)
    add_machine_arguments(parser)
    add_output_arguments(parser, emit=False)
    parser.set_defaults(handler=run)


def run(config: RunConfig) -> int:
    """
    Клонирование состояния и проверка вещания когерентности.

    ## Описание:
    Применяет замкнутые отображения локального или нелокального клонера к входу
    и выводит все четыре выходные пары в форме Блоха с их когерентностями,
    а также вердикт вещания. Для семейства `bds` дополнительно выводится
    `printed_verdict` по опубликованным выражениям для BDS; он может расходиться
    с расчётным `verdict`.

    ## Аргументы:
    - **--mode** (`local` | `nonlocal`, обязательно).
    - **--lambda** (`float`) или **--si** (по умолчанию): параметр машины.
    - Источник состояния, как у команды `coherence`.

    ## Ответ:
    JSON с полями `machine`, `outputs`, `coherence`, `verdict` (и `printed_verdict` для BDS).
    Пример: `clone --mode nonlocal --si --family mcs-mis --p 0.5` → `coh_12 = 0.9`

    ## Ошибки:
    - `2`: некорректное состояние или λ вне диапазона режима.
    - `1`: ошибка записи результата.
    """
    state = get_bloch_state(config)
    machine = get_machine(config)
    outputs = clone(state, machine)
    result = {
        "machine": machine.model_dump(by_alias=True),
        "outputs": {pair: getattr(outputs, pair).model_dump() for pair in ("rho12", "rho34", "rho13", "rho24")},
        "coherence": outputs.coherence.model_dump(),
        "verdict": verdict(state, machine.mode, machine.lambda_).model_dump(),
    }
    if config.family == "bds":
        beta = get_beta(config)
        printed = bds_printed_coherence(machine.mode, beta, machine.lambda_)
        result["printed_verdict"] = {
            "coh_12": printed,
            "coh_13": bds_local_output_coherence(machine.lambda_),
            "nonoptimal": bds_condition(machine.mode, beta, machine.lambda_),
        }
        if result["printed_verdict"]["nonoptimal"] != result["verdict"]["nonoptimal"]:
            logger.warning("Печатный и расчётный вердикты для BDS расходятся")
    with get_output(config) as stream:
        print(dumps(result), file=stream)
    return 0
