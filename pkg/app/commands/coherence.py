from argparse import _SubParsersAction

from app.commands.arguments import add_output_arguments, add_state_arguments
from app.schemas.coherence import BasisSpec
from app.schemas.config import RunConfig
from app.schemas.state import BlochTwoQubit, DensityMatrix
from app.services.coherence import closed_form_coherence, eigenbasis, l1_coherence
from app.services.states import bloch_to_density, density_to_bloch
from app.utils.dependencies import get_output, get_state
from app.utils.serialization import dumps


def register(subparsers: _SubParsersAction) -> None:
    parser = subparsers.add_parser("coherence", help="l1-когерентность состояния")
    add_state_arguments(parser)
    parser.add_argument("--basis", choices=("computational", "bell", "eigen"), help="Базис измерения когерентности")
    add_output_arguments(parser, emit=False)
    parser.set_defaults(handler=run)


def _basis(config: RunConfig, rho: DensityMatrix) -> BasisSpec:
    if config.basis == "bell":
        return BasisSpec.bell()
    if config.basis == "eigen":
        return eigenbasis(rho)
    return BasisSpec.computational()


def run(config: RunConfig) -> int:
    """
    Когерентность входного состояния.

    ## Описание:
    Считает l1-когерентность (сумму модулей внедиагональных элементов) в выбранном базисе.
    Для двухкубитного состояния дополнительно выводит разложение замкнутой формы
    a1, a2, a3 в вычислительном базисе.

    ## Аргументы:
    - **--family** (`mcs-mis` | `bds`) с **--p** или **--beta**, либо
    - **--bloch** (`str`): JSON-файл `{x, y, T}` или `{beta}`, либо
    - **--density** (`str`): JSON-файл с матрицей из пар `[re, im]`.
    - **--basis** (`computational` | `bell` | `eigen`, по умолчанию `computational`).
      Пример: `coherence --density file.json --basis bell`

    ## Ответ:
    JSON с полями `basis`, `coherence` и `breakdown`.
    Пример: `coherence --family mcs-mis --p 1.0` → `coherence = 3.0`

    ## Ошибки:
    - `2`: некорректное или нефизическое состояние, матрица не 4×4.
    - `1`: ошибка чтения или записи файла.
    """
    state = get_state(config)
    if isinstance(state, BlochTwoQubit):
        bloch, rho = state, bloch_to_density(state)
    else:
        rho = state
        bloch = density_to_bloch(rho)
    basis = _basis(config, rho)
    result = {
        "basis": basis.label,
        "coherence": l1_coherence(rho, basis),
        "breakdown": closed_form_coherence(bloch).model_dump(exclude={"b1", "b2", "b3", "output_total"}),
    }
    with get_output(config) as stream:
        print(dumps(result), file=stream)
    return 0
