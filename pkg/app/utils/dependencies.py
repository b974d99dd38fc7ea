import json
import logging
import sys
from contextlib import contextmanager
from typing import Iterator, Optional, TextIO, Union

from pydantic import ValidationError

from app.schemas.cloning import MachineParam, Mode
from app.schemas.config import RunConfig
from app.schemas.state import BetaCoords, BlochTwoQubit, DensityMatrix, MixParam
from app.services.cloning import SI_LAMBDA, machine_param
from app.services.states import bds_to_bloch, bloch_to_density, density_to_bloch, mcs_mis_mixture, validate_state
from app.utils.errors import InvalidStateError, MachineRangeError, OutputError, StateError
from app.utils.serialization import matrix_from_pairs

logger = logging.getLogger(__name__)


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as stream:
            return json.load(stream)
    except OSError as exc:
        raise OutputError(f"Не удалось прочитать файл {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InvalidStateError(f"Файл {path} не является корректным JSON: {exc}")


def get_beta(config: RunConfig) -> BetaCoords:
    if config.beta is None:
        raise InvalidStateError("Не заданы β-координаты")
    return BetaCoords(beta1=config.beta[0], beta2=config.beta[1], beta3=config.beta[2])


def _check_physical(rho: DensityMatrix) -> None:
    report = validate_state(rho)
    if not report.valid:
        raise InvalidStateError(
            f"Матрица не является состоянием: эрмитовость {report.hermiticity_residual:.3g}, "
            f"след {report.trace_residual:.3g}, λ_min {report.min_eigenvalue:.3g}"
        )


def _load_state(config: RunConfig) -> Union[BlochTwoQubit, DensityMatrix]:
    if config.family == "mcs-mis":
        return mcs_mis_mixture(MixParam(p=config.p))
    if config.family == "bds":
        return bds_to_bloch(get_beta(config))
    if config.bloch is not None:
        data = _read_json(config.bloch)
        if "beta" in data:
            beta1, beta2, beta3 = data["beta"]
            return bds_to_bloch(BetaCoords(beta1=beta1, beta2=beta2, beta3=beta3))
        return BlochTwoQubit.from_arrays(data.get("x", (0, 0, 0)), data.get("y", (0, 0, 0)), data["T"])
    return DensityMatrix(entries=matrix_from_pairs(_read_json(config.density)))


def get_state(config: RunConfig) -> Union[BlochTwoQubit, DensityMatrix]:
    """Входное состояние из семейства, файла Блоха или файла матрицы плотности; всегда физическое 4×4."""
    try:
        state = _load_state(config)
    except (ValidationError, StateError, KeyError, TypeError, ValueError) as exc:
        raise InvalidStateError(f"Некорректное состояние: {exc}")
    if isinstance(state, BlochTwoQubit):
        _check_physical(bloch_to_density(state))
        return state
    if state.dim != 4:
        raise InvalidStateError(f"Ожидалась матрица 4×4, получена {state.dim}×{state.dim}")
    _check_physical(state)
    return state


def get_bloch_state(config: RunConfig) -> BlochTwoQubit:
    state = get_state(config)
    if isinstance(state, BlochTwoQubit):
        return state
    try:
        return density_to_bloch(state)
    except StateError as exc:
        raise InvalidStateError(str(exc))


def get_lambda(config: RunConfig, mode: Mode) -> float:
    return SI_LAMBDA[mode] if config.lambda_ is None else config.lambda_


def get_machine(config: RunConfig, mode: Optional[Mode] = None) -> MachineParam:
    """Машина из --lambda; без него (или с --si) - состояние-независимая."""
    mode = mode or config.mode
    try:
        return machine_param(mode, get_lambda(config, mode))
    except MachineRangeError as exc:
        raise InvalidStateError(str(exc))


@contextmanager
def get_output(config: RunConfig) -> Iterator[TextIO]:
    """Поток для результата: файл из --out или stdout."""
    if config.out is None:
        yield sys.stdout
        return
    try:
        stream = open(config.out, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise OutputError(f"Не удалось открыть {config.out} для записи: {exc}")
    with stream:
        yield stream
    logger.info("Результат записан в %s", config.out)
