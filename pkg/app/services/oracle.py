import logging
import string
from typing import Iterable, Sequence

import numpy as np

from app.schemas.cloning import DensityOutputs, Mode, OutputCoherences
from app.schemas.oracle import ComparisonReport, Isometry, MultiDensity, PairDeviation
from app.schemas.state import BlochTwoQubit, DensityMatrix
from app.services.cloning import clone, machine_param
from app.services.coherence import l1_coherence
from app.services.states import bloch_to_density
from app.settings import TOL_ORACLE
from app.utils.errors import OracleRangeError

logger = logging.getLogger(__name__)

PAIRS = {"rho12": (0, 1), "rho34": (2, 3), "rho13": (0, 2), "rho24": (1, 3)}

# (1, 3, mA, 2, 4, mB) → (1, 2, 3, 4, mA, mB)
LOCAL_ORDER = (0, 3, 1, 4, 2, 5)


def oracle_lambda_bound(M: int) -> float:
    """Изометрия существует при c² = 1 − 2(M−1)λ ≥ 0."""
    return 1 / (2 * (M - 1))


def build_bh_isometry(M: int, lam: float) -> Isometry:
    """V|i⟩ = c|i,i,m_i⟩ + d·Σ_{j≠i}(|i,j,m_j⟩ + |j,i,m_j⟩) с ортонормированным базисом машины."""
    if M not in (2, 4):
        raise OracleRangeError(f"Поддерживаются только M = 2 и M = 4, получено M = {M}")
    bound = oracle_lambda_bound(M)
    if not 0 <= lam <= bound:
        raise OracleRangeError(f"λ = {lam} вне области существования изометрии [0, {bound:.6g}] при M = {M}")
    c = float(np.sqrt(max(0.0, 1 - 2 * (M - 1) * lam)))
    d = float(np.sqrt(lam))
    matrix = np.zeros((M, M, M, M), dtype=complex)
    for i in range(M):
        matrix[i, i, i, i] = c
        for j in range(M):
            if j != i:
                matrix[i, j, j, i] = d
                matrix[j, i, j, i] = d
    return Isometry(M=M, lambda_=lam, c=c, d=d, matrix=matrix.reshape(M ** 3, M))


def first_copy_shrinking(M: int, lam: float) -> float:
    """Сжатие недиагональных элементов одной копии: 2cd + (M−2)d²."""
    c = np.sqrt(max(0.0, 1 - 2 * (M - 1) * lam))
    return float(2 * c * np.sqrt(lam) + (M - 2) * lam)


def copy_diagonal_shrinking(M: int, lam: float) -> float:
    return 1 - M * lam


def apply_isometry(v: np.ndarray, rho: np.ndarray, dims: Sequence[int]) -> MultiDensity:
    return MultiDensity(dims=tuple(dims), entries=v @ rho @ v.conj().T)


def permute_factors(rho: MultiDensity, order: Sequence[int]) -> MultiDensity:
    """Переставляет множители тензорного произведения в порядке order."""
    n = len(rho.dims)
    if sorted(order) != list(range(n)):
        raise ValueError(f"Некорректная перестановка {order}")
    tensor = rho.entries.reshape(rho.dims + rho.dims)
    tensor = tensor.transpose(tuple(order) + tuple(n + k for k in order))
    dims = tuple(rho.dims[k] for k in order)
    size = int(np.prod(dims))
    return MultiDensity(dims=dims, entries=tensor.reshape(size, size))


def partial_trace(rho: MultiDensity, keep: Iterable[int]) -> MultiDensity:
    """Частичный след по всем множителям, кроме keep; порядок оставшихся сохраняется."""
    n = len(rho.dims)
    keep = list(keep)
    if not keep or len(set(keep)) != len(keep) or any(k < 0 or k >= n for k in keep):
        raise ValueError(f"Некорректный набор индексов {keep} для {n} множителей")
    keep = sorted(keep)
    rows = string.ascii_letters[:n]
    cols = [rows[k] if k not in keep else string.ascii_letters[n + k] for k in range(n)]
    out_rows = "".join(rows[k] for k in keep)
    out_cols = "".join(cols[k] for k in keep)
    spec = f"{rows}{''.join(cols)}->{out_rows}{out_cols}"
    tensor = np.einsum(spec, rho.entries.reshape(rho.dims + rho.dims))
    dims = tuple(rho.dims[k] for k in keep)
    size = int(np.prod(dims))
    return MultiDensity(dims=dims, entries=tensor.reshape(size, size))


def _joint_state(s: BlochTwoQubit, mode: Mode, lam: float) -> MultiDensity:
    rho = bloch_to_density(s).entries
    if mode == "nonlocal":
        v = build_bh_isometry(4, lam).matrix
        return apply_isometry(v, rho, (2, 2, 2, 2, 4))
    v = build_bh_isometry(2, lam).matrix
    joint = apply_isometry(np.kron(v, v), rho, (2, 2, 2, 2, 2, 2))
    return permute_factors(joint, LOCAL_ORDER)


def oracle_clone(s: BlochTwoQubit, mode: Mode, lam: float) -> DensityOutputs:
    """Применяет изометрию к ρ12 и редуцирует совместное состояние ко всем четырём парам."""
    joint = _joint_state(s, mode, lam)
    reduced = {name: DensityMatrix(entries=partial_trace(joint, keep).entries) for name, keep in PAIRS.items()}
    coherence = OutputCoherences(**{f"c{name[3:]}": l1_coherence(rho) for name, rho in reduced.items()})
    # машина здесь только как метка режима и λ; диапазон замкнутой модели шире
    machine = machine_param(mode, lam)
    return DensityOutputs(**reduced, machine=machine, coherence=coherence)


def compare_with_closed_form(s: BlochTwoQubit, mode: Mode, lam: float) -> ComparisonReport:
    """Максимальные отклонения оракула от замкнутых формул по каждой паре."""
    oracle = oracle_clone(s, mode, lam)
    closed = clone(s, oracle.machine)
    pairs = []
    for name in PAIRS:
        expected = bloch_to_density(getattr(closed, name)).entries
        actual = getattr(oracle, name).entries
        pairs.append(PairDeviation(
            pair=name,
            max_entry_deviation=float(np.max(np.abs(actual - expected))),
            coherence_deviation=abs(l1_coherence(actual) - l1_coherence(expected)),
        ))
    max_dev = max(pair.max_entry_deviation for pair in pairs)
    report = ComparisonReport(
        mode=mode,
        lambda_=lam,
        pairs=pairs,
        max_deviation=max_dev,
        max_coherence_deviation=max(pair.coherence_deviation for pair in pairs),
        flagged=max_dev > TOL_ORACLE,
    )
    if report.flagged:
        logger.warning("Оракул расходится с замкнутой формулой: %s λ=%.6g, отклонение %.3g", mode, lam, max_dev)
    return report
