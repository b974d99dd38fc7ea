import logging
from typing import Tuple

import numpy as np

from app.schemas.state import BellProbs, BetaCoords, BlochTwoQubit, DensityMatrix, MixParam, ValidityReport
from app.settings import TOL_HERMITIAN, TOL_IMAG, TOL_PSD, TOL_TRACE, TOL_ZERO
from app.utils.errors import StateError, TetrahedronError
from app.utils.linalg import BELL_BASIS, PAULI_PRODUCTS, hermiticity_residual, projector
from app.utils.sampling import random_density_matrix

logger = logging.getLogger(__name__)

SQRT2 = np.sqrt(2)

MCS_VECTOR = np.full(4, 0.5, dtype=complex)
MIS_DENSITY = np.eye(4, dtype=complex) / 4


def _coefficients(s: BlochTwoQubit) -> np.ndarray:
    """Матрица R[a, b] коэффициентов при σa ⊗ σb, R[0, 0] = 1."""
    r = np.zeros((4, 4))
    r[0, 0] = 1.0
    r[1:, 0] = s.x
    r[0, 1:] = s.y
    r[1:, 1:] = s.T
    return r


def bloch_to_density(s: BlochTwoQubit) -> DensityMatrix:
    """Собирает матрицу 4×4 по разложению Паули в базисе |00⟩, |01⟩, |10⟩, |11⟩."""
    rho = np.einsum("ab,abij->ij", _coefficients(s), PAULI_PRODUCTS) / 4
    return DensityMatrix(entries=rho)


def density_to_bloch(rho: DensityMatrix) -> BlochTwoQubit:
    """Извлекает x_i = Tr[ρ(σi⊗I)], y_j = Tr[ρ(I⊗σj)], t_ij = Tr[ρ(σi⊗σj)]."""
    if rho.dim != 4:
        raise StateError(f"Ожидалась матрица 4×4, получена {rho.dim}×{rho.dim}")
    r = np.einsum("ij,abji->ab", rho.entries, PAULI_PRODUCTS)
    if np.max(np.abs(r.imag)) > TOL_IMAG:
        raise StateError("Матрица не эрмитова: параметры Блоха имеют мнимую часть")
    r = r.real
    return BlochTwoQubit.from_arrays(r[1:, 0], r[0, 1:], r[1:, 1:])


def validate_state(rho: DensityMatrix) -> ValidityReport:
    """Проверяет эрмитовость, след и положительность; ошибки возвращаются в отчёте."""
    entries = rho.entries
    herm = hermiticity_residual(entries)
    trace = abs(complex(np.trace(entries)) - 1)
    min_eig = float(np.min(np.linalg.eigvalsh((entries + entries.conj().T) / 2)))
    return ValidityReport(
        hermiticity_residual=herm,
        trace_residual=trace,
        min_eigenvalue=min_eig,
        valid=herm <= TOL_HERMITIAN and trace <= TOL_TRACE and min_eig >= -TOL_PSD,
    )


def mcs_mis_mixture(m: MixParam) -> BlochTwoQubit:
    """Смесь p·|MCS⟩⟨MCS| + (1−p)·I/4: x = y = (p, 0, 0), t11 = p."""
    p = m.p
    t = np.zeros((3, 3))
    t[0, 0] = p
    return BlochTwoQubit.from_arrays((p, 0, 0), (p, 0, 0), t)


def mcs_density() -> np.ndarray:
    return projector(MCS_VECTOR)


def bell_projector(index: int) -> np.ndarray:
    """Проектор на состояние Белла по номеру вероятности: 1 - Φ+, 2 - Φ−, 3 - Ψ+, 4 - Ψ−."""
    return projector(BELL_BASIS[:, index - 1])


def beta_from_probs(bp: BellProbs) -> BetaCoords:
    p1, p2, p3, p4 = bp.as_tuple()
    return BetaCoords(
        beta1=(p1 - p2 - p3 + p4) / 2,
        beta2=(p1 - p4) / SQRT2,
        beta3=(p2 - p3) / SQRT2,
    )


def beta0_from_probs(bp: BellProbs) -> float:
    return sum(bp.as_tuple()) / 2


def bell_weights(beta1, beta2, beta3):
    """Вероятности Белла p1..p4 по β-координатам; принимает числа и массивы numpy."""
    return (
        (0.5 + beta1 + SQRT2 * beta2) / 2,
        (0.5 - beta1 + SQRT2 * beta3) / 2,
        (0.5 - beta1 - SQRT2 * beta3) / 2,
        (0.5 + beta1 - SQRT2 * beta2) / 2,
    )


def probs_from_beta(b: BetaCoords) -> Tuple[float, float, float, float]:
    """Обратное преобразование; значения могут быть отрицательными вне тетраэдра."""
    return tuple(float(p) for p in bell_weights(*b.as_tuple()))


def in_tetrahedron(b: BetaCoords) -> bool:
    return min(probs_from_beta(b)) >= -TOL_ZERO


def bds_to_bloch(b: BetaCoords) -> BlochTwoQubit:
    """Белл-диагональное состояние: x = y = 0, T = diag[√2(β2−β3), −2β1, √2(β2+β3)]."""
    if not in_tetrahedron(b):
        raise TetrahedronError(f"Точка β = {b.as_tuple()} лежит вне тетраэдра")
    b1, b2, b3 = b.as_tuple()
    t = np.diag([SQRT2 * (b2 - b3), -2 * b1, SQRT2 * (b2 + b3)])
    return BlochTwoQubit.from_arrays((0, 0, 0), (0, 0, 0), t)


def is_separable_bds(bp: BellProbs) -> bool:
    return max(bp.as_tuple()) <= 0.5 + TOL_ZERO


def random_bloch_state(rng: np.random.Generator) -> BlochTwoQubit:
    """Случайное физическое состояние: случайная матрица плотности в форме Блоха."""
    rho = random_density_matrix(rng, 4)
    state = density_to_bloch(DensityMatrix(entries=rho))
    logger.debug("Сгенерировано состояние x=%s y=%s", state.x, state.y)
    return state
