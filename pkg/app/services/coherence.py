import logging
from typing import Optional, Union

import numpy as np

from app.schemas.cloning import MachineParam
from app.schemas.coherence import BasisSpec, CoherenceBreakdown
from app.schemas.state import BlochTwoQubit, DensityMatrix
from app.services.states import bloch_to_density
from app.settings import TOL_HERMITIAN, TOL_ZERO
from app.utils.errors import BasisError, GeometryError
from app.utils.linalg import unitarity_residual

logger = logging.getLogger(__name__)

MatrixLike = Union[DensityMatrix, np.ndarray]


def _entries(rho: MatrixLike) -> np.ndarray:
    return rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


def l1_coherence(rho: MatrixLike, basis: Optional[BasisSpec] = None) -> float:
    """Сумма модулей внедиагональных элементов U†ρU (U = I для вычислительного базиса)."""
    entries = _entries(rho)
    if basis is not None and basis.unitary is not None:
        u = basis.unitary
        if u.shape != entries.shape or unitarity_residual(u) > TOL_HERMITIAN:
            raise BasisError(f"Базис «{basis.label}» не является унитарной матрицей нужного размера")
        entries = u.conj().T @ entries @ u
    magnitudes = np.abs(entries)
    return float(magnitudes.sum() - np.trace(magnitudes))


def eigenbasis(rho: MatrixLike) -> BasisSpec:
    """Собственный базис ρ; при вырождении подходит любой ортонормированный выбор."""
    entries = _entries(rho)
    _, vectors = np.linalg.eigh((entries + entries.conj().T) / 2)
    return BasisSpec.from_unitary(vectors, label="eigen")


def coherence_of(s: BlochTwoQubit) -> float:
    return l1_coherence(bloch_to_density(s))


def _pair(u1: float, u2: float, v1: float, v2: float) -> float:
    """√((u1−v1)² + (u2−v2)²) + √((u1+v1)² + (u2+v2)²)."""
    return float(np.hypot(u1 - v1, u2 - v2) + np.hypot(u1 + v1, u2 + v2))


def _terms(x: np.ndarray, y: np.ndarray, t: np.ndarray, local_scale: float = 1.0):
    # a1: |⟨00|ρ|11⟩| и |⟨01|ρ|10⟩|, радикал (t12 + t21)² + (t11 − t22)²
    a1 = float(np.hypot(t[0, 1] + t[1, 0], t[0, 0] - t[1, 1]) + np.hypot(t[0, 1] - t[1, 0], t[0, 0] + t[1, 1]))
    a2 = _pair(local_scale * t[0, 2], local_scale * t[1, 2], x[0], x[1])
    a3 = _pair(local_scale * t[2, 0], local_scale * t[2, 1], y[0], y[1])
    return a1, a2, a3


def closed_form_coherence(s: BlochTwoQubit, machine: Optional[MachineParam] = None) -> CoherenceBreakdown:
    """Замкнутая форма C(ρ12) = (a1 + a2 + a3)/2; с машиной - ещё b1..b3 для ρ̃12."""
    x, y, t = s.x_vec, s.y_vec, s.t_mat
    a1, a2, a3 = _terms(x, y, t)
    breakdown = {"a1": a1, "a2": a2, "a3": a3, "total": (a1 + a2 + a3) / 2}
    if machine is not None:
        mu = machine.mu
        if machine.mode == "local":
            _, c2, c3 = _terms(x, y, t, local_scale=mu)
            b1, b2, b3 = mu ** 2 * a1, abs(mu) * c2, abs(mu) * c3
        else:
            b1, b2, b3 = abs(mu) * a1, abs(mu) * a2, abs(mu) * a3
        breakdown.update(b1=b1, b2=b2, b3=b3, output_total=(b1 + b2 + b3) / 2)
    return CoherenceBreakdown(**breakdown)


def _area2(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    return float((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def barycentric(a, b, c, d) -> np.ndarray:
    a, b, c, d = (np.asarray(point, dtype=float) for point in (a, b, c, d))
    area = _area2(a, b, c)
    return np.array([_area2(d, b, c), _area2(a, d, c), _area2(a, b, d)]) / area


def triangle_path_inequality(a, b, c, d) -> bool:
    """Для D внутри ABC путь через вершину длиннее пути через D - для всех трёх вершин."""
    a, b, c, d = (np.asarray(point, dtype=float) for point in (a, b, c, d))
    if abs(_area2(a, b, c)) / 2 <= TOL_ZERO:
        raise GeometryError("Треугольник вырожден")
    if np.any(barycentric(a, b, c, d) <= TOL_ZERO):
        raise GeometryError("Точка D не лежит строго внутри треугольника")

    def dist(p, q):
        return float(np.linalg.norm(p - q))

    return (
        dist(a, c) + dist(b, c) > dist(a, d) + dist(b, d)
        and dist(a, b) + dist(a, c) > dist(b, d) + dist(d, c)
        and dist(b, c) + dist(b, a) > dist(d, c) + dist(d, a)
    )
