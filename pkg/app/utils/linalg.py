from functools import reduce

import numpy as np

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# σ0 = I, σ1 = X, σ2 = Y, σ3 = Z
PAULI = np.stack([SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z])

# PAULI_PRODUCTS[a, b] = σa ⊗ σb, кубит 1 - левый множитель
PAULI_PRODUCTS = np.einsum("aij,bkl->abikjl", PAULI, PAULI).reshape(4, 4, 4, 4)

_S = 1 / np.sqrt(2)
PHI_PLUS = np.array([_S, 0, 0, _S], dtype=complex)
PHI_MINUS = np.array([_S, 0, 0, -_S], dtype=complex)
PSI_PLUS = np.array([0, _S, _S, 0], dtype=complex)
PSI_MINUS = np.array([0, _S, -_S, 0], dtype=complex)

# столбцы: Φ+, Φ−, Ψ+, Ψ−
BELL_BASIS = np.column_stack([PHI_PLUS, PHI_MINUS, PSI_PLUS, PSI_MINUS])


def projector(vector: np.ndarray) -> np.ndarray:
    vector = np.asarray(vector, dtype=complex)
    return np.outer(vector, vector.conj())


def kron_all(*operators: np.ndarray) -> np.ndarray:
    return reduce(np.kron, operators)


def unitarity_residual(matrix: np.ndarray) -> float:
    """Максимальное отклонение U†U от единичной матрицы."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return float("inf")
    return float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0]))))


def hermiticity_residual(matrix: np.ndarray) -> float:
    matrix = np.asarray(matrix, dtype=complex)
    return float(np.max(np.abs(matrix - matrix.conj().T)))
