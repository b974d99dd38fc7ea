import numpy as np


def random_density_matrix(rng: np.random.Generator, dim: int = 4) -> np.ndarray:
    """Случайная матрица плотности GG†/Tr(GG†) из комплексной гауссовой G."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real


def random_probability_vector(rng: np.random.Generator, size: int = 4) -> np.ndarray:
    return rng.dirichlet(np.ones(size))


def random_interior_point(rng: np.random.Generator, a, b, c, margin: float = 1e-12) -> np.ndarray:
    """Случайная точка строго внутри треугольника ABC через барицентрические координаты."""
    while True:
        weights = rng.dirichlet(np.ones(3))
        if np.all(weights > margin):
            break
    return weights[0] * np.asarray(a) + weights[1] * np.asarray(b) + weights[2] * np.asarray(c)
