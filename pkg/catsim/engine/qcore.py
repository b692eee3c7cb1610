"""Dense complex linear algebra for the composite ion-cavity space."""

from __future__ import annotations

import logging
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from catsim.config import settings
from catsim.errors import (
    DimensionError,
    EigenSolverError,
    HermiticityError,
    NonFiniteError,
    NormalizationError,
)

logger = logging.getLogger(__name__)


def _as_matrix(value: np.ndarray) -> np.ndarray:
    matrix = np.asarray(value, dtype=complex)
    if matrix.ndim != 2:
        raise DimensionError(f"Expected a matrix, got array of shape {matrix.shape}")
    return matrix


def ensure_finite(value: np.ndarray, what: str = "result") -> np.ndarray:
    if not np.all(np.isfinite(value)):
        raise NonFiniteError(f"Non-finite entries in {what}")
    return value


def dagger(matrix: np.ndarray) -> np.ndarray:
    return np.asarray(matrix).conj().T


def max_abs(matrix: np.ndarray) -> float:
    if np.size(matrix) == 0:
        return 0.0
    return float(np.max(np.abs(matrix)))


def kron(a: np.ndarray, b: np.ndarray, max_dim: Optional[int] = None) -> np.ndarray:
    a = _as_matrix(a)
    b = _as_matrix(b)
    if a.size == 0 or b.size == 0:
        raise DimensionError("kron requires non-empty matrices")

    limit = settings.MAX_TOTAL_DIM if max_dim is None else max_dim
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > limit:
        raise DimensionError(
            f"Kronecker product of shape ({rows}, {cols}) exceeds maximum dimension {limit}"
        )
    return ensure_finite(np.kron(a, b), "kron")


def kron_all(factors: Sequence[np.ndarray], max_dim: Optional[int] = None) -> np.ndarray:
    result = _as_matrix(factors[0])
    for factor in factors[1:]:
        result = kron(result, factor, max_dim=max_dim)
    return result


def hermiticity_error(h: np.ndarray) -> float:
    h = _as_matrix(h)
    return max_abs(h - dagger(h))


def herm_eig(h: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and unitary eigenvectors of a Hermitian matrix."""
    h = _as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise DimensionError(f"Eigen-decomposition needs a square matrix, got {h.shape}")
    ensure_finite(h, "eigensolver input")

    error = hermiticity_error(h)
    if error > settings.HERMITIAN_TOL:
        raise HermiticityError(f"Matrix is not Hermitian: max |h - h^dag| = {error:.3e}")

    try:
        eigenvalues, eigenvectors = scipy.linalg.eigh(h)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise EigenSolverError(f"Hermitian eigensolver failed: {exc}") from exc
    return ensure_finite(eigenvalues, "eigenvalues"), ensure_finite(eigenvectors, "eigenvectors")


def spectral_function(h: np.ndarray, func: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """V f(diag) V^dag for a Hermitian h; symmetrized when f is real."""
    eigenvalues, eigenvectors = herm_eig(h)
    values = func(eigenvalues)
    result = (eigenvectors * values) @ dagger(eigenvectors)
    if np.isrealobj(values):
        result = (result + dagger(result)) / 2
    return ensure_finite(result, "spectral function")


def propagator_from_eig(eigenvalues: np.ndarray, eigenvectors: np.ndarray, t: float) -> np.ndarray:
    if t == 0:
        return np.eye(eigenvectors.shape[0], dtype=complex)
    phases = np.exp(-1j * eigenvalues * t)
    return ensure_finite((eigenvectors * phases) @ dagger(eigenvectors), "propagator")


def propagator(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) with hbar = 1."""
    eigenvalues, eigenvectors = herm_eig(h)
    return propagator_from_eig(eigenvalues, eigenvectors, t)


def unitarity_error(u: np.ndarray, indices: Optional[np.ndarray] = None) -> float:
    u = _as_matrix(u)
    gram = dagger(u) @ u
    if indices is not None:
        gram = gram[np.ix_(indices, indices)]
    return max_abs(gram - np.eye(gram.shape[0]))


def _check_normalized(vector: np.ndarray, name: str) -> None:
    norm = float(np.linalg.norm(vector))
    if abs(norm - 1.0) > settings.NORMALIZED_TOL:
        raise NormalizationError(f"{name} is not normalized (norm = {norm:.12g})")


def fidelity(u: np.ndarray, v: np.ndarray) -> float:
    """|<u|v>|^2 for normalized vectors; insensitive to global phase."""
    u = np.asarray(u, dtype=complex).ravel()
    v = np.asarray(v, dtype=complex).ravel()
    if u.shape != v.shape:
        raise DimensionError(f"Fidelity of vectors with dims {u.size} and {v.size}")
    _check_normalized(u, "first state")
    _check_normalized(v, "second state")
    overlap = abs(np.vdot(u, v)) ** 2
    return float(min(max(overlap, 0.0), 1.0))
