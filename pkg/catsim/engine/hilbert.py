"""Vibration, cavity and qubit spaces, their operators and elementary states."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple, Union

import numpy as np

from catsim.config import settings
from catsim.engine import qcore
from catsim.errors import AmplitudeError, DimensionError, SignatureError

logger = logging.getLogger(__name__)


class Slot(str, Enum):
    VIBRATION = "vibration"
    CAVITY = "cavity"
    QUBIT = "qubit"


_SLOT_KWARGS = {Slot.VIBRATION: "vib", Slot.CAVITY: "cav", Slot.QUBIT: "qubit"}


class QubitLevel(str, Enum):
    EXCITED = "e"
    GROUND = "g"

    @property
    def index(self) -> int:
        return 0 if self is QubitLevel.EXCITED else 1


def _frozen(values) -> np.ndarray:
    array = np.array(values, dtype=complex)
    array.setflags(write=False)
    return array


# Basis order (e, g); sigma_z |e> = +|e>.
SIGMA_Z = _frozen([[1, 0], [0, -1]])
SIGMA_PLUS = _frozen([[0, 1], [0, 0]])
SIGMA_MINUS = _frozen([[0, 0], [1, 0]])
SIGMA_X = _frozen(SIGMA_PLUS + SIGMA_MINUS)
SIGMA_Y = _frozen(-1j * SIGMA_PLUS + 1j * SIGMA_MINUS)
PROJECT_E = _frozen([[1, 0], [0, 0]])
PROJECT_G = _frozen([[0, 0], [0, 1]])


def qubit_ket(level: QubitLevel) -> np.ndarray:
    ket = np.zeros(2, dtype=complex)
    ket[QubitLevel(level).index] = 1.0
    return ket


@dataclass(frozen=True)
class SpaceSignature:
    dims: Tuple[int, int, int]

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))


@dataclass(frozen=True)
class TruncationScheme:
    n_vib: int
    n_cav: int
    guard: int = settings.DEFAULT_GUARD
    cav_guard: Optional[int] = None

    def __post_init__(self) -> None:
        if self.n_vib < 2 or self.n_cav < 2:
            raise DimensionError(
                f"Fock dimensions must be >= 2, got n_vib={self.n_vib}, n_cav={self.n_cav}"
            )
        if not 0 < self.guard < self.n_vib / 2:
            raise DimensionError(
                f"Guard band {self.guard} must satisfy 0 < guard < n_vib/2 (n_vib={self.n_vib})"
            )
        if self.cav_guard is None:
            object.__setattr__(self, "cav_guard", min(self.guard, self.n_cav // 2))
        if not 0 <= self.cav_guard < self.n_cav:
            raise DimensionError(
                f"Cavity guard {self.cav_guard} must satisfy 0 <= guard < n_cav={self.n_cav}"
            )
        if self.total_dim > settings.MAX_TOTAL_DIM:
            raise DimensionError(
                f"Total dimension {self.total_dim} exceeds maximum {settings.MAX_TOTAL_DIM}"
            )

    @property
    def total_dim(self) -> int:
        return 2 * self.n_vib * self.n_cav

    @property
    def signature(self) -> SpaceSignature:
        return SpaceSignature(dims=(self.n_vib, self.n_cav, 2))

    @property
    def vib_interior(self) -> int:
        return self.n_vib - self.guard

    @property
    def cav_interior(self) -> int:
        return self.n_cav - self.cav_guard


def _check_signature(left: SpaceSignature, right: SpaceSignature) -> None:
    if left != right:
        raise SignatureError(f"Signature mismatch: {left.dims} vs {right.dims}")


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray
    signature: SpaceSignature
    norm_deficit: float = 0.0

    def __post_init__(self) -> None:
        amplitudes = np.array(self.amplitudes, dtype=complex).ravel()
        if amplitudes.size != self.signature.total_dim:
            raise SignatureError(
                f"State of size {amplitudes.size} does not match signature {self.signature.dims}"
            )
        qcore.ensure_finite(amplitudes, "state amplitudes")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def as_tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.signature.dims)


@dataclass(frozen=True, eq=False)
class Operator:
    matrix: np.ndarray
    signature: SpaceSignature

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=complex)
        dim = self.signature.total_dim
        if matrix.shape != (dim, dim):
            raise SignatureError(
                f"Operator of shape {matrix.shape} does not match signature {self.signature.dims}"
            )
        qcore.ensure_finite(matrix, "operator")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def identity(cls, signature: SpaceSignature) -> "Operator":
        return cls(np.eye(signature.total_dim, dtype=complex), signature)

    def dag(self) -> "Operator":
        return Operator(qcore.dagger(self.matrix), self.signature)

    def __matmul__(self, other: Union["Operator", PureState]) -> Union["Operator", PureState]:
        _check_signature(self.signature, other.signature)
        if isinstance(other, PureState):
            return PureState(self.matrix @ other.amplitudes, self.signature, other.norm_deficit)
        return Operator(self.matrix @ other.matrix, self.signature)

    def __add__(self, other: "Operator") -> "Operator":
        _check_signature(self.signature, other.signature)
        return Operator(self.matrix + other.matrix, self.signature)

    def __sub__(self, other: "Operator") -> "Operator":
        _check_signature(self.signature, other.signature)
        return Operator(self.matrix - other.matrix, self.signature)

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(self.matrix * scalar, self.signature)

    __rmul__ = __mul__

    @property
    def hermiticity_error(self) -> float:
        return qcore.hermiticity_error(self.matrix)


def annihilation(dim: int) -> np.ndarray:
    if dim < 2:
        raise DimensionError(f"Mode dimension must be >= 2, got {dim}")
    return np.diag(np.sqrt(np.arange(1, dim)), k=1).astype(complex)


def creation(dim: int) -> np.ndarray:
    return qcore.dagger(annihilation(dim))


def number(dim: int) -> np.ndarray:
    if dim < 2:
        raise DimensionError(f"Mode dimension must be >= 2, got {dim}")
    return np.diag(np.arange(dim)).astype(complex)


def mode_interior(dim: int, guard: int) -> slice:
    return slice(0, dim - guard)


def guard_band_resident(dim: int, n: int, guard: int = settings.DEFAULT_GUARD) -> bool:
    return n >= dim - guard


def fock_state(dim: int, n: int, guard: int = settings.DEFAULT_GUARD) -> np.ndarray:
    if not 0 <= n < dim:
        raise DimensionError(f"Fock index {n} outside dimension {dim}")
    if guard_band_resident(dim, n, guard):
        logger.debug("Fock state |%d> lies in the guard band of dimension %d", n, dim)
    ket = np.zeros(dim, dtype=complex)
    ket[n] = 1.0
    return ket


def _check_amplitude(dim: int, alpha: complex, guard: int) -> None:
    limit = (dim - guard) / 4
    if abs(alpha) ** 2 > limit:
        raise AmplitudeError(
            f"|alpha|^2 = {abs(alpha) ** 2:.6g} exceeds (dim - guard)/4 = {limit:.6g}; "
            "increase the Fock truncation"
        )


def _coherent_amplitudes(dim: int, alpha: complex) -> np.ndarray:
    amplitudes = np.empty(dim, dtype=complex)
    amplitudes[0] = np.exp(-abs(alpha) ** 2 / 2)
    for n in range(1, dim):
        amplitudes[n] = amplitudes[n - 1] * alpha / np.sqrt(n)
    return amplitudes


def coherent_leakage(dim: int, alpha: complex) -> float:
    """Norm deficit of the truncated, unrenormalized coherent state."""
    return float(max(1.0 - np.sum(np.abs(_coherent_amplitudes(dim, alpha)) ** 2), 0.0))


def coherent_state(dim: int, alpha: complex, guard: int = settings.DEFAULT_GUARD) -> np.ndarray:
    _check_amplitude(dim, alpha, guard)
    amplitudes = _coherent_amplitudes(dim, alpha)
    norm = np.linalg.norm(amplitudes)
    leakage = max(1.0 - norm**2, 0.0)
    if leakage > settings.COHERENT_LEAKAGE_TOL:
        logger.warning("Coherent state alpha=%s leaks %.3e of its norm past dimension %d", alpha, leakage, dim)
    return amplitudes / norm


def displacement(dim: int, alpha: complex, guard: int = settings.DEFAULT_GUARD) -> np.ndarray:
    """D(alpha) = exp(alpha a^dag - alpha* a) as the unit-time propagator of i(alpha a^dag - alpha* a)."""
    _check_amplitude(dim, alpha, guard)
    if alpha == 0:
        return np.eye(dim, dtype=complex)
    a = annihilation(dim)
    generator = 1j * (alpha * qcore.dagger(a) - np.conj(alpha) * a)
    return qcore.propagator(generator, 1.0)


def position_function(dim: int, func: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Spectral function of x = a + a^dag."""
    a = annihilation(dim)
    return qcore.spectral_function(a + qcore.dagger(a), func)


def cos_position(dim: int, eta: float) -> np.ndarray:
    if eta < 0:
        raise ValueError(f"eta must be >= 0, got {eta}")
    if eta == 0:
        return np.eye(dim, dtype=complex)
    return position_function(dim, lambda x: np.cos(eta * x))


def sin_position(dim: int, eta: float) -> np.ndarray:
    if eta == 0:
        return np.zeros((dim, dim), dtype=complex)
    return position_function(dim, lambda x: np.sin(eta * x))


def local_operator(
    trunc: TruncationScheme,
    vib: Optional[np.ndarray] = None,
    cav: Optional[np.ndarray] = None,
    qubit: Optional[np.ndarray] = None,
) -> Operator:
    """Kronecker product over (vibration, cavity, qubit), identity where a factor is omitted."""
    dims = trunc.signature.dims
    factors = []
    for slot_dim, factor in zip(dims, (vib, cav, qubit)):
        if factor is None:
            factors.append(np.eye(slot_dim, dtype=complex))
            continue
        factor = np.asarray(factor, dtype=complex)
        if factor.shape != (slot_dim, slot_dim):
            raise SignatureError(f"Factor of shape {factor.shape} does not fit slot dim {slot_dim}")
        factors.append(factor)
    return Operator(qcore.kron_all(factors), trunc.signature)


def embed(op: np.ndarray, slot: Slot, trunc: TruncationScheme) -> Operator:
    slot = Slot(slot)
    return local_operator(trunc, **{_SLOT_KWARGS[slot]: op})


def product_state(
    vib: np.ndarray,
    cav: np.ndarray,
    qubit: np.ndarray,
    trunc: TruncationScheme,
    norm_deficit: float = 0.0,
) -> PureState:
    amplitudes = np.kron(np.kron(np.asarray(vib), np.asarray(cav)), np.asarray(qubit))
    return PureState(amplitudes, trunc.signature, norm_deficit)


def interior_indices(trunc: TruncationScheme) -> np.ndarray:
    mask = np.zeros(trunc.signature.dims, dtype=bool)
    mask[mode_interior(trunc.n_vib, trunc.guard), mode_interior(trunc.n_cav, trunc.cav_guard), :] = True
    return np.flatnonzero(mask)


def restrict_interior(matrix: np.ndarray, trunc: TruncationScheme) -> np.ndarray:
    indices = interior_indices(trunc)
    return np.asarray(matrix)[np.ix_(indices, indices)]


def interior_norm(state: PureState, trunc: TruncationScheme) -> float:
    _check_signature(state.signature, trunc.signature)
    return float(np.linalg.norm(state.amplitudes[interior_indices(trunc)]))
