"""
Value types for finite-dimensional quantum states and two-outcome measurements.

Every type validates on construction and stores a read-only numpy array, so
instances can be shared freely between threads and trials.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from pac_lab.conf import resolve
from pac_lab.exceptions import DegenerateNoise, DimensionMismatch, InvalidState

logger = logging.getLogger(__name__)


def as_square_matrix(entries) -> np.ndarray:
    """Coerce entries to a complex dim×dim array (dim ≥ 1) or raise InvalidState."""
    try:
        matrix = np.array(entries, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise InvalidState(f"Matrix entries are not numeric: {exc}") from exc
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
        raise InvalidState(f"Expected a non-empty square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise InvalidState("Matrix has non-finite entries")
    return matrix


def is_hermitian(matrix: np.ndarray, atol: Optional[float] = None) -> bool:
    atol = resolve(atol, "MATRIX_ATOL")
    return bool(np.allclose(matrix, matrix.conj().T, rtol=0.0, atol=atol))


def matrices_close(a, b, atol: Optional[float] = None) -> bool:
    """Entrywise equality with an absolute tolerance (MATRIX_ATOL by default)."""
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        return False
    return bool(np.allclose(a, b, rtol=0.0, atol=resolve(atol, "MATRIX_ATOL")))


def hermitian_part(matrix: np.ndarray) -> np.ndarray:
    return (matrix + matrix.conj().T) / 2


def check_same_dim(*objects) -> int:
    """Return the shared dimension of states/measurements or raise DimensionMismatch."""
    dims = {obj.dim for obj in objects}
    if len(dims) != 1:
        raise DimensionMismatch(f"Dimension mismatch: {sorted(dims)}")
    return dims.pop()


def _frozen(matrix: np.ndarray) -> np.ndarray:
    matrix = np.array(matrix, dtype=complex, copy=True)
    matrix.setflags(write=False)
    return matrix


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A Hermitian, positive semidefinite, unit-trace matrix."""

    matrix: np.ndarray
    atol: Optional[float] = field(default=None, repr=False)

    def __post_init__(self):
        atol = resolve(self.atol, "MATRIX_ATOL")
        matrix = as_square_matrix(self.matrix)
        if not is_hermitian(matrix, atol):
            raise InvalidState("Density matrix is not Hermitian")
        matrix = hermitian_part(matrix)
        trace = np.trace(matrix).real
        if abs(trace - 1.0) > atol:
            raise InvalidState(f"Density matrix trace is {trace!r}, expected 1")
        smallest = np.linalg.eigvalsh(matrix)[0]
        if smallest < -atol:
            raise InvalidState(f"Density matrix has negative eigenvalue {smallest!r}")
        object.__setattr__(self, "matrix", _frozen(matrix))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_pure(cls, state: "PureState") -> "DensityMatrix":
        vec = state.amplitudes
        return cls(np.outer(vec, vec.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim, dtype=complex) / dim)

    @classmethod
    def basis_state(cls, dim: int, index: int) -> "DensityMatrix":
        return cls.from_pure(PureState.basis(dim, index))

    def purity(self) -> float:
        """tr[ρ²]."""
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def close_to(self, other: "DensityMatrix", atol: Optional[float] = None) -> bool:
        return matrices_close(self.matrix, other.matrix, atol)

    def expectation(self, operator: np.ndarray) -> float:
        """Real part of tr[operator · ρ]."""
        return float(np.real(np.trace(np.asarray(operator) @ self.matrix)))


@dataclass(frozen=True, eq=False)
class PureState:
    """A unit vector in C^dim."""

    amplitudes: np.ndarray
    atol: Optional[float] = field(default=None, repr=False)

    def __post_init__(self):
        atol = resolve(self.atol, "MATRIX_ATOL")
        try:
            vec = np.array(self.amplitudes, dtype=complex).reshape(-1)
        except (TypeError, ValueError) as exc:
            raise InvalidState(f"Amplitudes are not numeric: {exc}") from exc
        if vec.size < 1:
            raise InvalidState("Pure state needs at least one amplitude")
        norm = np.linalg.norm(vec)
        if abs(norm - 1.0) > atol:
            raise InvalidState(f"Pure state norm is {norm!r}, expected 1")
        vec = _frozen(vec)
        object.__setattr__(self, "amplitudes", vec)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @classmethod
    def normalized(cls, amplitudes) -> "PureState":
        vec = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise InvalidState("Cannot normalise the zero vector")
        return cls(vec / norm)

    @classmethod
    def basis(cls, dim: int, index: int) -> "PureState":
        vec = np.zeros(dim, dtype=complex)
        vec[index] = 1.0
        return cls(vec)

    def overlap(self, other: "PureState") -> float:
        """|⟨self|other⟩|."""
        check_same_dim(self, other)
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)))

    def density(self) -> DensityMatrix:
        return DensityMatrix.from_pure(self)


@dataclass(frozen=True, eq=False)
class TwoOutcomePovm:
    """Effects (E₀, E₁) with E₀ + E₁ = I and both spectra inside [0, 1]."""

    e0: np.ndarray
    e1: np.ndarray
    atol: Optional[float] = field(default=None, repr=False)

    def __post_init__(self):
        atol = resolve(self.atol, "MATRIX_ATOL")
        e0, e1 = as_square_matrix(self.e0), as_square_matrix(self.e1)
        if e0.shape != e1.shape:
            raise DimensionMismatch(f"Effects have shapes {e0.shape} and {e1.shape}")
        for name, effect in (("E0", e0), ("E1", e1)):
            if not is_hermitian(effect, atol):
                raise InvalidState(f"{name} is not Hermitian")
            spectrum = np.linalg.eigvalsh(hermitian_part(effect))
            if spectrum[0] < -atol or spectrum[-1] > 1 + atol:
                raise InvalidState(f"{name} spectrum [{spectrum[0]}, {spectrum[-1]}] is outside [0, 1]")
        if not matrices_close(e0 + e1, np.eye(e0.shape[0]), atol):
            raise InvalidState("E0 + E1 is not the identity")
        object.__setattr__(self, "e0", _frozen(hermitian_part(e0)))
        object.__setattr__(self, "e1", _frozen(hermitian_part(e1)))

    @property
    def dim(self) -> int:
        return self.e0.shape[0]

    @classmethod
    def from_effect(cls, e0) -> "TwoOutcomePovm":
        e0 = as_square_matrix(e0)
        return cls(e0, np.eye(e0.shape[0], dtype=complex) - e0)

    @classmethod
    def constant(cls, dim: int, outcome: int) -> "TwoOutcomePovm":
        """The measurement that always reports `outcome`."""
        if outcome not in (0, 1):
            raise InvalidState(f"Outcome must be 0 or 1, got {outcome!r}")
        identity = np.eye(dim, dtype=complex)
        zero = np.zeros((dim, dim), dtype=complex)
        return cls(zero, identity) if outcome else cls(identity, zero)

    def effect(self, outcome: int) -> np.ndarray:
        return self.e1 if outcome else self.e0

    def probability(self, state: DensityMatrix, outcome: int = 1) -> float:
        """tr[E_outcome ρ], clipped into [0, 1]."""
        check_same_dim(self, state)
        return float(np.clip(state.expectation(self.effect(outcome)), 0.0, 1.0))


@dataclass(frozen=True)
class NoisePair:
    """Flip rates η₀ (true label 0 read as 1) and η₁ (true label 1 read as 0)."""

    eta0: float
    eta1: float

    def __post_init__(self):
        atol = resolve(None, "MATRIX_ATOL")
        for name in ("eta0", "eta1"):
            value = float(getattr(self, name))
            if not (-atol <= value <= 1 + atol):
                raise InvalidState(f"{name}={value!r} is outside [0, 1]")
            object.__setattr__(self, name, min(max(value, 0.0), 1.0))

    @classmethod
    def symmetric(cls, eta: float) -> "NoisePair":
        return cls(eta, eta)

    @property
    def total(self) -> float:
        return self.eta0 + self.eta1

    @property
    def denominator(self) -> float:
        """1 − η₀ − η₁."""
        return 1.0 - self.total

    def rate(self, bit: int) -> float:
        return self.eta1 if bit else self.eta0

    def require_learnable(self) -> "NoisePair":
        if self.total >= 1.0:
            raise DegenerateNoise(f"eta0 + eta1 = {self.total!r} must be below 1")
        return self

    def as_dict(self) -> dict:
        return {"eta0": self.eta0, "eta1": self.eta1}


def tensor(rho: DensityMatrix, sigma: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(np.kron(rho.matrix, sigma.matrix))


def random_pure_state(dim: int, rng: np.random.Generator) -> PureState:
    """Haar-random pure state from a normalised complex Gaussian vector."""
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState.normalized(vec)


def random_density_matrix(dim: int, rng: np.random.Generator, rank: Optional[int] = None) -> DensityMatrix:
    """Random mixed state G G† / tr[G G†] with G a dim×rank complex Gaussian."""
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)
