"""The two label states σ₀, σ₁ and the named pairs used across the lab."""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from pac_lab.conf import lab_setting
from pac_lab.exceptions import IndistinguishableStates, InvalidState, PreconditionViolation
from qstate.literals import load_density_matrix
from qstate.operations import error_rates, holevo_helstrom, trace_distance
from qstate.states import DensityMatrix, NoisePair, PureState, TwoOutcomePovm, check_same_dim

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LabelPair:
    sigma0: DensityMatrix
    sigma1: DensityMatrix
    name: str = "custom"

    def __post_init__(self):
        check_same_dim(self.sigma0, self.sigma1)
        if self.distance <= lab_setting("DISTINGUISHABILITY_ATOL"):
            raise IndistinguishableStates(f"Label states of {self.name!r} coincide")

    @property
    def dim(self) -> int:
        return self.sigma0.dim

    def state(self, bit: int) -> DensityMatrix:
        return self.sigma1 if bit else self.sigma0

    @cached_property
    def distance(self) -> float:
        """‖σ₀ − σ₁‖₁."""
        return trace_distance(self.sigma0, self.sigma1)

    @property
    def half_distance(self) -> float:
        """The risk of one wrong label, ‖σ₀ − σ₁‖₁ / 2."""
        return self.distance / 2

    @cached_property
    def holevo_helstrom(self) -> TwoOutcomePovm:
        return holevo_helstrom(self.sigma0, self.sigma1)

    @cached_property
    def noise(self) -> NoisePair:
        """Error rates of the Holevo-Helstrom measurement."""
        return error_rates(self.holevo_helstrom, self.sigma0, self.sigma1)

    def rates_for(self, povm: Optional[TwoOutcomePovm]) -> NoisePair:
        if povm is None:
            return self.noise
        return error_rates(povm, self.sigma0, self.sigma1)

    def is_pure(self, atol: float = 1e-9) -> bool:
        return abs(self.sigma0.purity() - 1) <= atol and abs(self.sigma1.purity() - 1) <= atol

    def overlap(self) -> float:
        """c = |⟨ψ₀|ψ₁⟩| for pure labels, from tr[σ₀σ₁] = c²."""
        if not self.is_pure():
            raise PreconditionViolation(f"Label pair {self.name!r} is not pure")
        c_sq = self.sigma0.expectation(self.sigma1.matrix)
        return math.sqrt(min(max(c_sq, 0.0), 1.0))

    def equal_purity(self, atol: float = 1e-9) -> bool:
        return abs(self.sigma0.purity() - self.sigma1.purity()) <= atol

    @classmethod
    def from_pure(cls, psi0: PureState, psi1: PureState, name: str = "custom") -> "LabelPair":
        return cls(psi0.density(), psi1.density(), name)

    @classmethod
    def orthogonal(cls, dim: int = 2) -> "LabelPair":
        """|0⟩ and |1⟩: zero measurement noise and ‖σ₀ − σ₁‖₁ = 2."""
        return cls.from_pure(PureState.basis(dim, 0), PureState.basis(dim, 1), "orthogonal")

    @classmethod
    def example_ground_state(cls) -> "LabelPair":
        """Qutrit ground states (0, 1, 0) and (1, −1, 0)/√2 of the noisy-preparation example."""
        phi0 = PureState([0, 1, 0])
        phi1 = PureState(np.array([1, -1, 0]) / math.sqrt(2))
        return cls.from_pure(phi0, phi1, "ground-state")

    @classmethod
    def symmetric_noise(cls, eta: float) -> "LabelPair":
        """
        Pure qubits whose Holevo-Helstrom error rates both equal eta.

        Needs √(1 − c²) = 1 − 2η for the overlap c, realised by
        (cos θ, ±sin θ) with cos 2θ = c.
        """
        if not 0 <= eta < 0.5:
            raise PreconditionViolation(f"Symmetric noise rate must be in [0, 1/2), got {eta!r}")
        c = 2 * math.sqrt(eta * (1 - eta))
        theta = math.acos(min(c, 1.0)) / 2
        psi0 = PureState([math.cos(theta), math.sin(theta)])
        psi1 = PureState([math.cos(theta), -math.sin(theta)])
        return cls.from_pure(psi0, psi1, f"symmetric(eta={eta:g})")

    @classmethod
    def from_files(cls, path0, path1) -> "LabelPair":
        sigma0, sigma1 = load_density_matrix(path0), load_density_matrix(path1)
        if sigma0.dim != sigma1.dim:
            raise InvalidState(f"State files have dimensions {sigma0.dim} and {sigma1.dim}")
        return cls(sigma0, sigma1, "files")
