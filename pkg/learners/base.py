"""Learner configuration and the hypotheses every learner returns."""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from concepts.classes import Concept, ConceptClass, Domain
from pac_lab.exceptions import PreconditionViolation, SpecError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LearnerConfig:
    """Accuracy ε, confidence δ and the noise-rate bound η_b."""

    epsilon: float
    delta: float
    eta_bound: float = 0.0

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise PreconditionViolation(f"epsilon must be in (0, 1), got {self.epsilon!r}")
        if not 0 < self.delta < 1:
            raise PreconditionViolation(f"delta must be in (0, 1), got {self.delta!r}")
        if not 0 <= self.eta_bound < 0.5:
            raise PreconditionViolation(f"eta_bound must be in [0, 1/2), got {self.eta_bound!r}")

    @staticmethod
    def realizable_delta_threshold(d: int) -> float:
        """2(2e/d)^d; the realizable guarantee is stated for δ below it."""
        return 2 * (2 * math.e / d) ** d

    def check_realizable_delta(self, d: int) -> bool:
        ok = self.delta < self.realizable_delta_threshold(d)
        if not ok:
            logger.warning(
                "delta=%g is not below 2(2e/d)^d = %g for d=%d; the realizable guarantee does not apply",
                self.delta, self.realizable_delta_threshold(d), d,
            )
        return ok


@dataclass(frozen=True, eq=False)
class Hypothesis:
    """A total labeling of the domain plus where it came from."""

    domain: Domain
    labels: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        labels = np.array(self.labels, dtype=np.uint8, copy=True).reshape(-1)
        if labels.shape[0] != len(self.domain):
            raise SpecError(f"Hypothesis covers {labels.shape[0]} points, domain has {len(self.domain)}")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    def __call__(self, x) -> int:
        return int(self.labels[self.domain.index_of(x)])

    @classmethod
    def from_member(cls, concept_class: ConceptClass, k: int, **provenance) -> "Hypothesis":
        return cls(concept_class.domain, concept_class.labels[k], {"member": int(k), **provenance})

    @classmethod
    def from_concept(cls, concept: Concept, **provenance) -> "Hypothesis":
        return cls(concept.domain, concept.labels, dict(provenance))

    def as_concept(self) -> Concept:
        return Concept(self.domain, self.labels)

    def member_index(self, concept_class: ConceptClass):
        """Index of the identical class member, or None for improper outputs."""
        hits = np.flatnonzero((concept_class.labels == self.labels).all(axis=1))
        return int(hits[0]) if hits.size else None

    def table(self) -> list[tuple[str, int]]:
        return [(str(x), int(b)) for x, b in zip(self.domain.ids, self.labels)]
