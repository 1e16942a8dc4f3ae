"""
Finite-support laws over (instance, bit) and the samples drawn from them.

Flow:
1. μ: LabeledDistribution over the domain of a concept class.
2. draw_quantum_sample: m i.i.d. (instance, latent bit); the latent bit b
   stands for one copy of σ_b.
3. measure_labels: one two-outcome measurement per example -> ClassicalSample.
4. induced_nu: the exact law of step 2 + 3, for risk evaluation.

Samples keep the latent bits for the harness; learners only read
ClassicalSample.observed.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from concepts.classes import Concept, Domain
from pac_lab.conf import lab_setting
from pac_lab.exceptions import InvalidDistribution, PreconditionViolation
from pac_lab.seeding import MEASUREMENT, SAMPLING, as_stream_key, example_uniforms
from qstate.states import TwoOutcomePovm, check_same_dim

from .labels import LabelPair

logger = logging.getLogger(__name__)


def _read_only(array, dtype) -> np.ndarray:
    array = np.array(array, dtype=dtype, copy=True).reshape(-1)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class LabeledDistribution:
    """Support rows (instance index, bit, probability) over a domain."""

    domain: Domain
    instances: np.ndarray
    bits: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        instances = _read_only(self.instances, np.intp)
        bits = _read_only(self.bits, np.uint8)
        probs = _read_only(self.probs, float)
        if not (len(instances) == len(bits) == len(probs)) or len(probs) == 0:
            raise InvalidDistribution("Support rows must be non-empty and of equal length")
        if np.any(instances < 0) or np.any(instances >= len(self.domain)):
            raise InvalidDistribution("Support refers to instances outside the domain")
        if np.any(bits > 1):
            raise InvalidDistribution("Support bits must be 0 or 1")
        if np.any(probs < 0) or np.any(probs > 1):
            raise InvalidDistribution("Probabilities must lie in [0, 1]")
        total = probs.sum()
        if abs(total - 1.0) > lab_setting("PROBABILITY_ATOL"):
            raise InvalidDistribution(f"Probabilities sum to {total!r}, expected 1")
        keys = instances * 2 + bits
        if len(np.unique(keys)) != len(keys):
            raise InvalidDistribution("Duplicate (instance, bit) rows in support")
        object.__setattr__(self, "instances", instances)
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "probs", probs)

    def __len__(self) -> int:
        return len(self.probs)

    @classmethod
    def from_rows(cls, domain: Domain, rows: Iterable[tuple]) -> "LabeledDistribution":
        """rows of (instance id, bit, probability)."""
        rows = list(rows)
        if not rows:
            raise InvalidDistribution("Distribution has no support rows")
        instances = domain.indices(r[0] for r in rows)
        bits = np.array([int(r[1]) for r in rows])
        if np.any((bits != 0) & (bits != 1)):
            raise InvalidDistribution("Support bits must be 0 or 1")
        return cls(domain, instances, bits, np.array([float(r[2]) for r in rows]))

    @classmethod
    def from_table(cls, domain: Domain, table: np.ndarray) -> "LabeledDistribution":
        """From an (n, 2) joint table; both bits of every instance with mass are kept."""
        table = np.asarray(table, dtype=float)
        support = np.flatnonzero(table.sum(axis=1) > 0)
        instances = np.repeat(support, 2)
        bits = np.tile([0, 1], len(support))
        return cls(domain, instances, bits, table[support].reshape(-1))

    @classmethod
    def point_mass(cls, domain: Domain, x, bit: int) -> "LabeledDistribution":
        return cls(domain, [domain.index_of(x)], [bit], [1.0])

    @classmethod
    def realizable(cls, marginal, concept: Concept) -> "LabeledDistribution":
        """μ₁ = marginal with every label given by the concept."""
        weights = _check_marginal(concept.domain, marginal)
        support = np.flatnonzero(weights > 0)
        return cls(concept.domain, support, concept.labels[support], weights[support])

    @classmethod
    def agnostic(cls, marginal, concept: Concept, flip: float) -> "LabeledDistribution":
        """Concept labels flipped with probability `flip` at every instance."""
        if not 0 <= flip <= 1:
            raise InvalidDistribution(f"Flip probability must be in [0, 1], got {flip!r}")
        weights = _check_marginal(concept.domain, marginal)
        table = np.zeros((len(concept.domain), 2))
        rows = np.arange(len(concept.domain))
        table[rows, concept.labels] = weights * (1 - flip)
        table[rows, 1 - concept.labels] = weights * flip
        return cls.from_table(concept.domain, table)

    @classmethod
    def uniform_marginal(cls, domain: Domain) -> np.ndarray:
        return np.full(len(domain), 1.0 / len(domain))

    def table(self) -> np.ndarray:
        """(n, 2) joint probabilities over domain × {0, 1}."""
        table = np.zeros((len(self.domain), 2))
        np.add.at(table, (self.instances, self.bits), self.probs)
        return table

    def marginal(self) -> np.ndarray:
        return self.table().sum(axis=1)

    def conditional(self, x) -> tuple[float, float]:
        """(μ(0|x), μ(1|x)); raises for instances with zero mass."""
        row = self.table()[self.domain.index_of(x)]
        total = row.sum()
        if total <= 0:
            raise InvalidDistribution(f"Instance {x!r} has zero mass")
        return float(row[0] / total), float(row[1] / total)

    def support_indices(self) -> np.ndarray:
        """Distinct instance indices carrying positive mass."""
        return np.flatnonzero(self.marginal() > 0)

    def to_rows(self) -> list[tuple[str, int, float]]:
        return [
            (str(self.domain.ids[i]), int(b), float(p))
            for i, b, p in zip(self.instances, self.bits, self.probs)
        ]


def _check_marginal(domain: Domain, marginal) -> np.ndarray:
    weights = np.asarray(marginal, dtype=float)
    if weights.shape != (len(domain),) or np.any(weights < 0):
        raise InvalidDistribution("Marginal must be a non-negative vector over the domain")
    if abs(weights.sum() - 1.0) > lab_setting("PROBABILITY_ATOL"):
        raise InvalidDistribution(f"Marginal sums to {weights.sum()!r}, expected 1")
    return weights


@dataclass(frozen=True, eq=False)
class QuantumSample:
    """m draws (instance index, latent bit); latent bit b means one copy of σ_b."""

    domain: Domain
    instances: np.ndarray
    latent: np.ndarray

    def __len__(self) -> int:
        return len(self.instances)

    def items(self) -> list[tuple[str, int]]:
        return [(str(self.domain.ids[i]), int(b)) for i, b in zip(self.instances, self.latent)]


@dataclass(frozen=True, eq=False)
class ClassicalSample:
    """Measured training data (instance index, observed bit), in draw order."""

    domain: Domain
    instances: np.ndarray
    observed: np.ndarray

    def __post_init__(self):
        instances = _read_only(self.instances, np.intp)
        observed = _read_only(self.observed, np.uint8)
        if len(instances) != len(observed):
            raise InvalidDistribution("Instances and observed bits differ in length")
        object.__setattr__(self, "instances", instances)
        object.__setattr__(self, "observed", observed)

    def __len__(self) -> int:
        return len(self.instances)

    @classmethod
    def from_items(cls, domain: Domain, items: Iterable[tuple]) -> "ClassicalSample":
        items = list(items)
        return cls(domain, domain.indices(x for x, _ in items), [int(y) for _, y in items])

    def take(self, positions) -> "ClassicalSample":
        positions = np.asarray(positions, dtype=np.intp)
        return ClassicalSample(self.domain, self.instances[positions], self.observed[positions])

    def split(self, m1: int) -> tuple["ClassicalSample", "ClassicalSample"]:
        return self.take(np.arange(m1)), self.take(np.arange(m1, len(self)))

    def counts(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-domain-point counts of observed 0s and 1s."""
        n = len(self.domain)
        ones = np.bincount(self.instances[self.observed == 1], minlength=n)
        total = np.bincount(self.instances, minlength=n)
        return total - ones, ones

    def items(self) -> list[tuple[str, int]]:
        return [(str(self.domain.ids[i]), int(y)) for i, y in zip(self.instances, self.observed)]


def draw_quantum_sample(mu: LabeledDistribution, m: int, rng) -> QuantumSample:
    """
    m i.i.d. rows of μ by inverse CDF, one uniform per example index.

    rng is a seed or a Generator (see pac_lab.seeding). With an int seed,
    the first k rows of a size-m draw equal a size-k draw.
    """
    if m < 1:
        raise PreconditionViolation(f"Sample size must be positive, got {m}")
    uniforms = example_uniforms(as_stream_key(rng, SAMPLING), m)
    cdf = np.cumsum(mu.probs)
    rows = np.minimum(np.searchsorted(cdf, uniforms * cdf[-1], side="right"), len(cdf) - 1)
    return QuantumSample(mu.domain, _read_only(mu.instances[rows], np.intp), _read_only(mu.bits[rows], np.uint8))


def outcome_one_probabilities(povm: TwoOutcomePovm, labels: LabelPair) -> np.ndarray:
    """[tr[E₁σ₀], tr[E₁σ₁]]."""
    check_same_dim(povm, labels.sigma0)
    return np.array([povm.probability(labels.sigma0, 1), povm.probability(labels.sigma1, 1)])


def measure_labels(sample: QuantumSample, povm: TwoOutcomePovm, labels: LabelPair, rng) -> ClassicalSample:
    """Measure every example once; example i reads uniform i of the measurement stream."""
    p_one = outcome_one_probabilities(povm, labels)
    uniforms = example_uniforms(as_stream_key(rng, MEASUREMENT), len(sample))
    observed = (uniforms < p_one[sample.latent]).astype(np.uint8)
    return ClassicalSample(sample.domain, sample.instances, observed)


def induced_nu(mu: LabeledDistribution, povm: TwoOutcomePovm, labels: LabelPair) -> LabeledDistribution:
    """Exact law of (x, measured bit): ν(y|x) = Σ_b μ(b|x) tr[σ_b E_y]."""
    p_one = outcome_one_probabilities(povm, labels)
    table = mu.table()
    one = table @ p_one
    nu = np.stack([table.sum(axis=1) - one, one], axis=1)
    return LabeledDistribution.from_table(mu.domain, np.clip(nu, 0.0, None))


def noise_table(povm: Optional[TwoOutcomePovm], labels: LabelPair) -> np.ndarray:
    """2×2 channel K[b, y] = tr[σ_b E_y]."""
    povm = labels.holevo_helstrom if povm is None else povm
    p_one = outcome_one_probabilities(povm, labels)
    return np.stack([1 - p_one, p_one], axis=1)
