"""
Empirical risk minimisation over an enumerable class.

Both variants scan every member using per-instance counts of observed
bits, so the cost is O(|F| · |X|) regardless of m. Ties go to the lowest
member index.
"""

import logging

import numpy as np

from concepts.classes import ConceptClass
from pac_lab.exceptions import PreconditionViolation
from qstate.states import NoisePair
from sampling.distributions import ClassicalSample

from .base import Hypothesis

logger = logging.getLogger(__name__)

TIE_ATOL = 1e-12


def noise_corrected_loss(y1: int, y2: int, noise: NoisePair) -> float:
    """
    ℓ̃(y1, y2) for prediction y1 and observed label y2.

    ℓ̃ = [(1 − η_{1⊕y2})·1{y1≠y2} − η_{y2}·1{y1=y2}] / (1 − η₀ − η₁)
    """
    noise.require_learnable()
    if y1 != y2:
        return (1.0 - noise.rate(1 ^ y2)) / noise.denominator
    return -noise.rate(y2) / noise.denominator


def loss_matrix(noise: NoisePair) -> np.ndarray:
    """L[z, y] = ℓ̃(z, y)."""
    return np.array([[noise_corrected_loss(z, y, noise) for y in (0, 1)] for z in (0, 1)])


def zero_one_matrix() -> np.ndarray:
    return np.array([[0.0, 1.0], [1.0, 0.0]])


def empirical_risks(sample: ClassicalSample, concept_class: ConceptClass, losses: np.ndarray) -> np.ndarray:
    """(1/m) Σ_i L[f(x_i), y_i] for every member f."""
    if len(sample) == 0:
        raise PreconditionViolation("Empirical risk needs a non-empty sample")
    zeros, ones = sample.counts()
    cost_if_0 = zeros * losses[0, 0] + ones * losses[0, 1]
    cost_if_1 = zeros * losses[1, 0] + ones * losses[1, 1]
    f = concept_class.labels.astype(float)
    return ((1.0 - f) @ cost_if_0 + f @ cost_if_1) / len(sample)


def _argmin_lowest(values: np.ndarray) -> int:
    return int(np.flatnonzero(values <= values.min() + TIE_ATOL)[0])


def _erm(sample, concept_class, losses, algorithm, **provenance) -> Hypothesis:
    risks = empirical_risks(sample, concept_class, losses)
    k = _argmin_lowest(risks)
    logger.debug("%s: member %d, empirical risk %.6g over m=%d", algorithm, k, risks[k], len(sample))
    return Hypothesis.from_member(
        concept_class, k, algorithm=algorithm, empirical_risk=float(risks[k]), m=len(sample), **provenance
    )


def erm_noise_corrected(sample: ClassicalSample, concept_class: ConceptClass, noise: NoisePair) -> Hypothesis:
    """Proper learner minimising the empirical noise-corrected risk."""
    noise.require_learnable()
    return _erm(sample, concept_class, loss_matrix(noise), "erm-nc", eta0=noise.eta0, eta1=noise.eta1)


def erm_01(sample: ClassicalSample, concept_class: ConceptClass) -> Hypothesis:
    """Proper learner minimising the plain 0-1 empirical risk on measured labels."""
    return _erm(sample, concept_class, zero_one_matrix(), "erm01")
