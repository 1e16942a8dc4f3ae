"""
Realizable-case learner under two-sided classification noise.

Flow:
1. iter_subsamples: recursive 3-way split of the sample into 3^k subsamples.
2. min_disagreement on each subsample: the first m1 items pick one
   representative per S-equivalence class, the remaining m2 items choose the
   representative with the fewest disagreements.
3. majority_vote over the subsample hypotheses (improper in general).

laird_split fixes m2 = ⌈C/(1+C)·m⌉ with C(η_b) = 2/(1 − exp(−½(1 − 2η_b)²)).
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from concepts.classes import ConceptClass, partition_by_columns
from pac_lab.exceptions import PreconditionViolation
from sampling.distributions import ClassicalSample

from .base import Hypothesis, LearnerConfig

logger = logging.getLogger(__name__)


def laird_constant(eta_bound: float) -> float:
    """C(η_b) = 2 / (1 − exp(−½(1 − 2η_b)²))."""
    if not 0 <= eta_bound < 0.5:
        raise PreconditionViolation(f"eta_bound must be in [0, 1/2), got {eta_bound!r}")
    return 2.0 / (-math.expm1(-0.5 * (1 - 2 * eta_bound) ** 2))


def laird_constant_relaxed(eta_bound: float) -> float:
    """4 / (1 − 2η_b)², the stated upper relaxation of C(η_b)."""
    if not 0 <= eta_bound < 0.5:
        raise PreconditionViolation(f"eta_bound must be in [0, 1/2), got {eta_bound!r}")
    return 4.0 / (1 - 2 * eta_bound) ** 2


def minimum_split_size(eta_bound: float) -> int:
    """Smallest m with m ≥ 2(1 + C(η_b))."""
    return math.ceil(2 * (1 + laird_constant(eta_bound)))


@dataclass(frozen=True)
class LairdSplit:
    m: int
    m1: int
    m2: int
    constant: float
    literal_m1: Optional[float] = None
    literal_m2: Optional[float] = None


def literal_input_sizes(config: LearnerConfig, d: int) -> tuple[float, float]:
    """
    The minimum-disagreement input-size formulas as stated: "log" is base 2, "ln" natural.

    m1 = max{8/ε log(6/δ), 16d/ε log(16d/ε)}
    m2 = C(η_b)/ε · ln((m1^d + 1)/d)
    """
    eps, delta = config.epsilon, config.delta
    m1 = max(8 / eps * math.log2(6 / delta), 16 * d / eps * math.log2(16 * d / eps))
    log_term = float(np.logaddexp(d * math.log(m1), 0.0)) - math.log(d)
    m2 = laird_constant(config.eta_bound) / eps * log_term
    return m1, m2


def laird_split(
    m: int, eta_bound: float, config: Optional[LearnerConfig] = None, d: Optional[int] = None
) -> LairdSplit:
    """m2 = ⌈C/(1+C)·m⌉, m1 = m − m2; needs m ≥ 2(1 + C(η_b))."""
    constant = laird_constant(eta_bound)
    if m < 2 * (1 + constant):
        raise PreconditionViolation(
            f"m={m} is below 2(1 + C(eta_b)) = {2 * (1 + constant):.6g}"
        )
    m2 = math.ceil(constant / (1 + constant) * m)
    literal_m1 = literal_m2 = None
    if config is not None and d is not None:
        literal_m1, literal_m2 = literal_input_sizes(config, d)
    return LairdSplit(m, m - m2, m2, constant, literal_m1, literal_m2)


def _min_disagreement_member(labels: np.ndarray, instances: np.ndarray, observed: np.ndarray, m1: int):
    """(member index, disagreements on S₂, number of S₁-classes)."""
    partition = partition_by_columns(labels, instances[:m1])
    reps = labels[partition.representatives].astype(np.int64)
    test_instances, test_observed = instances[m1:], observed[m1:]
    n = labels.shape[1]
    ones = np.bincount(test_instances[test_observed == 1], minlength=n)
    zeros = np.bincount(test_instances[test_observed == 0], minlength=n)
    disagreements = (1 - reps) @ ones + reps @ zeros
    best = int(np.argmin(disagreements))
    return int(partition.representatives[best]), int(disagreements[best]), len(partition)


def _check_m1(m1: int, size: int):
    if size == 1 and m1 == 1:
        return
    if not 1 <= m1 < size:
        raise PreconditionViolation(f"m1={m1} must satisfy 1 <= m1 < {size}")


def min_disagreement(sample: ClassicalSample, concept_class: ConceptClass, m1: int) -> Hypothesis:
    """Proper learner: best S₁-class representative on the held-out S₂."""
    _check_m1(m1, len(sample))
    k, disagreements, cells = _min_disagreement_member(
        concept_class.labels, sample.instances, sample.observed, m1
    )
    return Hypothesis.from_member(
        concept_class, k, algorithm="mindis", m1=m1, m2=len(sample) - m1,
        disagreements=disagreements, classes=cells,
    )


def _split_for(size: int, eta_bound: float) -> int:
    try:
        return laird_split(size, eta_bound).m1
    except PreconditionViolation:
        return math.ceil(size / 2)


def iter_subsamples(s: np.ndarray, t: Optional[np.ndarray] = None) -> Iterator[np.ndarray]:
    """
    Lazily yield the subsamples A(S; T) as arrays of S ∪ T elements, S items first.

    |S| ≤ 3 gives S ∪ T. Otherwise with q = ⌊|S|/4⌋, S₀ is the first |S| − 3q
    items and S₁, S₂, S₃ the following blocks of q, and the output is
    A(S₀; S₂∪S₃∪T), A(S₀; S₁∪S₃∪T), A(S₀; S₁∪S₂∪T) in that order.
    """
    s = np.asarray(s)
    t = np.asarray([], dtype=s.dtype) if t is None else np.asarray(t, dtype=s.dtype)
    if len(s) <= 3:
        yield np.concatenate([s, t])
        return
    q = len(s) // 4
    k = len(s) - 3 * q
    s0, s1, s2, s3 = s[:k], s[k:k + q], s[k + q:k + 2 * q], s[k + 2 * q:]
    yield from iter_subsamples(s0, np.concatenate([s2, s3, t]))
    yield from iter_subsamples(s0, np.concatenate([s1, s3, t]))
    yield from iter_subsamples(s0, np.concatenate([s1, s2, t]))


def subsamples(s: Sequence, t: Sequence = ()) -> list[list]:
    """Eager A(S; T) over arbitrary items."""
    items = list(s) + list(t)
    positions = iter_subsamples(np.arange(len(s)), np.arange(len(s), len(items)))
    return [[items[i] for i in block] for block in positions]


def majority_vote(hypotheses: Sequence[Hypothesis], **provenance) -> Hypothesis:
    """Pointwise majority; a tie predicts 0."""
    if not hypotheses:
        raise PreconditionViolation("Majority vote needs at least one hypothesis")
    votes = np.sum([h.labels.astype(np.int64) for h in hypotheses], axis=0)
    labels = (2 * votes > len(hypotheses)).astype(np.uint8)
    return Hypothesis(hypotheses[0].domain, labels, {"algorithm": "majority", "voters": len(hypotheses), **provenance})


def realizable_learner(
    sample: ClassicalSample, concept_class: ConceptClass, config: LearnerConfig, vc_dim: Optional[int] = None
) -> Hypothesis:
    """Majority vote of min_disagreement over A(S; ∅)."""
    if len(sample) == 0:
        raise PreconditionViolation("Realizable learner needs a non-empty sample")
    if vc_dim:
        config.check_realizable_delta(vc_dim)
    labels = concept_class.labels
    votes = np.zeros(labels.shape[1], dtype=np.int64)
    voters = fallbacks = 0
    short = minimum_split_size(config.eta_bound)
    for block in iter_subsamples(np.arange(len(sample))):
        if len(block) < short:
            fallbacks += 1
        m1 = _split_for(len(block), config.eta_bound)
        k, _, _ = _min_disagreement_member(labels, sample.instances[block], sample.observed[block], m1)
        votes += labels[k]
        voters += 1
    if fallbacks:
        logger.warning(
            "realizable_learner: %d of %d subsamples shorter than %d used m1 = ceil(n/2)",
            fallbacks, voters, short,
        )
    majority = (2 * votes > voters).astype(np.uint8)
    return Hypothesis(
        concept_class.domain, majority,
        {"algorithm": "realizable", "voters": voters, "fallbacks": fallbacks, "m": len(sample)},
    )
