"""
Distributions used by the lower-bound diagnostics.

- agnostic_hard_pair: two laws on one instance whose conditional label
  probabilities differ by ±λ around 1/2.
- agnostic_hard_family: μ_a over d shattered points, biased towards a_i.
- realizable_hard_distribution: weight 1 − λ on an anchor point and λ
  spread over the informative point(s), labelled by a class member.
"""

import logging
import math
from typing import Sequence

import numpy as np

from concepts.classes import Concept, Domain
from pac_lab.exceptions import PreconditionViolation, SpecError

from .distributions import LabeledDistribution
from .labels import LabelPair

logger = logging.getLogger(__name__)


def _parse_bits(a) -> np.ndarray:
    if isinstance(a, str):
        if set(a) - {"0", "1"}:
            raise SpecError(f"Bit string {a!r} must contain only 0 and 1")
        a = [int(c) for c in a]
    bits = np.asarray(a, dtype=np.uint8).reshape(-1)
    if np.any(bits > 1):
        raise SpecError("Bit strings must contain only 0 and 1")
    return bits


def agnostic_pair_lambda(epsilon: float, labels: LabelPair) -> float:
    """λ = ε / (2‖σ₀ − σ₁‖₁)."""
    return epsilon / (2 * labels.distance)


def agnostic_hard_pair(
    f: Concept, g: Concept, x, epsilon: float, labels: LabelPair
) -> tuple[LabeledDistribution, LabeledDistribution]:
    """
    (μ₊, μ₋) on the single instance x.

    μ±(x, f(x)) = (1 ± λ)/2 and μ±(x, g(x)) = (1 ∓ λ)/2. With this λ the
    wrong constant predictor has excess risk λ‖σ₀ − σ₁‖₁/2 = ε/4.
    """
    if f.domain is not g.domain and f.domain.ids != g.domain.ids:
        raise PreconditionViolation("f and g live on different domains")
    if f(x) != 0 or g(x) != 1:
        raise PreconditionViolation(f"Need f(x) = 0 and g(x) = 1 at x={x!r}")
    if not 0 <= epsilon < labels.distance / (2 * math.sqrt(2)):
        raise PreconditionViolation(
            f"epsilon={epsilon!r} must be below ‖σ₀−σ₁‖₁/(2√2) = {labels.distance / (2 * math.sqrt(2)):.6g}"
        )
    lam = agnostic_pair_lambda(epsilon, labels)
    index = f.domain.index_of(x)
    plus = LabeledDistribution(f.domain, [index, index], [0, 1], [(1 + lam) / 2, (1 - lam) / 2])
    minus = LabeledDistribution(f.domain, [index, index], [0, 1], [(1 - lam) / 2, (1 + lam) / 2])
    return plus, minus


def family_bias(epsilon: float, labels: LabelPair) -> float:
    """8ε / ‖σ₀ − σ₁‖₁, the bias of μ_a and the weight λ of the realizable family."""
    return 8 * epsilon / labels.distance


def agnostic_hard_family(
    domain: Domain, shattered: Sequence, a, epsilon: float, labels: LabelPair
) -> LabeledDistribution:
    """μ_a(s_i, b) = (1/2d)(1 + (−1)^(a_i + b) · 8ε/‖σ₀ − σ₁‖₁)."""
    bits = _parse_bits(a)
    d = len(shattered)
    if d == 0 or len(bits) != d:
        raise PreconditionViolation(f"Need a non-empty shattered set and a bit string of the same length, got {d} and {len(bits)}")
    bias = family_bias(epsilon, labels)
    if epsilon < 0 or bias >= 1:
        raise PreconditionViolation(
            f"epsilon={epsilon!r} must be in [0, ‖σ₀−σ₁‖₁/8 = {labels.distance / 8:.6g})"
        )
    points = domain.indices(shattered)
    instances = np.repeat(points, 2)
    b = np.tile([0, 1], d)
    sign = np.where((np.repeat(bits, 2) + b) % 2 == 0, 1.0, -1.0)
    probs = (1 + sign * bias) / (2 * d)
    return LabeledDistribution(domain, instances, b, probs)


def realizable_pair_lambda(epsilon: float, labels: LabelPair) -> float:
    """λ = 2ε / ‖σ₀ − σ₁‖₁."""
    return 2 * epsilon / labels.distance


def realizable_hard_pair(target: Concept, x1, x2, epsilon: float, labels: LabelPair) -> LabeledDistribution:
    """μ(x₁) = 1 − λ, μ(x₂) = λ, labelled by the target."""
    lam = realizable_pair_lambda(epsilon, labels)
    if epsilon < 0 or lam >= 1:
        raise PreconditionViolation(f"λ = 2ε/‖σ₀−σ₁‖₁ = {lam:.6g} must be in [0, 1)")
    i1, i2 = target.domain.indices([x1, x2])
    if i1 == i2:
        raise PreconditionViolation("x1 and x2 must differ")
    return LabeledDistribution(target.domain, [i1, i2], target.labels[[i1, i2]], [1 - lam, lam])


def realizable_hard_family(
    domain: Domain, anchor, shattered: Sequence, a, epsilon: float, labels: LabelPair
) -> LabeledDistribution:
    """μ(s₀) = 1 − λ with label 0, μ(s_i) = λ/d with label a_i, λ = 8ε/‖σ₀ − σ₁‖₁."""
    bits = _parse_bits(a)
    d = len(shattered)
    if d == 0 or len(bits) != d:
        raise PreconditionViolation("Need a non-empty shattered set and a bit string of the same length")
    lam = family_bias(epsilon, labels)
    if epsilon < 0 or lam >= 1:
        raise PreconditionViolation(f"λ = 8ε/‖σ₀−σ₁‖₁ = {lam:.6g} must be in [0, 1)")
    points = domain.indices([anchor, *shattered])
    if len(np.unique(points)) != d + 1:
        raise PreconditionViolation("Anchor and shattered points must be distinct")
    probs = np.concatenate([[1 - lam], np.full(d, lam / d)])
    return LabeledDistribution(domain, points, np.concatenate([[0], bits]), probs)


def realizable_hard_distribution(kind: str, **params) -> LabeledDistribution:
    """Dispatch on kind: 'pair' or 'shattered-family'."""
    if kind == "pair":
        return realizable_hard_pair(**params)
    if kind == "shattered-family":
        return realizable_hard_family(**params)
    raise SpecError(f"Unknown realizable hard distribution kind {kind!r}")
