"""
Sample-size calculators for the two learning regimes.

Agnostic (noise-corrected ERM):
    m ≥ (‖σ₀−σ₁‖₁² / 4ε²) · (124√d / (1−η₀−η₁) + 5√(2 ln(8/δ)) / (1−η₀−η₁))²

Realizable (majority vote over subsamples):
    m = ⌊c · C(η_b)/ε · (d + ln(18/δ))⌋,  c = 7200,  C(η_b) = 2/(1 − exp(−½(1−2η_b)²))

"log" is base 2 and "ln" natural throughout. Each report carries the
explicit-constant value and the O(·) shape without constants.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

from learners.base import LearnerConfig
from learners.realizable import laird_constant, laird_constant_relaxed, literal_input_sizes
from pac_lab.exceptions import PreconditionViolation
from qstate.states import NoisePair
from sampling.labels import LabelPair

logger = logging.getLogger(__name__)

AGNOSTIC_VC_CONSTANT = 124
AGNOSTIC_CONFIDENCE_CONSTANT = 5
REALIZABLE_CONSTANT = 7200


@dataclass(frozen=True)
class BoundReport:
    name: str
    m_sufficient: int
    shape: float
    constants: dict = field(default_factory=dict)

    def rows(self) -> list[tuple[str, object]]:
        return [("m_sufficient", self.m_sufficient), ("shape", self.shape), *self.constants.items()]


def _check_d(d: int):
    if d < 1:
        raise PreconditionViolation(f"VC dimension must be positive, got {d}")


def agnostic_sample_bound(
    d: int, config: LearnerConfig, labels: LabelPair, noise: Optional[NoisePair] = None
) -> BoundReport:
    _check_d(d)
    noise = (labels.noise if noise is None else noise).require_learnable()
    eps, delta = config.epsilon, config.delta
    denominator = noise.denominator
    distance = labels.distance
    inner = (
        AGNOSTIC_VC_CONSTANT * math.sqrt(d) / denominator
        + AGNOSTIC_CONFIDENCE_CONSTANT * math.sqrt(2 * math.log(8 / delta)) / denominator
    )
    value = distance**2 / (4 * eps**2) * inner**2
    return BoundReport(
        "agnostic",
        math.ceil(value),
        (d + math.log(1 / delta)) / eps**2,
        {
            "d": d,
            "epsilon": eps,
            "delta": delta,
            "trace_distance": distance,
            "eta0": noise.eta0,
            "eta1": noise.eta1,
            "denominator": denominator,
            "vc_constant": AGNOSTIC_VC_CONSTANT,
            "confidence_constant": AGNOSTIC_CONFIDENCE_CONSTANT,
            "value": value,
        },
    )


def realizable_sample_bound(d: int, config: LearnerConfig, c: float = REALIZABLE_CONSTANT) -> BoundReport:
    """
    The realizable sufficient sample size, with exact C(η_b) and with its relaxation.

    The relaxation 4/(1−2η_b)² is below C(η_b) for small η_b (C(0) ≈ 5.083 > 4),
    so relaxation_holds is reported rather than assumed.
    """
    _check_d(d)
    eps, delta, eta_b = config.epsilon, config.delta, config.eta_bound
    delta_ok = config.check_realizable_delta(d)
    constant = laird_constant(eta_b)
    relaxed = laird_constant_relaxed(eta_b)
    log_term = d + math.log(18 / delta)
    m = math.floor(c * constant / eps * log_term)
    m_relaxed = math.floor(c * relaxed / eps * log_term)
    literal_m1, literal_m2 = literal_input_sizes(config, d)
    return BoundReport(
        "realizable",
        m,
        (d + math.log(1 / delta)) / eps,
        {
            "d": d,
            "epsilon": eps,
            "delta": delta,
            "eta_bound": eta_b,
            "c": c,
            "C": constant,
            "C_relaxed": relaxed,
            "relaxation_holds": constant <= relaxed,
            "m_relaxed": m_relaxed,
            "m1_literal": literal_m1,
            "m2_literal": literal_m2,
            "delta_threshold": LearnerConfig.realizable_delta_threshold(d),
            "delta_ok": delta_ok,
        },
    )
