"""
Quantities behind the sample-complexity lower bounds.

- distinguishing_diagnostics / realizable_distinguishing_diagnostics: how
  many copies of a classical-quantum example are needed before two hard
  laws can be told apart with confidence 1 − δ.
- mutual_info_single_example / realizable_mutual_info: I(A:B₁) between a
  uniformly random string a and one example drawn from μ_a.
- vc_lower_bound: ((1 − H(1/4) − δ)d − H(δ)) / I(A:B₁).
- teacher_game_check: the rejection-probability game against a predictor.

Classical-quantum states Σ_x |x⟩⟨x| ⊗ (μ(x,0)σ₀ + μ(x,1)σ₁) are block
diagonal, so every trace norm, fidelity and entropy is summed per instance
block. Entropies are in bits.
"""

import itertools
import logging
import math
from dataclasses import asdict, dataclass, field, replace
from typing import Optional, Sequence

import numpy as np
import scipy.linalg as la

from concepts.classes import Domain, explicit
from pac_lab.conf import resolve
from pac_lab.exceptions import (
    EnumerationLimitExceeded,
    InvalidDistribution,
    PreconditionViolation,
    UnsupportedRegime,
)
from qstate.operations import (
    binary_entropy,
    mixture_eigenvalues,
    operator_fidelity,
    shannon_entropy,
    trace_norm,
)
from qstate.states import PureState
from sampling.distributions import LabeledDistribution
from sampling.hard_instances import agnostic_hard_pair, family_bias
from sampling.labels import LabelPair

from .risk import bayes_disagreement, disagreement_probability

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)
GAME_ATOL = 1e-9
FIDELITY_ATOL = 1e-12


def minimal_copies(fidelity: float, delta: float) -> float:
    """Smallest m with F^(2m) ≤ 4δ(1−δ); inf when F rounds to 1."""
    if not 0 < delta < 0.5:
        raise PreconditionViolation(f"delta must be in (0, 1/2), got {delta!r}")
    if fidelity >= 1.0 - FIDELITY_ATOL:
        return math.inf
    if fidelity <= 0.0:
        return 1
    return max(1, math.ceil(math.log(4 * delta * (1 - delta)) / math.log(fidelity**2)))


def success_upper_bound(fidelity: float, m: int) -> float:
    """½(1 + √(1 − F^(2m))), the best success probability with m copies."""
    return 0.5 * (1.0 + math.sqrt(max(0.0, 1.0 - fidelity ** (2 * m))))


def _blocks(mu: LabeledDistribution, labels: LabelPair, points: np.ndarray) -> list[np.ndarray]:
    table = mu.table()
    return [table[x, 0] * labels.sigma0.matrix + table[x, 1] * labels.sigma1.matrix for x in points]


def _common_support(first: LabeledDistribution, second: LabeledDistribution) -> np.ndarray:
    if first.domain.ids != second.domain.ids:
        raise PreconditionViolation("Distributions live on different domains")
    support = first.support_indices()
    if not np.array_equal(support, second.support_indices()):
        raise PreconditionViolation("Distributions must share their support")
    return support


@dataclass(frozen=True)
class DistinguishingReport:
    fidelity: float
    fidelity_lower: float
    trace_distance: float
    lam: float
    delta: float
    m_min: float
    m_min_lower: float
    m: Optional[int] = None
    success_bound: Optional[float] = None

    def as_dict(self) -> dict:
        return asdict(self)


def _cq_report(first, second, labels, support, delta, m, lam) -> DistinguishingReport:
    blocks_a = _blocks(first, labels, support)
    blocks_b = _blocks(second, labels, support)
    fid = min(1.0, sum(operator_fidelity(a, b) for a, b in zip(blocks_a, blocks_b)))
    distance = sum(trace_norm(a - b) for a, b in zip(blocks_a, blocks_b))
    ta, tb = first.table()[support], second.table()[support]
    fid_lower = min(1.0, float(np.sum(np.sqrt(ta * tb))))
    return DistinguishingReport(
        fidelity=fid,
        fidelity_lower=fid_lower,
        trace_distance=distance,
        lam=lam,
        delta=delta,
        m_min=minimal_copies(fid, delta),
        m_min_lower=minimal_copies(fid_lower, delta),
        m=m,
        success_bound=None if m is None else success_upper_bound(fid, m),
    )


def distinguishing_diagnostics(
    mu_plus: LabeledDistribution,
    mu_minus: LabeledDistribution,
    labels: LabelPair,
    m: Optional[int] = None,
    delta: float = 0.05,
) -> DistinguishingReport:
    """
    Fidelity and copy count for the single-instance agnostic pair.

    fidelity_lower is √(1 − λ²) from strong concavity, which is the
    classical Bhattacharyya overlap of the two label laws. m_min_lower plugs
    it in for F and so never exceeds m_min.
    """
    support = _common_support(mu_plus, mu_minus)
    if len(support) != 1:
        raise PreconditionViolation(f"Expected a single common instance, support has {len(support)}")
    x = support[0]
    lam = abs(float(mu_plus.table()[x, 0] - mu_minus.table()[x, 0]))
    return _cq_report(mu_plus, mu_minus, labels, support, delta, m, lam)


def realizable_distinguishing_diagnostics(
    mu_first: LabeledDistribution,
    mu_second: LabeledDistribution,
    labels: LabelPair,
    m: Optional[int] = None,
    delta: float = 0.05,
) -> DistinguishingReport:
    """
    The two-instance realizable pair: ‖ρ₁ − ρ₂‖₁ = λ‖σ₀ − σ₁‖₁ = 2ε.

    m_min_lower here is log(4δ(1−δ)) / (2 log(1 − ½‖ρ₁ − ρ₂‖₁)).
    """
    support = _common_support(mu_first, mu_second)
    if len(support) > 2:
        raise PreconditionViolation(f"Expected at most two common instances, support has {len(support)}")
    marginal = mu_first.marginal()[support]
    lam = float(marginal.min()) if len(support) == 2 else 0.0
    report = _cq_report(mu_first, mu_second, labels, support, delta, m, lam)
    half = report.trace_distance / 2
    if half <= 0:
        m_lower = math.inf
    elif half >= 1:
        m_lower = 1
    else:
        m_lower = max(1, math.ceil(math.log(4 * delta * (1 - delta)) / (2 * math.log(1 - half))))
    return replace(report, m_min_lower=m_lower)


def agnostic_pair_lower_bound(epsilon: float, delta: float, labels: LabelPair) -> DistinguishingReport:
    """Copy count for μ± on a one-point domain with f ≡ 0 and g ≡ 1."""
    pair_class = explicit(Domain(("x",)), [[0], [1]])
    plus, minus = agnostic_hard_pair(pair_class.member(0), pair_class.member(1), "x", epsilon, labels)
    return distinguishing_diagnostics(plus, minus, labels, delta=delta)


@dataclass(frozen=True)
class InfoReport:
    exact_bits: float
    closed_form_bits: float
    leading_order_bits: float
    overlap: float
    entropies: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)


def _pure_vectors(labels: LabelPair) -> tuple[PureState, PureState]:
    if not labels.is_pure():
        raise UnsupportedRegime(f"Mutual information needs pure labels, {labels.name!r} is mixed")
    vectors = []
    for state in (labels.sigma0, labels.sigma1):
        _, v = la.eigh(state.matrix)
        vectors.append(PureState(v[:, -1]))
    return vectors[0], vectors[1]


def log_ratio(c: float) -> float:
    """log₂((1 + c)/(1 − c))."""
    return (math.log1p(c) - math.log1p(-c)) / LN2


def _ratio_over_c(c: float) -> float:
    """log₂((1 + c)/(1 − c)) / (4c), with its limit 1/(2 ln 2) at c = 0."""
    if c < 1e-12:
        return 1.0 / (2.0 * LN2)
    return log_ratio(c) / (4.0 * c)


def agnostic_info_closed_form(c: float, kappa: float) -> float:
    """
    I(A:B₁) in closed form for overlap c and κ = (8ε/‖σ₀ − σ₁‖₁)².

    ½ log₂(1 − κ) + ½(s·log₂((1+s)/(1−s)) − c·log₂((1+c)/(1−c))),  s = √(c² + κ(1 − c²))
    """
    if not 0 <= kappa < 1:
        raise PreconditionViolation(f"(8ε/‖σ₀−σ₁‖₁)² = {kappa:.6g} must be in [0, 1)")
    s = math.sqrt(c * c + kappa * (1 - c * c))
    return 0.5 * math.log2(1 - kappa) + 0.5 * (s * log_ratio(s) - c * log_ratio(c))


def agnostic_info_leading_order(c: float, kappa: float) -> float:
    """κ(1 − c²)/(4c) · log₂((1+c)/(1−c))."""
    return kappa * (1 - c * c) * _ratio_over_c(c)


def _uniform_or(ensemble, d: int) -> np.ndarray:
    if ensemble is None:
        return np.full(2**d, 1.0 / 2**d)
    probs = np.asarray(ensemble, dtype=float).reshape(-1)
    if probs.shape[0] != 2**d or np.any(probs < 0) or abs(probs.sum() - 1) > 1e-9:
        raise InvalidDistribution(f"String ensemble needs {2**d} non-negative weights summing to 1")
    return probs


def mutual_info_single_example(
    d: int, epsilon: float, labels: LabelPair, ensemble: Optional[Sequence[float]] = None
) -> InfoReport:
    """
    I(A:B₁) = S(A) + S(B₁) − S(AB₁) for one example of μ_a, a drawn from the ensemble.

    σ_AB₁ is assembled block by block over every string a and shattered
    point i; each block p_a(μ_a(i,0)σ₀ + μ_a(i,1)σ₁) has its two non-zero
    eigenvalues from mixture_eigenvalues. The closed form assumes the
    uniform ensemble.
    """
    limit = resolve(None, "MAX_MUTUAL_INFO_D")
    if not 1 <= d <= limit:
        raise EnumerationLimitExceeded(f"d={d} outside 1..{limit} for the explicit σ_AB₁")
    psi0, psi1 = _pure_vectors(labels)
    bias = family_bias(epsilon, labels)
    if epsilon < 0 or bias >= 1:
        raise PreconditionViolation(f"8ε/‖σ₀−σ₁‖₁ = {bias:.6g} must be in [0, 1)")
    probs = _uniform_or(ensemble, d)
    strings = np.array(list(itertools.product((0, 1), repeat=d)), dtype=np.int64)

    joint, b_weights = [], np.zeros((d, 2))
    for p_a, a in zip(probs, strings):
        for i in range(d):
            w = [p_a * (1 + (-1) ** (a[i] + b) * bias) / (2 * d) for b in (0, 1)]
            b_weights[i] += w
            joint.extend(mixture_eigenvalues(w[0], w[1], psi0, psi1))
    marginal = [ev for w0, w1 in b_weights for ev in mixture_eigenvalues(w0, w1, psi0, psi1)]

    s_a = shannon_entropy(probs)
    s_b = shannon_entropy(marginal)
    s_ab = shannon_entropy(joint)
    exact = s_a + s_b - s_ab

    c = labels.overlap()
    kappa = bias**2
    return InfoReport(
        exact_bits=exact,
        closed_form_bits=agnostic_info_closed_form(c, kappa),
        leading_order_bits=agnostic_info_leading_order(c, kappa),
        overlap=c,
        entropies={"S_A": s_a, "S_B1": s_b, "S_AB1": s_ab},
    )


def realizable_info_closed_form(c: float, lam: float) -> float:
    """−(λ/2)(log₂((1 − c²)/4) + c·log₂((1+c)/(1−c)))."""
    return -(lam / 2) * (math.log2((1 - c * c) / 4) + c * log_ratio(c))


def realizable_mutual_info(d: int, epsilon: float, labels: LabelPair) -> InfoReport:
    """
    I(A:B₁) for the weighted-support family with λ = 8ε/‖σ₀ − σ₁‖₁.

    Spectra: σ_B₁ has 1 − λ once and (λ/d)(1 ± c)/2 d times each; σ_AB₁ has
    (1 − λ)/2^d with multiplicity 2^d and λ/(d·2^d) with multiplicity d·2^d.
    """
    if d < 1:
        raise PreconditionViolation(f"d must be positive, got {d}")
    psi0, psi1 = _pure_vectors(labels)
    lam = family_bias(epsilon, labels)
    if epsilon < 0 or lam >= 1:
        raise PreconditionViolation(f"λ = 8ε/‖σ₀−σ₁‖₁ = {lam:.6g} must be in [0, 1)")
    l1, l2 = mixture_eigenvalues(0.5, 0.5, psi0, psi1)
    s_a = float(d)
    s_b = shannon_entropy([1 - lam, lam / d * l1, lam / d * l2], [1, d, d])
    s_ab = shannon_entropy([(1 - lam) / 2**d, lam / (d * 2**d)], [2**d, d * 2**d])
    c = labels.overlap()
    closed = realizable_info_closed_form(c, lam)
    return InfoReport(
        exact_bits=s_a + s_b - s_ab,
        closed_form_bits=closed,
        leading_order_bits=closed,
        overlap=c,
        entropies={"S_A": s_a, "S_B1": s_b, "S_AB1": s_ab},
    )


def vc_lower_bound(d: int, epsilon: float, delta: float, labels: LabelPair, regime: str = "agnostic") -> float:
    """
    m ≥ ((1 − H(1/4) − δ)d − H(δ)) / I(A:B₁).

    Returns 0 when the numerator is not positive. I(A:B₁) does not depend on
    d in either regime, so d beyond the explicit-state limit uses the closed form.
    """
    numerator = (1 - binary_entropy(0.25) - delta) * d - binary_entropy(delta)
    if numerator <= 0:
        return 0.0
    if regime == "realizable":
        info = realizable_mutual_info(d, epsilon, labels).exact_bits
    elif regime == "agnostic":
        if d <= resolve(None, "MAX_MUTUAL_INFO_D"):
            info = mutual_info_single_example(d, epsilon, labels).exact_bits
        else:
            info = agnostic_info_closed_form(labels.overlap(), family_bias(epsilon, labels) ** 2)
    else:
        raise PreconditionViolation(f"Unknown regime {regime!r}")
    if info <= 0:
        return math.inf
    return numerator / info


def hamming_distance(a, b) -> int:
    if len(a) != len(b):
        raise PreconditionViolation(f"Bit strings differ in length: {len(a)} vs {len(b)}")
    return int(sum(int(x) != int(y) for x, y in zip(a, b)))


@dataclass(frozen=True)
class TeacherGameReport:
    expected_rejection: float
    optimal_rejection: float
    gap: float
    half_risk: float
    half_excess_over_bayes: float
    deterministic_labels: bool

    @property
    def holds(self) -> bool:
        return abs(self.gap - self.half_excess_over_bayes) <= GAME_ATOL

    def as_dict(self) -> dict:
        return {**asdict(self), "holds": self.holds}


def teacher_game_check(h, mu: LabeledDistribution, labels: LabelPair) -> TeacherGameReport:
    """
    Prior-weighted rejection probability ½tr[E_reject(ρ) h(x)] of the predictor
    h, minus the best any {σ₀, σ₁}-valued predictor achieves.

    E_reject(σ₀) = E₁ and E_reject(σ₁) = E₀ for the Holevo-Helstrom
    measurement. The gap is ½(R_μ(h) − R_Bayes) for any pair of error rates,
    which is ½R_μ(h) when the labels are a function of x.
    """
    if not labels.equal_purity():
        raise UnsupportedRegime(
            f"Teacher game needs equal purity, got {labels.sigma0.purity():.6g} and {labels.sigma1.purity():.6g}"
        )
    povm = labels.holevo_helstrom
    p_one = np.array([povm.probability(labels.sigma0, 1), povm.probability(labels.sigma1, 1)])
    # reject[b, g] = ½tr[E_{1-b} σ_g]: true label b, prediction σ_g
    reject = 0.5 * np.vstack([p_one, 1.0 - p_one])
    table = mu.table()
    per_choice = table @ reject
    h_labels = np.asarray(getattr(h, "labels", h), dtype=np.intp)
    expected = float(per_choice[np.arange(len(h_labels)), h_labels].sum())
    optimal = float(per_choice.min(axis=1).sum())
    wrong = disagreement_probability(h_labels, mu)
    bayes = bayes_disagreement(mu)
    report = TeacherGameReport(
        expected_rejection=expected,
        optimal_rejection=optimal,
        gap=expected - optimal,
        half_risk=0.5 * labels.half_distance * wrong,
        half_excess_over_bayes=0.5 * labels.half_distance * (wrong - bayes),
        deterministic_labels=bool(np.all(table.min(axis=1) <= 0)),
    )
    if not report.holds:
        logger.warning(
            "teacher_game_check: gap %.6g differs from ½(R − R_Bayes) = %.6g", report.gap, report.half_excess_over_bayes
        )
    return report
