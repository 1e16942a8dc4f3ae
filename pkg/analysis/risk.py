"""
Exact risk functionals over finite supports.

R_μ(h)  = (‖σ₀ − σ₁‖₁/2) · P_μ[h(x) ≠ b]      true risk with quantum labels
R̃_ν(g) = P_ν[g(x) ≠ y]                        0-1 risk on measured labels

Everything here is a finite sum over the support of a LabeledDistribution;
nothing is estimated.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from concepts.classes import ConceptClass
from pac_lab.exceptions import DimensionMismatch
from qstate.states import TwoOutcomePovm
from sampling.distributions import LabeledDistribution, induced_nu
from sampling.labels import LabelPair

logger = logging.getLogger(__name__)

IDENTITY_ATOL = 1e-10


def _labels_of(h) -> np.ndarray:
    labels = np.asarray(getattr(h, "labels", h), dtype=np.uint8).reshape(-1)
    return labels


def _check_domain(labels: np.ndarray, mu: LabeledDistribution):
    if labels.shape[0] != len(mu.domain):
        raise DimensionMismatch(f"Predictor covers {labels.shape[0]} points, distribution has {len(mu.domain)}")


def disagreement_probability(h, mu: LabeledDistribution) -> float:
    """P_{(x,b)∼μ}[h(x) ≠ b]."""
    labels = _labels_of(h)
    _check_domain(labels, mu)
    wrong = labels[mu.instances] != mu.bits
    return float(np.sum(mu.probs[wrong]))


def true_risk(h, mu: LabeledDistribution, labels: LabelPair) -> float:
    return labels.half_distance * disagreement_probability(h, mu)


def intermediate_risk(g, nu: LabeledDistribution) -> float:
    return disagreement_probability(g, nu)


def class_risks(concept_class: ConceptClass, mu: LabeledDistribution) -> np.ndarray:
    """P_μ[f(x) ≠ b] for every member f, in member order."""
    table = mu.table()
    f = concept_class.labels.astype(float)
    return (1.0 - f) @ table[:, 1] + f @ table[:, 0]


def optimal_class_risk(concept_class: ConceptClass, mu: LabeledDistribution, labels: LabelPair) -> float:
    """inf_{f ∈ F} R_μ(f) by exhaustive scan."""
    return labels.half_distance * float(class_risks(concept_class, mu).min())


def optimal_intermediate_risk(concept_class: ConceptClass, nu: LabeledDistribution) -> float:
    return float(class_risks(concept_class, nu).min())


def bayes_disagreement(mu: LabeledDistribution) -> float:
    """inf over all {0,1}-valued predictors of P_μ[g(x) ≠ b]."""
    return float(mu.table().min(axis=1).sum())


@dataclass(frozen=True)
class RiskReport:
    true_risk: float
    optimal_class_risk: float
    excess: float
    intermediate_risk: Optional[float] = None

    def as_dict(self) -> dict:
        return asdict(self)


def excess_risk(h, concept_class: ConceptClass, mu: LabeledDistribution, labels: LabelPair) -> float:
    return true_risk(h, mu, labels) - optimal_class_risk(concept_class, mu, labels)


def risk_report(
    h,
    concept_class: ConceptClass,
    mu: LabeledDistribution,
    labels: LabelPair,
    povm: Optional[TwoOutcomePovm] = None,
    with_intermediate: bool = False,
) -> RiskReport:
    risk = true_risk(h, mu, labels)
    best = optimal_class_risk(concept_class, mu, labels)
    intermediate = None
    if with_intermediate or povm is not None:
        povm = labels.holevo_helstrom if povm is None else povm
        intermediate = intermediate_risk(h, induced_nu(mu, povm, labels))
    return RiskReport(risk, best, risk - best, intermediate)


@dataclass(frozen=True)
class RiskComparison:
    """
    Both sides of the measured-label risk identity plus the sandwich bounds.

    identity:  R̃_ν(g) = κ·P[h ≠ ρ] + η₀ + (η₁ − η₀)·E_{μ₁}[g]
    with κ = tr[(σ₁ − σ₀)E₁], which is ‖σ₀ − σ₁‖₁/2 for the Holevo-Helstrom measurement.
    """

    intermediate_risk: float
    identity_rhs: float
    true_risk: float
    eta0: float
    eta1: float
    mean_g: float
    contrast: float
    half_distance: float
    lower: float
    upper: float
    excess_true: Optional[float] = None
    excess_intermediate: Optional[float] = None
    excess_lower: Optional[float] = None
    excess_upper: Optional[float] = None

    @property
    def identity_gap(self) -> float:
        return abs(self.intermediate_risk - self.identity_rhs)

    @property
    def identity_holds(self) -> bool:
        return self.identity_gap <= IDENTITY_ATOL

    @property
    def sandwich_holds(self) -> bool:
        return self.lower - IDENTITY_ATOL <= self.true_risk <= self.upper + IDENTITY_ATOL

    @property
    def excess_sandwich_holds(self) -> Optional[bool]:
        if self.excess_true is None:
            return None
        return self.excess_lower - IDENTITY_ATOL <= self.excess_true <= self.excess_upper + IDENTITY_ATOL

    def as_dict(self) -> dict:
        data = asdict(self)
        data.update(identity_holds=self.identity_holds, sandwich_holds=self.sandwich_holds)
        return data


def risk_comparison(
    g,
    mu: LabeledDistribution,
    labels: LabelPair,
    povm: Optional[TwoOutcomePovm] = None,
    concept_class: Optional[ConceptClass] = None,
) -> RiskComparison:
    """
    Evaluate R̃_ν(g) directly under the induced ν and again through the identity.

    The first sandwich is R̃ − max(η₀, η₁) ≤ R_μ(h) ≤ R̃ − min(η₀, η₁). With a
    concept class the excess risks are compared too: they differ by at most
    |η₀ − η₁|, so equal error rates make them coincide.
    """
    povm = labels.holevo_helstrom if povm is None else povm
    g_labels = _labels_of(g)
    noise = labels.rates_for(povm)
    eta0, eta1 = noise.eta0, noise.eta1
    contrast = 1.0 - eta0 - eta1

    nu = induced_nu(mu, povm, labels)
    lhs = intermediate_risk(g_labels, nu)
    wrong = disagreement_probability(g_labels, mu)
    mean_g = float(mu.marginal() @ g_labels)
    rhs = contrast * wrong + eta0 + (eta1 - eta0) * mean_g
    risk = labels.half_distance * wrong

    extra = {}
    if concept_class is not None:
        excess_true = risk - optimal_class_risk(concept_class, mu, labels)
        excess_nu = lhs - optimal_intermediate_risk(concept_class, nu)
        spread = abs(eta0 - eta1)
        extra = dict(
            excess_true=excess_true,
            excess_intermediate=excess_nu,
            excess_lower=excess_nu - spread,
            excess_upper=excess_nu + spread,
        )

    report = RiskComparison(
        intermediate_risk=lhs,
        identity_rhs=rhs,
        true_risk=risk,
        eta0=eta0,
        eta1=eta1,
        mean_g=mean_g,
        contrast=contrast,
        half_distance=labels.half_distance,
        lower=lhs - max(eta0, eta1),
        upper=lhs - min(eta0, eta1),
        **extra,
    )
    if not report.identity_holds:
        logger.warning("risk_comparison: identity off by %.3g", report.identity_gap)
    return report
