"""
Distances, entropies and the Holevo-Helstrom measurement.

Flow:
1. Compare: trace_distance (full Schatten-1 norm, not halved) and fidelity.
2. Discriminate: holevo_helstrom(σ₀, σ₁) -> TwoOutcomePovm -> error_rates.
3. Simulate: measure() draws one outcome with one uniform from the caller's rng.

All eigendecompositions are Hermitian (scipy.linalg.eigh / eigvalsh).
"""

import logging
import math
from typing import Optional

import numpy as np
import scipy.linalg as la
from scipy.special import entr

from pac_lab.conf import resolve
from pac_lab.exceptions import (
    DimensionMismatch,
    IndistinguishableStates,
    InvalidState,
    NumericalGuardError,
)

from .states import (
    DensityMatrix,
    NoisePair,
    PureState,
    TwoOutcomePovm,
    check_same_dim,
    hermitian_part,
)

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)


def psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    """Square root of a Hermitian PSD matrix; round-off negative eigenvalues are clamped to 0."""
    w, v = la.eigh(hermitian_part(np.asarray(matrix, dtype=complex)))
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def trace_norm(matrix: np.ndarray) -> float:
    """Σ|λ| of a Hermitian matrix."""
    return float(np.abs(la.eigvalsh(hermitian_part(np.asarray(matrix, dtype=complex)))).sum())


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """‖ρ − σ‖₁ ∈ [0, 2]."""
    check_same_dim(rho, sigma)
    return min(2.0, trace_norm(rho.matrix - sigma.matrix))


def operator_fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """tr√(√a b √a) for PSD operators of any trace (used on unnormalised blocks)."""
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch(f"Operator shapes differ: {a.shape} vs {b.shape}")
    root = psd_sqrt(a)
    inner = la.eigvalsh(hermitian_part(root @ b @ root))
    return float(np.sqrt(np.clip(inner, 0.0, None)).sum())


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """F(ρ, σ) = tr√(√ρ σ √ρ) ∈ [0, 1]; pure states give |⟨ψ|φ⟩|."""
    check_same_dim(rho, sigma)
    return float(np.clip(operator_fidelity(rho.matrix, sigma.matrix), 0.0, 1.0))


def helstrom_success_probability(sigma0: DensityMatrix, sigma1: DensityMatrix) -> float:
    """½(1 + ½‖σ₀ − σ₁‖₁)."""
    return 0.5 * (1.0 + 0.5 * trace_distance(sigma0, sigma1))


def success_probability(povm: TwoOutcomePovm, sigma0: DensityMatrix, sigma1: DensityMatrix) -> float:
    """Equal-prior success probability ½tr[E₀σ₀] + ½tr[E₁σ₁] of any two-outcome measurement."""
    check_same_dim(povm, sigma0, sigma1)
    return 0.5 * (sigma0.expectation(povm.e0) + sigma1.expectation(povm.e1))


def holevo_helstrom(
    sigma0: DensityMatrix,
    sigma1: DensityMatrix,
    atol: Optional[float] = None,
    distinguish_atol: Optional[float] = None,
) -> TwoOutcomePovm:
    """
    Minimum-error measurement for equal priors.

    E₀ projects onto the eigenspaces of σ₀ − σ₁ with eigenvalue ≥ 0, taken
    inside the support of σ₀ + σ₁ (zero eigenvalues there go to E₀). The
    common kernel of σ₀ and σ₁ goes to E₁, so E₀ has block form P ⊕ 0.
    Raises IndistinguishableStates when ‖σ₀ − σ₁‖₁ ≤ DISTINGUISHABILITY_ATOL.
    """
    atol = resolve(atol, "MATRIX_ATOL")
    distinguish_atol = resolve(distinguish_atol, "DISTINGUISHABILITY_ATOL")
    dim = check_same_dim(sigma0, sigma1)
    distance = trace_distance(sigma0, sigma1)
    if distance <= distinguish_atol:
        raise IndistinguishableStates(f"States are indistinguishable (trace distance {distance:.3e})")

    w_sum, v_sum = la.eigh(sigma0.matrix + sigma1.matrix)
    # Zero eigenvalues go to E₀ only inside this support; the common kernel lands in E₁.
    support = v_sum[:, w_sum > atol]
    difference = hermitian_part(support.conj().T @ (sigma0.matrix - sigma1.matrix) @ support)
    w_diff, v_diff = la.eigh(difference)
    positive = support @ v_diff[:, w_diff >= -atol]
    e0 = positive @ positive.conj().T
    logger.debug(
        "holevo_helstrom: dim=%d support=%d rank(E0)=%d",
        dim, support.shape[1], positive.shape[1],
    )
    povm = TwoOutcomePovm.from_effect(e0)

    attained = success_probability(povm, sigma0, sigma1)
    optimum = 0.5 * (1.0 + 0.5 * distance)
    if abs(attained - optimum) > 1e-9:
        raise NumericalGuardError(
            f"Holevo-Helstrom construction attains {attained!r}, expected {optimum!r}"
        )
    return povm


def error_rates(povm: TwoOutcomePovm, sigma0: DensityMatrix, sigma1: DensityMatrix) -> NoisePair:
    """η₀ = tr[σ₀E₁], η₁ = tr[σ₁E₀]."""
    check_same_dim(povm, sigma0, sigma1)
    return NoisePair(povm.probability(sigma0, 1), povm.probability(sigma1, 0))


def measure(povm: TwoOutcomePovm, state: DensityMatrix, rng: np.random.Generator) -> int:
    """Return 1 with probability tr[E₁ρ]; consumes exactly one uniform from rng."""
    p1 = povm.probability(state, 1)
    return int(rng.random() < p1)


def mixture_eigenvalues(alpha: float, beta: float, psi: PureState, phi: PureState) -> tuple[float, float]:
    """Non-zero spectrum of α|ψ⟩⟨ψ| + β|φ⟩⟨φ|, larger first."""
    if alpha < 0 or beta < 0:
        raise InvalidState(f"Mixture weights must be non-negative, got {alpha!r}, {beta!r}")
    overlap_sq = psi.overlap(phi) ** 2
    root = math.sqrt(max((alpha - beta) ** 2 + 4.0 * alpha * beta * overlap_sq, 0.0))
    return (alpha + beta + root) / 2.0, (alpha + beta - root) / 2.0


def shannon_entropy(probabilities, multiplicities=None) -> float:
    """
    −Σ p log₂ p in bits, with 0·log 0 = 0.

    multiplicities[i] counts how often probabilities[i] repeats, so long
    degenerate spectra can be passed compactly.
    """
    p = np.clip(np.asarray(probabilities, dtype=float), 0.0, 1.0)
    terms = entr(p) / LN2
    if multiplicities is not None:
        terms = terms * np.asarray(multiplicities, dtype=float)
    return float(terms.sum())


def binary_entropy(p: float) -> float:
    return shannon_entropy([p, 1.0 - p])


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(ρ) in bits, from the clamped Hermitian spectrum."""
    spectrum = la.eigvalsh(rho.matrix)
    clamped = np.clip(spectrum, 0.0, 1.0)
    if not np.array_equal(clamped, spectrum):
        logger.debug("von_neumann_entropy: clamped spectrum %s", spectrum)
    return shannon_entropy(clamped)
