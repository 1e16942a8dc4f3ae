"""
Empirical Rademacher complexity E_σ[sup_f (1/n) Σ σ_i f(z_i)].

Exact mode enumerates all 2^n sign vectors in blocks; monte-carlo mode
averages over random sign vectors drawn from the caller's generator.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from concepts.classes import ConceptClass
from learners.erm import loss_matrix
from pac_lab.conf import resolve
from pac_lab.exceptions import EnumerationLimitExceeded, PreconditionViolation, SpecError
from pac_lab.seeding import make_rng
from qstate.states import NoisePair
from sampling.distributions import ClassicalSample

logger = logging.getLogger(__name__)

MODES = ("exact", "monte-carlo")
SIGN_BLOCK = 1 << 14


def _sign_block(n: int, start: int, stop: int) -> np.ndarray:
    codes = np.arange(start, stop, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(n, dtype=np.int64)) & 1
    return 2.0 * bits - 1.0


def _sup_mean(signs: np.ndarray, values: np.ndarray) -> float:
    """Σ over rows of sup_f (1/n) σ·f."""
    n = values.shape[1]
    return float(np.sum((signs @ values.T).max(axis=1)) / n)


def empirical_rademacher_values(
    values,
    mode: str = "exact",
    draws: int = 2000,
    rng=None,
    max_points: Optional[int] = None,
) -> float:
    """Rademacher complexity of the rows of a (functions × points) value matrix."""
    values = np.atleast_2d(np.asarray(values, dtype=float))
    n = values.shape[1]
    if n == 0:
        raise PreconditionViolation("Rademacher complexity needs at least one point")
    if mode == "exact":
        limit = resolve(max_points, "MAX_EXACT_RADEMACHER_POINTS")
        if n > limit:
            raise EnumerationLimitExceeded(f"Exact mode enumerates 2^n sign vectors; n={n} exceeds {limit}")
        total = 2**n
        acc = 0.0
        for start in range(0, total, SIGN_BLOCK):
            acc += _sup_mean(_sign_block(n, start, min(start + SIGN_BLOCK, total)), values)
        return acc / total
    if mode == "monte-carlo":
        if draws < 1:
            raise PreconditionViolation(f"draws must be positive, got {draws}")
        rng = make_rng(resolve(None, "DEFAULT_SEED") if rng is None else rng)
        signs = rng.choice([-1.0, 1.0], size=(draws, n))
        return _sup_mean(signs, values) / draws
    raise SpecError(f"Unknown Rademacher mode {mode!r}; choose from {', '.join(MODES)}")


def empirical_rademacher(
    concept_class: ConceptClass, instances: Sequence, mode: str = "exact", draws: int = 2000, rng=None
) -> float:
    """Rademacher complexity of the class restricted to the given instances (ids, repeats allowed)."""
    columns = concept_class.domain.indices(instances)
    return empirical_rademacher_values(concept_class.labels[:, columns], mode, draws, rng)


def noise_corrected_values(concept_class: ConceptClass, sample: ClassicalSample, noise: NoisePair) -> np.ndarray:
    """G̃ on the sample: entry [k, i] = ℓ̃(f_k(x_i), y_i)."""
    losses = loss_matrix(noise)
    predictions = concept_class.labels[:, sample.instances].astype(np.intp)
    return losses[predictions, sample.observed.astype(np.intp)[None, :]]


def noise_corrected_rademacher(
    concept_class: ConceptClass,
    sample: ClassicalSample,
    noise: NoisePair,
    mode: str = "exact",
    draws: int = 2000,
    rng=None,
) -> float:
    """Rademacher complexity of the noise-corrected loss class G̃ on the sample."""
    noise.require_learnable()
    return empirical_rademacher_values(noise_corrected_values(concept_class, sample, noise), mode, draws, rng)


def contraction_factor(noise: NoisePair) -> float:
    """2 / (1 − η₀ − η₁), the Lipschitz bound relating R̂(G̃) to R̂(F̃)."""
    return 2.0 / noise.require_learnable().denominator
