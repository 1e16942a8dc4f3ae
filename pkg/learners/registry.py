"""Learners by CLI name, all called as learner(sample, class, config, noise)."""

import math
from typing import Callable

from concepts.classes import ConceptClass
from pac_lab.exceptions import SpecError
from qstate.states import NoisePair
from sampling.distributions import ClassicalSample

from .base import Hypothesis, LearnerConfig
from .erm import erm_01, erm_noise_corrected
from .realizable import laird_split, min_disagreement, minimum_split_size, realizable_learner


def _erm01(sample, concept_class, config, noise):
    return erm_01(sample, concept_class)


def _erm_nc(sample, concept_class, config, noise):
    return erm_noise_corrected(sample, concept_class, noise)


def _mindis(sample, concept_class, config, noise):
    if len(sample) >= minimum_split_size(config.eta_bound):
        m1 = laird_split(len(sample), config.eta_bound).m1
    else:
        m1 = math.ceil(len(sample) / 2)
    return min_disagreement(sample, concept_class, m1)


def _realizable(sample, concept_class, config, noise):
    return realizable_learner(sample, concept_class, config)


LEARNERS: dict[str, Callable[[ClassicalSample, ConceptClass, LearnerConfig, NoisePair], Hypothesis]] = {
    "erm01": _erm01,
    "erm-nc": _erm_nc,
    "mindis": _mindis,
    "realizable": _realizable,
}


def get_learner(name: str):
    try:
        return LEARNERS[name]
    except KeyError:
        raise SpecError(f"Unknown learner {name!r}; choose from {', '.join(LEARNERS)}") from None
