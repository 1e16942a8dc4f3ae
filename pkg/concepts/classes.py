"""
Finite concept classes stored as 0/1 label matrices.

A ConceptClass holds an (N, n) uint8 matrix: row k is member k, column j is
domain point j. Everything downstream (shattering, S-equivalence classes,
ERM, risks) works on that matrix with numpy, so member order is the only
tie-breaking rule anyone needs.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from pac_lab.conf import lab_setting, resolve
from pac_lab.exceptions import (
    EnumerationLimitExceeded,
    PreconditionViolation,
    SpecError,
    UnknownInstance,
)

logger = logging.getLogger(__name__)


def _read_only(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Domain:
    """Ordered, duplicate-free instance identifiers with optional coordinates."""

    ids: tuple
    coords: Optional[np.ndarray] = None
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        ids = tuple(self.ids)
        index = {str(x): k for k, x in enumerate(ids)}
        if len(index) != len(ids):
            raise SpecError("Domain has duplicate instance identifiers")
        if not ids:
            raise SpecError("Domain must contain at least one instance")
        object.__setattr__(self, "ids", ids)
        object.__setattr__(self, "_index", index)
        if self.coords is not None:
            coords = np.asarray(self.coords, dtype=float)
            if coords.ndim == 1:
                coords = coords[:, None]
            if coords.shape[0] != len(ids):
                raise SpecError(f"Got {coords.shape[0]} coordinate rows for {len(ids)} instances")
            object.__setattr__(self, "coords", _read_only(coords))

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, x) -> bool:
        return str(x) in self._index

    def index_of(self, x) -> int:
        try:
            return self._index[str(x)]
        except KeyError:
            raise UnknownInstance(f"Unknown instance {x!r}") from None

    def indices(self, instances: Iterable) -> np.ndarray:
        return np.array([self.index_of(x) for x in instances], dtype=np.intp)

    @classmethod
    def line(cls, n: int) -> "Domain":
        """Points 1..n on the real line."""
        if n < 1:
            raise SpecError(f"Line domain needs n >= 1, got {n}")
        return cls(tuple(str(i) for i in range(1, n + 1)), np.arange(1, n + 1, dtype=float))

    @classmethod
    def grid(cls, side: int, dim: int) -> "Domain":
        """The side^dim integer grid {0..side-1}^dim; ids look like '2:0'."""
        if side < 1 or dim < 1:
            raise SpecError(f"Grid needs side >= 1 and dim >= 1, got side={side}, dim={dim}")
        coords = np.array(list(itertools.product(range(side), repeat=dim)), dtype=float)
        ids = tuple(":".join(str(int(c)) for c in row) for row in coords)
        return cls(ids, coords)


@dataclass(frozen=True, eq=False)
class Concept:
    domain: Domain
    labels: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.uint8).reshape(-1)
        if labels.shape[0] != len(self.domain):
            raise SpecError(f"Concept labels {labels.shape[0]} points, domain has {len(self.domain)}")
        if np.any(labels > 1):
            raise SpecError("Concept labels must be bits")
        object.__setattr__(self, "labels", _read_only(labels))

    def __call__(self, x) -> int:
        return evaluate(self, x)

    def __eq__(self, other):
        return isinstance(other, Concept) and np.array_equal(self.labels, other.labels)

    def __hash__(self):
        return hash(self.labels.tobytes())

    def bitstring(self) -> str:
        return "".join(str(int(b)) for b in self.labels)


def evaluate(concept: Concept, x) -> int:
    return int(concept.labels[concept.domain.index_of(x)])


@dataclass(frozen=True, eq=False)
class ConceptClass:
    """A non-empty family of distinct concepts over one domain."""

    domain: Domain
    labels: np.ndarray
    generator: str = "explicit"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.uint8)
        if labels.ndim != 2 or labels.shape[1] != len(self.domain):
            raise SpecError(f"Label matrix shape {labels.shape} does not fit a domain of {len(self.domain)}")
        if labels.shape[0] == 0:
            raise SpecError("Concept class must be non-empty")
        if labels.shape[0] > lab_setting("MAX_CLASS_SIZE"):
            raise EnumerationLimitExceeded(f"Class has {labels.shape[0]} members, above MAX_CLASS_SIZE")
        if np.any(labels > 1):
            raise SpecError("Label matrix must contain only 0 and 1")
        if len(np.unique(labels, axis=0)) != labels.shape[0]:
            raise SpecError("Concept class members must be distinct")
        object.__setattr__(self, "labels", _read_only(labels))

    def __len__(self) -> int:
        return self.labels.shape[0]

    def member(self, k: int) -> Concept:
        return Concept(self.domain, self.labels[k])

    def members(self) -> list[Concept]:
        return [self.member(k) for k in range(len(self))]

    def index_of(self, concept: Concept) -> int:
        hits = np.flatnonzero((self.labels == concept.labels).all(axis=1))
        if hits.size == 0:
            raise SpecError("Concept is not a member of the class")
        return int(hits[0])

    def describe(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.generator}({args}) |F|={len(self)} |X|={len(self.domain)}"

    @classmethod
    def from_concepts(cls, concepts: Sequence[Concept], generator: str = "explicit") -> "ConceptClass":
        if not concepts:
            raise SpecError("Concept class must be non-empty")
        domain = concepts[0].domain
        return cls(domain, np.stack([c.labels for c in concepts]), generator)


def _dedupe_rows(labels: np.ndarray) -> np.ndarray:
    """Drop repeated rows, keeping first occurrences in their original order."""
    _, first = np.unique(labels, axis=0, return_index=True)
    return labels[np.sort(first)]


def explicit(domain: Domain, matrix) -> ConceptClass:
    return ConceptClass(domain, np.asarray(matrix, dtype=np.uint8), "explicit")


def thresholds(domain: Domain) -> ConceptClass:
    """
    Members t_0..t_n on an ordered domain: t_k(x_j) = 1 iff j >= k.

    t_0 is constant 1 and t_n is constant 0.
    """
    n = len(domain)
    k = np.arange(n + 1)[:, None]
    labels = (np.arange(n)[None, :] >= k).astype(np.uint8)
    return ConceptClass(domain, labels, "thresholds", {"n": n})


def _require_coords(domain: Domain) -> np.ndarray:
    if domain.coords is None:
        raise SpecError("Geometric generators need a domain with coordinates")
    return domain.coords


def axis_rectangles(domain: Domain) -> ConceptClass:
    """Indicators of axis-aligned boxes with corners on the domain's coordinate values, plus the empty set."""
    coords = _require_coords(domain)
    per_axis = []
    expected = 1
    for axis in range(coords.shape[1]):
        values = np.unique(coords[:, axis])
        lo, hi = np.triu_indices(len(values))
        expected *= len(lo)
        a, b = values[lo][:, None], values[hi][:, None]
        per_axis.append((coords[None, :, axis] >= a) & (coords[None, :, axis] <= b))
    if expected + 1 > lab_setting("MAX_CLASS_SIZE"):
        raise EnumerationLimitExceeded(f"Rectangle class would have {expected + 1} members")

    masks = per_axis[0]
    for inside in per_axis[1:]:
        masks = (masks[:, None, :] & inside[None, :, :]).reshape(-1, coords.shape[0])
    labels = np.vstack([np.zeros((1, len(domain)), dtype=np.uint8), masks.astype(np.uint8)])
    return ConceptClass(domain, _dedupe_rows(labels), "axis-rectangles", {"dim": coords.shape[1]})


def balls(domain: Domain) -> ConceptClass:
    """Indicators of closed Euclidean balls centred on domain points, plus the empty set."""
    coords = _require_coords(domain)
    sq = ((coords[:, None, :] - coords[None, :, :]) ** 2).sum(axis=2)
    rows = [np.zeros(len(domain), dtype=np.uint8)]
    for center in range(len(domain)):
        for radius_sq in np.unique(sq[center]):
            rows.append((sq[center] <= radius_sq).astype(np.uint8))
    labels = _dedupe_rows(np.array(rows))
    return ConceptClass(domain, labels, "balls", {"dim": coords.shape[1]})


def ground_state_noise(regions: ConceptClass) -> ConceptClass:
    """
    Induced binary class of the noisy ground-state family.

    Label 1 means the prepared state is the perturbed ground state. Noise
    type 0 never perturbs (constant 0); noise type 1 perturbs exactly on
    the region. Member 0 is the constant-0 concept; the remaining members
    are the non-empty region indicators in region-class order.
    """
    zero = np.zeros((1, len(regions.domain)), dtype=np.uint8)
    labels = _dedupe_rows(np.vstack([zero, regions.labels]))
    params = {"regions": regions.generator, **regions.params}
    return ConceptClass(regions.domain, labels, "ground-state", params)


def full_class(domain: Domain) -> ConceptClass:
    """All 2^n labelings, in binary counting order."""
    n = len(domain)
    if 2**n > lab_setting("MAX_CLASS_SIZE"):
        raise EnumerationLimitExceeded(f"Full class on {n} points exceeds MAX_CLASS_SIZE")
    codes = np.arange(2**n)[:, None]
    labels = ((codes >> np.arange(n)[None, :]) & 1).astype(np.uint8)
    return ConceptClass(domain, labels, "full", {"n": n})


def _projection_codes(labels: np.ndarray, columns: np.ndarray) -> np.ndarray:
    """Integer code of each member's restriction to each column tuple; columns has shape (B, k)."""
    weights = (1 << np.arange(columns.shape[1], dtype=np.int64))
    return labels[:, columns].astype(np.int64) @ weights


def _count_distinct_per_column(codes: np.ndarray) -> np.ndarray:
    ordered = np.sort(codes, axis=0)
    return 1 + (np.diff(ordered, axis=0) != 0).sum(axis=0)


def shatters(concept_class: ConceptClass, subset: Sequence, max_subset: Optional[int] = None) -> bool:
    """True iff every labeling of subset is realised by some member."""
    max_subset = resolve(max_subset, "MAX_SHATTER_SUBSET")
    if len(subset) > max_subset:
        raise EnumerationLimitExceeded(f"Subset of size {len(subset)} is above the limit {max_subset}")
    if len(subset) == 0:
        return True
    columns = concept_class.domain.indices(subset)[None, :]
    distinct = _count_distinct_per_column(_projection_codes(concept_class.labels, columns))
    return bool(distinct[0] == 2 ** len(subset))


def _any_shattered(labels: np.ndarray, n_points: int, k: int) -> Optional[tuple]:
    batch = max(1, 2**22 // max(1, labels.shape[0] * k))
    combos = itertools.combinations(range(n_points), k)
    while True:
        chunk = list(itertools.islice(combos, batch))
        if not chunk:
            return None
        columns = np.array(chunk, dtype=np.intp)
        distinct = _count_distinct_per_column(_projection_codes(labels, columns))
        hits = np.flatnonzero(distinct == 2**k)
        if hits.size:
            return chunk[hits[0]]


def shattered_subset(concept_class: ConceptClass, max_subsets: Optional[int] = None) -> tuple:
    """A largest shattered subset, as domain indices (lexicographically first of its size)."""
    max_subsets = resolve(max_subsets, "MAX_VC_SUBSETS")
    labels = concept_class.labels
    n_points = len(concept_class.domain)
    largest_possible = min(n_points, int(math.floor(math.log2(len(concept_class)))))
    best: tuple = ()
    enumerated = 0
    for k in range(1, largest_possible + 1):
        enumerated += math.comb(n_points, k)
        if enumerated > max_subsets:
            raise EnumerationLimitExceeded(
                f"VC search would enumerate {enumerated} subsets (limit {max_subsets})"
            )
        found = _any_shattered(labels, n_points, k)
        if found is None:
            break
        best = found
    logger.debug("shattered_subset: %s -> size %d", concept_class.describe(), len(best))
    return best


def vc_dimension_bruteforce(concept_class: ConceptClass, max_subsets: Optional[int] = None) -> int:
    return len(shattered_subset(concept_class, max_subsets))


@dataclass(frozen=True, eq=False)
class SamplePartition:
    """
    S-equivalence classes of a concept class.

    representatives[c] is the lowest member index of cell c (cells ordered by
    that index); class_index[k] is the cell of member k.
    """

    representatives: np.ndarray
    class_index: np.ndarray

    def __len__(self) -> int:
        return len(self.representatives)

    def cell_members(self, cell: int) -> np.ndarray:
        return np.flatnonzero(self.class_index == cell)


def s_equivalence_classes(
    concept_class: ConceptClass, sample_instances: Sequence, vc_dim: Optional[int] = None
) -> SamplePartition:
    columns = concept_class.domain.indices(sample_instances)
    return partition_by_columns(concept_class.labels, columns, vc_dim)


def partition_by_columns(labels: np.ndarray, columns: np.ndarray, vc_dim: Optional[int] = None) -> SamplePartition:
    """Index-level S-equivalence partition; the learners call this directly."""
    n_members = labels.shape[0]
    if len(columns) == 0:
        return SamplePartition(np.array([0]), np.zeros(n_members, dtype=np.intp))
    _, first, inverse = np.unique(labels[:, columns], axis=0, return_index=True, return_inverse=True)
    inverse = np.asarray(inverse).reshape(-1)
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    partition = SamplePartition(first[order], rank[inverse])
    if vc_dim is not None:
        limit = len(columns) ** vc_dim + 1
        if len(partition) > limit:
            raise PreconditionViolation(
                f"{len(partition)} S-equivalence classes exceed |S|^d + 1 = {limit}; is d={vc_dim} right?"
            )
    return partition


def nontrivial_witness(concept_class: ConceptClass) -> Optional[tuple[int, int, int]]:
    """(f, g, x) member/point indices with f(x) = 0 and g(x) = 1, or None."""
    labels = concept_class.labels
    mixed = np.flatnonzero(labels.min(axis=0) != labels.max(axis=0))
    if mixed.size == 0:
        return None
    x = int(mixed[0])
    f = int(np.flatnonzero(labels[:, x] == 0)[0])
    g = int(np.flatnonzero(labels[:, x] == 1)[0])
    return f, g, x


def is_nontrivial(concept_class: ConceptClass) -> bool:
    """Two members disagree at some point."""
    return nontrivial_witness(concept_class) is not None


def realizable_witness(concept_class: ConceptClass) -> Optional[tuple[int, int, int, int]]:
    """(f1, f2, x1, x2) with f1(x1) = f2(x1) and f1(x2) != f2(x2), or None."""
    labels = concept_class.labels
    for i in range(len(labels) - 1):
        diff = labels[i + 1:] != labels[i]
        ok = np.flatnonzero(diff.any(axis=1) & (~diff).any(axis=1))
        if ok.size:
            j = i + 1 + int(ok[0])
            x1 = int(np.flatnonzero(labels[i] == labels[j])[0])
            x2 = int(np.flatnonzero(labels[i] != labels[j])[0])
            return i, j, x1, x2
    return None


def is_realizably_nontrivial(concept_class: ConceptClass) -> bool:
    """Two members agree at one point and disagree at another."""
    return realizable_witness(concept_class) is not None

