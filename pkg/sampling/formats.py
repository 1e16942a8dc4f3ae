"""
Label-pair and distribution specs, and distribution files.

Label specs: "orthogonal[:dim=N]", "ground-state", "symmetric:eta=E",
"files:sigma0=PATH,sigma1=PATH".

Distribution specs (resolved against a concept class and a label pair):
"realizable:concept=K", "agnostic:concept=K,flip=P",
"hard-pair:epsilon=E,sign=+|-", "hard-family:epsilon=E,a=0101",
"realizable-pair:epsilon=E,target=1|2", "realizable-family:epsilon=E,a=0101",
or a path to a distribution file with lines "instance-id, bit, probability".
"""

from pathlib import Path

from concepts.classes import ConceptClass, Domain, nontrivial_witness, realizable_witness, shattered_subset
from concepts.formats import parse_named_spec
from pac_lab.exceptions import InvalidDistribution, PreconditionViolation, SpecError

from .distributions import LabeledDistribution
from .hard_instances import (
    agnostic_hard_family,
    agnostic_hard_pair,
    realizable_hard_family,
    realizable_hard_pair,
)
from .labels import LabelPair


def _float(params: dict, key: str) -> float:
    try:
        return float(params[key])
    except KeyError:
        raise SpecError(f"Missing parameter {key!r}") from None
    except ValueError as exc:
        raise SpecError(f"Parameter {key}={params[key]!r} is not a number") from exc


def _int(params: dict, key: str, default=None) -> int:
    if key not in params and default is not None:
        return default
    return int(_float(params, key))


def build_labels(spec: str) -> LabelPair:
    name, params = parse_named_spec(spec)
    if name == "orthogonal":
        return LabelPair.orthogonal(_int(params, "dim", 2))
    if name == "ground-state":
        return LabelPair.example_ground_state()
    if name == "symmetric":
        return LabelPair.symmetric_noise(_float(params, "eta"))
    if name == "files":
        if "sigma0" not in params or "sigma1" not in params:
            raise SpecError("files label spec needs sigma0=PATH,sigma1=PATH")
        return LabelPair.from_files(params["sigma0"], params["sigma1"])
    raise SpecError(f"Unknown label pair {spec!r}")


def _member(concept_class: ConceptClass, params: dict):
    k = _int(params, "concept")
    if not 0 <= k < len(concept_class):
        raise SpecError(f"Concept index {k} out of range for a class of {len(concept_class)}")
    return concept_class.member(k)


def _hard_pair(concept_class, labels, params):
    witness = nontrivial_witness(concept_class)
    if witness is None:
        raise PreconditionViolation("hard-pair needs a non-trivial class")
    f, g, x = witness
    plus, minus = agnostic_hard_pair(
        concept_class.member(f), concept_class.member(g), concept_class.domain.ids[x],
        _float(params, "epsilon"), labels,
    )
    return minus if params.get("sign", "+") == "-" else plus


def _shattered_ids(concept_class, size):
    subset = shattered_subset(concept_class)
    if len(subset) < size:
        raise PreconditionViolation(f"Class shatters at most {len(subset)} points, {size} needed")
    return [concept_class.domain.ids[i] for i in subset[:size]]


def _hard_family(concept_class, labels, params):
    a = params.get("a", "")
    shattered = _shattered_ids(concept_class, len(a))
    return agnostic_hard_family(concept_class.domain, shattered, a, _float(params, "epsilon"), labels)


def _realizable_pair(concept_class, labels, params):
    witness = realizable_witness(concept_class)
    if witness is None:
        raise PreconditionViolation("realizable-pair needs two members agreeing at one point and differing at another")
    f1, f2, x1, x2 = witness
    target = f2 if params.get("target", "1") == "2" else f1
    ids = concept_class.domain.ids
    return realizable_hard_pair(concept_class.member(target), ids[x1], ids[x2], _float(params, "epsilon"), labels)


def _realizable_family(concept_class, labels, params):
    a = params.get("a", "")
    points = _shattered_ids(concept_class, len(a) + 1)
    return realizable_hard_family(
        concept_class.domain, points[0], points[1:], a, _float(params, "epsilon"), labels
    )


def _realizable(concept_class, labels, params):
    domain = concept_class.domain
    return LabeledDistribution.realizable(LabeledDistribution.uniform_marginal(domain), _member(concept_class, params))


def _agnostic(concept_class, labels, params):
    domain = concept_class.domain
    return LabeledDistribution.agnostic(
        LabeledDistribution.uniform_marginal(domain), _member(concept_class, params), _float(params, "flip")
    )


DISTRIBUTIONS = {
    "realizable": _realizable,
    "agnostic": _agnostic,
    "hard-pair": _hard_pair,
    "hard-family": _hard_family,
    "realizable-pair": _realizable_pair,
    "realizable-family": _realizable_family,
}


def build_distribution(spec: str, concept_class: ConceptClass, labels: LabelPair) -> LabeledDistribution:
    name, params = parse_named_spec(spec)
    if name in DISTRIBUTIONS:
        return DISTRIBUTIONS[name](concept_class, labels, params)
    path = Path(spec)
    if path.is_file():
        return load_distribution(path, concept_class.domain)
    raise SpecError(f"Unknown distribution {spec!r}")


def parse_distribution_text(text: str, domain: Domain) -> LabeledDistribution:
    rows = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise InvalidDistribution(f"Line {number}: expected 'instance-id, bit, probability', got {raw!r}")
        try:
            rows.append((parts[0], int(parts[1]), float(parts[2])))
        except ValueError as exc:
            raise InvalidDistribution(f"Line {number}: {exc}") from exc
    return LabeledDistribution.from_rows(domain, rows)


def load_distribution(path, domain: Domain) -> LabeledDistribution:
    return parse_distribution_text(Path(path).read_text(), domain)


def format_distribution_text(mu: LabeledDistribution) -> str:
    return "".join(f"{x}, {b}, {p!r}\n" for x, b, p in mu.to_rows())
