"""
Concept-class specs and files.

CLI spec: "<generator>:key=value,key=value", e.g. "thresholds:n=50",
"axis-rectangles:side=5,dim=2", "balls:side=4,dim=2",
"ground-state:side=4,dim=2,regions=axis-rectangles", "full:n=3".
Anything that is not a known generator name is read as a class file.

Class file: either one line "class <spec>" naming a generator, or
"class explicit", a "domain id1 id2 ..." line, then one 0/1 string per
member (columns in domain order). "#" starts a comment line.
"""

from pathlib import Path

import numpy as np

from pac_lab.exceptions import SpecError

from .classes import (
    ConceptClass,
    Domain,
    axis_rectangles,
    balls,
    explicit,
    full_class,
    ground_state_noise,
    thresholds,
)


def parse_named_spec(text: str) -> tuple[str, dict]:
    """Split "name:k=v,k=v" into (name, {k: v}) with string values."""
    name, _, rest = text.strip().partition(":")
    params = {}
    for item in filter(None, (p.strip() for p in rest.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise SpecError(f"Malformed parameter {item!r} in {text!r}")
        params[key.strip()] = value.strip()
    return name.strip(), params


def _int_param(params: dict, key: str, default=None) -> int:
    if key not in params:
        if default is None:
            raise SpecError(f"Missing parameter {key!r}")
        return default
    try:
        return int(params[key])
    except ValueError as exc:
        raise SpecError(f"Parameter {key}={params[key]!r} is not an integer") from exc


def _geometric(name: str, params: dict) -> ConceptClass:
    domain = Domain.grid(_int_param(params, "side"), _int_param(params, "dim", 2))
    return axis_rectangles(domain) if name == "axis-rectangles" else balls(domain)


def _build_thresholds(params):
    return thresholds(Domain.line(_int_param(params, "n")))


def _build_geometric(name):
    return lambda params: _geometric(name, params)


def _build_ground_state(params):
    regions = params.get("regions", "axis-rectangles")
    if regions not in ("axis-rectangles", "balls"):
        raise SpecError(f"Unknown region family {regions!r}")
    return ground_state_noise(_geometric(regions, params))


def _build_full(params):
    return full_class(Domain.line(_int_param(params, "n")))


GENERATORS = {
    "thresholds": _build_thresholds,
    "axis-rectangles": _build_geometric("axis-rectangles"),
    "balls": _build_geometric("balls"),
    "ground-state": _build_ground_state,
    "full": _build_full,
}


def build_class(spec: str) -> ConceptClass:
    """Resolve a CLI class spec or a class file path."""
    name, params = parse_named_spec(spec)
    if name in GENERATORS:
        return GENERATORS[name](params)
    path = Path(spec)
    if path.is_file():
        return load_class(path)
    raise SpecError(f"Unknown concept class {spec!r}")


def parse_class_text(text: str) -> ConceptClass:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("class"):
        raise SpecError("Class file must start with a 'class' line")
    spec = lines[0][len("class"):].strip()
    if spec != "explicit":
        if not spec:
            raise SpecError("Class file 'class' line names no generator")
        return build_class(spec)
    if len(lines) < 3 or not lines[1].startswith("domain"):
        raise SpecError("Explicit class file needs a 'domain' line and at least one member row")
    domain = Domain(tuple(lines[1].split()[1:]))
    rows = []
    for line in lines[2:]:
        bits = line.replace(" ", "")
        if len(bits) != len(domain) or set(bits) - {"0", "1"}:
            raise SpecError(f"Member row {line!r} is not a {len(domain)}-bit string")
        rows.append([int(b) for b in bits])
    return explicit(domain, np.array(rows, dtype=np.uint8))


def load_class(path) -> ConceptClass:
    return parse_class_text(Path(path).read_text())


def format_class_text(concept_class: ConceptClass) -> str:
    lines = ["class explicit", "domain " + " ".join(str(x) for x in concept_class.domain.ids)]
    lines += ["".join(str(int(b)) for b in row) for row in concept_class.labels]
    return "\n".join(lines) + "\n"
