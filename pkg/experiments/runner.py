"""
Seeded Monte Carlo runs over a grid of sample sizes.

One trial: draw m classical-quantum examples from μ, measure every label
with the Holevo-Helstrom measurement, run the learner on the measured
sample and score the hypothesis by its exact excess risk. The seed of
trial t at grid point g is trial_seed(master_seed, g, t), so trials can run
in any order or process.
"""

import csv
import io
import json
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Optional, Union

from joblib import Parallel, delayed

from analysis.bounds import agnostic_sample_bound, realizable_sample_bound
from analysis.risk import optimal_class_risk, true_risk
from concepts.classes import ConceptClass, vc_dimension_bruteforce
from concepts.formats import build_class
from learners.base import Hypothesis, LearnerConfig
from learners.registry import get_learner
from pac_lab.conf import resolve
from pac_lab.exceptions import SpecError
from pac_lab.seeding import trial_seed
from sampling.distributions import LabeledDistribution, draw_quantum_sample, measure_labels
from sampling.formats import build_distribution, build_labels
from sampling.labels import LabelPair

from .serializers import ExperimentSpecSerializer

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("m", "trial", "seed", "excess_risk", "elapsed_ms")


@dataclass(frozen=True)
class ExperimentSpec:
    scenario: str
    concept_class: str
    labels: str
    distribution: str
    learner: str
    sample_sizes: tuple
    epsilons: tuple
    delta: float
    eta_bound: float
    trials: int
    master_seed: int
    m_from_bound: bool = False

    @classmethod
    def from_data(cls, data: dict) -> "ExperimentSpec":
        serializer = ExperimentSpecSerializer(data=data)
        if not serializer.is_valid():
            raise SpecError(f"Invalid experiment config: {json.dumps(serializer.errors, sort_keys=True)}")
        values = dict(serializer.validated_data)
        values["sample_sizes"] = tuple(sorted(set(values["sample_sizes"])))
        values["epsilons"] = tuple(values["epsilons"])
        return cls(**values)

    @classmethod
    def from_file(cls, path, **overrides) -> "ExperimentSpec":
        """Read a JSON config; keyword overrides that are not None replace file values."""
        try:
            data = json.loads(Path(path).read_text())
        except FileNotFoundError:
            raise SpecError(f"Config file {path} does not exist") from None
        except json.JSONDecodeError as exc:
            raise SpecError(f"Config file {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise SpecError(f"Config file {path} must hold a JSON object")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls.from_data(data)

    def as_dict(self) -> dict:
        data = asdict(self)
        data["sample_sizes"] = list(self.sample_sizes)
        data["epsilons"] = list(self.epsilons)
        return data


@dataclass(frozen=True)
class GridPoint:
    m: int
    epsilon: float


@dataclass(frozen=True, eq=False)
class ExperimentSetup:
    """Everything a trial needs, resolved once from an ExperimentSpec."""

    spec: ExperimentSpec
    concept_class: ConceptClass
    labels: LabelPair
    mu: LabeledDistribution
    learner: Callable
    optimal_risk: float
    vc_dim: int

    @classmethod
    def from_spec(cls, spec: ExperimentSpec) -> "ExperimentSetup":
        concept_class = build_class(spec.concept_class)
        labels = build_labels(spec.labels)
        mu = build_distribution(spec.distribution, concept_class, labels)
        return cls(
            spec=spec,
            concept_class=concept_class,
            labels=labels,
            mu=mu,
            learner=get_learner(spec.learner),
            optimal_risk=optimal_class_risk(concept_class, mu, labels),
            vc_dim=vc_dimension_bruteforce(concept_class),
        )

    def config(self, epsilon: float) -> LearnerConfig:
        return LearnerConfig(epsilon, self.spec.delta, self.spec.eta_bound)

    def grid(self) -> list[GridPoint]:
        spec = self.spec
        if not spec.m_from_bound:
            return [GridPoint(m, spec.epsilons[0]) for m in spec.sample_sizes]
        points = []
        for eps in spec.epsilons:
            if spec.scenario == "agnostic":
                report = agnostic_sample_bound(self.vc_dim, self.config(eps), self.labels)
            else:
                report = realizable_sample_bound(self.vc_dim, self.config(eps))
            points.append(GridPoint(report.m_sufficient, eps))
        return points


@dataclass(frozen=True)
class TrialRecord:
    m: int
    trial: int
    seed: int
    excess_risk: float
    elapsed_ms: float

    def sort_key(self):
        return self.m, self.trial, self.seed


@dataclass(frozen=True)
class TrialFailure:
    m: int
    trial: int
    seed: int
    error: str


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    grid: list
    records: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    def write_csv(self, path) -> None:
        write_records(self.records, path)


def train(setup: ExperimentSetup, m: int, epsilon: float, seed: int) -> Hypothesis:
    """Draw, measure and learn; the seed keys both the sampling and the measurement stream."""
    labels = setup.labels
    quantum = draw_quantum_sample(setup.mu, m, seed)
    measured = measure_labels(quantum, labels.holevo_helstrom, labels, seed)
    return setup.learner(measured, setup.concept_class, setup.config(epsilon), labels.noise)


def run_trial(setup: ExperimentSetup, point: GridPoint, trial: int, seed: int, record_timing: bool = True):
    """Run one seeded trial; errors come back as a TrialFailure."""
    started = time.perf_counter()
    try:
        hypothesis = train(setup, point.m, point.epsilon, seed)
        excess = true_risk(hypothesis, setup.mu, setup.labels) - setup.optimal_risk
    except Exception as exc:
        return TrialFailure(point.m, trial, seed, f"{type(exc).__name__}: {exc}")
    elapsed = (time.perf_counter() - started) * 1000.0 if record_timing else 0.0
    return TrialRecord(point.m, trial, seed, float(excess), float(elapsed))


def run_experiment(
    spec: ExperimentSpec, n_jobs: Optional[int] = None, record_timing: Optional[bool] = None
) -> ExperimentResult:
    """
    All trials at every grid point, in parallel when n_jobs > 1.

    Records come back sorted by (m, trial), so serial and parallel runs
    write the same file.
    """
    setup = ExperimentSetup.from_spec(spec)
    grid = setup.grid()
    n_jobs = resolve(n_jobs, "N_JOBS")
    record_timing = resolve(record_timing, "RECORD_TIMING")
    logger.info(
        "run_experiment: %s, %d grid points x %d trials, learner=%s, n_jobs=%s",
        spec.scenario, len(grid), spec.trials, spec.learner, n_jobs,
    )
    jobs = (
        delayed(run_trial)(setup, point, t, trial_seed(spec.master_seed, g, t), record_timing)
        for g, point in enumerate(grid)
        for t in range(spec.trials)
    )
    outcomes = Parallel(n_jobs=n_jobs, prefer="threads")(jobs)

    result = ExperimentResult(spec, grid)
    for outcome in outcomes:
        if isinstance(outcome, TrialFailure):
            logger.warning("Trial %d at m=%d (seed %d) failed: %s", outcome.trial, outcome.m, outcome.seed, outcome.error)
            result.failures.append(outcome)
        else:
            result.records.append(outcome)
    result.records.sort(key=TrialRecord.sort_key)
    logger.info("run_experiment: %d records, %d failures", len(result.records), len(result.failures))
    return result


def format_records(records) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in sorted(records, key=TrialRecord.sort_key):
        writer.writerow([r.m, r.trial, r.seed, repr(r.excess_risk), repr(r.elapsed_ms)])
    return buffer.getvalue()


def write_records(records, path) -> None:
    Path(path).write_text(format_records(records))


def parse_records(text: str) -> list[TrialRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != CSV_COLUMNS:
        raise SpecError(f"Unexpected CSV header {header!r}; expected {','.join(CSV_COLUMNS)}")
    records = []
    for number, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            m, trial, seed, excess, elapsed = row
            records.append(TrialRecord(int(m), int(trial), int(seed), float(excess), float(elapsed)))
        except ValueError as exc:
            raise SpecError(f"CSV line {number}: {exc}") from exc
    return records


def read_records(path: Union[str, Path]) -> list[TrialRecord]:
    return parse_records(Path(path).read_text())
