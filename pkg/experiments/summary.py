import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from pac_lab.exceptions import PreconditionViolation

logger = logging.getLogger(__name__)

QUANTILES = (0.5, 0.9)


@dataclass(frozen=True)
class SizeSummary:
    m: int
    trials: int
    mean_excess: float
    median_excess: float
    q90_excess: float
    failure_frequency: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ExperimentSummary:
    delta: float
    rows: list
    minimal_m: dict
    slope: Optional[float]

    def table(self) -> list[dict]:
        out = []
        for row in self.rows:
            entry = {
                "m": row.m,
                "trials": row.trials,
                "mean": row.mean_excess,
                "median": row.median_excess,
                "q90": row.q90_excess,
            }
            entry.update({f"fail@{eps:g}": freq for eps, freq in row.failure_frequency.items()})
            out.append(entry)
        return out


def summarize(records: Sequence, epsilons: Sequence[float], delta: float) -> ExperimentSummary:
    """
    Per-m excess-risk statistics and the smallest m with failure frequency ≤ δ.

    A failure at ε is a trial with excess risk above ε. The slope is the
    least-squares fit of log m*(ε) against log ε. An ε already met at the
    smallest m only bounds m*(ε) from above and is left out of the fit, as
    is one never met. The slope is None with fewer than two ε left.
    """
    if not records:
        raise PreconditionViolation("Nothing to summarize: no records")
    by_m: dict[int, list[float]] = {}
    for r in records:
        by_m.setdefault(r.m, []).append(r.excess_risk)

    rows = []
    for m in sorted(by_m):
        excess = np.asarray(by_m[m])
        median, q90 = np.quantile(excess, QUANTILES)
        rows.append(
            SizeSummary(
                m=m,
                trials=len(excess),
                mean_excess=float(excess.mean()),
                median_excess=float(median),
                q90_excess=float(q90),
                failure_frequency={eps: float(np.mean(excess > eps)) for eps in epsilons},
            )
        )

    minimal = {}
    for eps in epsilons:
        reached = [row.m for row in rows if row.failure_frequency[eps] <= delta]
        minimal[eps] = min(reached) if reached else None

    smallest = rows[0].m
    fitted = [(eps, m) for eps, m in minimal.items() if m is not None and m > smallest]
    slope = None
    if len(fitted) >= 2:
        x = np.log([eps for eps, _ in fitted])
        y = np.log([m for _, m in fitted])
        slope = float(np.polyfit(x, y, 1)[0])
    else:
        logger.info("summarize: %d of %d epsilons usable for the fit at delta=%g; no slope", len(fitted), len(epsilons), delta)
    return ExperimentSummary(delta, rows, minimal, None if slope is None or math.isnan(slope) else slope)
