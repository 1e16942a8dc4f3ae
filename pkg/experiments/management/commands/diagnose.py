"""
Lower and upper sample-size figures over a grid of (epsilon, delta).

Usage:
  python manage.py diagnose --d 4 --epsilons 0.01 0.02 0.04 --deltas 0.05 --out diagnose.csv
"""

import logging

from analysis.bounds import agnostic_sample_bound, realizable_sample_bound
from analysis.diagnostics import agnostic_pair_lower_bound, mutual_info_single_example, vc_lower_bound
from learners.base import LearnerConfig
from pac_lab.conf import lab_setting
from pac_lab.exceptions import UnsupportedRegime

from experiments.cli import LabCommand, add_labels_arguments, labels_from_options

logger = logging.getLogger(__name__)

COLUMNS = (
    "epsilon",
    "delta",
    "d",
    "m_lower_pair",
    "m_lower_vc",
    "m_upper_agnostic",
    "m_upper_realizable",
    "I_exact_bits",
    "I_closed_bits",
)


def diagnose_row(d, epsilon, delta, labels, eta_bound=0.0):
    """One CSV row; the information columns stay empty for mixed labels."""
    config = LearnerConfig(epsilon, delta, eta_bound)
    try:
        # I(A:B₁) does not depend on d, so the explicit state is built at the smaller size.
        info = mutual_info_single_example(min(d, lab_setting("MAX_MUTUAL_INFO_D")), epsilon, labels)
        m_vc = vc_lower_bound(d, epsilon, delta, labels)
        exact, closed = info.exact_bits, info.closed_form_bits
    except UnsupportedRegime as exc:
        logger.warning("diagnose: %s", exc)
        m_vc = exact = closed = None
    return (
        epsilon,
        delta,
        d,
        agnostic_pair_lower_bound(epsilon, delta, labels).m_min,
        m_vc,
        agnostic_sample_bound(d, config, labels).m_sufficient,
        realizable_sample_bound(d, config).m_sufficient,
        exact,
        closed,
    )


class Command(LabCommand):
    help = "Tabulate lower bounds, upper bounds and single-example information as CSV."

    def add_arguments(self, parser):
        parser.add_argument("--d", type=int, default=2, help="VC dimension of the shattered family.")
        parser.add_argument("--epsilons", type=float, nargs="+", default=[0.01, 0.02, 0.04, 0.08])
        parser.add_argument("--deltas", type=float, nargs="+", default=[0.05])
        parser.add_argument("--eta-bound", type=float, default=0.0)
        parser.add_argument("--out", help="CSV path (stdout when omitted).")
        add_labels_arguments(parser)

    def run(self, **options):
        labels = labels_from_options(options)
        rows = [
            diagnose_row(options["d"], eps, delta, labels, options["eta_bound"])
            for eps in options["epsilons"]
            for delta in options["deltas"]
        ]
        self.write_csv(COLUMNS, rows, options.get("out"))
