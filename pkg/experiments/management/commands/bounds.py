"""
Sufficient sample sizes for both regimes.

Usage:
  python manage.py bounds --d 4 --epsilon 0.1 --delta 0.05 --labels orthogonal
"""

from analysis.bounds import agnostic_sample_bound, realizable_sample_bound
from learners.base import LearnerConfig

from experiments.cli import LabCommand, add_labels_arguments, labels_from_options


class Command(LabCommand):
    help = "Print the agnostic and realizable sample-size bounds with every constant."

    def add_arguments(self, parser):
        parser.add_argument("--d", type=int, required=True, help="VC dimension.")
        parser.add_argument("--epsilon", type=float, required=True)
        parser.add_argument("--delta", type=float, required=True)
        parser.add_argument("--eta-bound", type=float, default=0.0, help="Noise-rate bound for the realizable learner.")
        parser.add_argument("--regime", choices=("agnostic", "realizable", "both"), default="both")
        add_labels_arguments(parser)

    def run(self, **options):
        config = LearnerConfig(options["epsilon"], options["delta"], options["eta_bound"])
        reports = []
        if options["regime"] in ("agnostic", "both"):
            reports.append(agnostic_sample_bound(options["d"], config, labels_from_options(options)))
        if options["regime"] in ("realizable", "both"):
            reports.append(realizable_sample_bound(options["d"], config))
        for report in reports:
            self.stdout.write(self.style.SUCCESS(f"[{report.name}]"))
            self.write_pairs(report.rows())
