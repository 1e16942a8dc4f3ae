"""
One seeded learning run.

Usage:
  python manage.py learn --class thresholds:n=20 --distribution agnostic:concept=8,flip=0.2 --m 5000
"""

from analysis.risk import risk_report
from pac_lab.conf import lab_setting

from experiments.cli import LabCommand
from experiments.runner import ExperimentSetup, ExperimentSpec, train


class Command(LabCommand):
    help = "Draw a quantum sample, measure it, run one learner and report the exact risks."

    def add_arguments(self, parser):
        parser.add_argument("--scenario", choices=("agnostic", "realizable"), default="agnostic")
        parser.add_argument("--class", dest="class_spec", required=True, help="Class spec or class file.")
        parser.add_argument("--labels", default="ground-state")
        parser.add_argument("--distribution", required=True, help="Distribution spec or file.")
        parser.add_argument("--learner", help="erm01, erm-nc, mindis or realizable (default by scenario).")
        parser.add_argument("--m", type=int, required=True, help="Sample size.")
        parser.add_argument("--epsilon", type=float, default=0.1)
        parser.add_argument("--delta", type=float, default=0.05)
        parser.add_argument("--eta-bound", type=float, default=0.0)
        parser.add_argument("--seed", type=int, help="Trial seed (default DEFAULT_SEED).")

    def run(self, **options):
        data = {
            "scenario": options["scenario"],
            "concept_class": options["class_spec"],
            "labels": options["labels"],
            "distribution": options["distribution"],
            "sample_sizes": [options["m"]],
            "epsilons": [options["epsilon"]],
            "delta": options["delta"],
            "eta_bound": options["eta_bound"],
            "trials": 1,
        }
        if options.get("learner"):
            data["learner"] = options["learner"]
        spec = ExperimentSpec.from_data(data)
        setup = ExperimentSetup.from_spec(spec)
        seed = lab_setting("DEFAULT_SEED") if options.get("seed") is None else options["seed"]

        hypothesis = train(setup, options["m"], options["epsilon"], seed)
        report = risk_report(hypothesis, setup.concept_class, setup.mu, setup.labels, with_intermediate=True)
        member = hypothesis.member_index(setup.concept_class)
        self.write_pairs(
            [
                ("learner", spec.learner),
                ("seed", seed),
                ("hypothesis", "".join(str(int(b)) for b in hypothesis.labels)),
                ("member", "improper" if member is None else member),
                ("provenance", ", ".join(f"{k}={v}" for k, v in hypothesis.provenance.items())),
                ("eta0", setup.labels.noise.eta0),
                ("eta1", setup.labels.noise.eta1),
                ("true_risk", report.true_risk),
                ("optimal_class_risk", report.optimal_class_risk),
                ("excess_risk", report.excess),
                ("intermediate_risk", report.intermediate_risk),
            ]
        )
        status = self.style.SUCCESS if report.excess <= options["epsilon"] else self.style.WARNING
        self.stdout.write(status(f"excess risk {report.excess:.6g} vs epsilon {options['epsilon']:g}"))
