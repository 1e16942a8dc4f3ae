"""
Seeded Monte Carlo grid from a JSON config.

Usage:
  python manage.py experiment --config sweep.json --out records.csv [--seed N] [--trials T] [--n-jobs J]
"""

from experiments.cli import LabCommand
from experiments.runner import ExperimentSpec, format_records, run_experiment
from experiments.summary import summarize


class Command(LabCommand):
    help = "Run an experiment grid and write one CSV row per trial."

    def add_arguments(self, parser):
        parser.add_argument("--config", required=True, help="JSON experiment config.")
        parser.add_argument("--seed", type=int, help="Master seed (overrides the config).")
        parser.add_argument("--trials", type=int, help="Trials per grid point (overrides the config).")
        parser.add_argument("--out", help="CSV path (stdout when omitted).")
        parser.add_argument("--n-jobs", type=int, help="Parallel workers (default N_JOBS).")
        parser.add_argument("--no-timing", action="store_true", help="Write elapsed_ms as 0.0.")

    def run(self, **options):
        spec = ExperimentSpec.from_file(options["config"], master_seed=options.get("seed"), trials=options.get("trials"))
        result = run_experiment(
            spec,
            n_jobs=options.get("n_jobs"),
            record_timing=False if options["no_timing"] else None,
        )
        if options.get("out"):
            result.write_csv(options["out"])
            self.stdout.write(self.style.SUCCESS(f"Wrote {len(result.records)} records to {options['out']}"))
        else:
            self.stdout.write(format_records(result.records), ending="")

        if result.failures:
            self.stderr.write(self.style.WARNING(f"{len(result.failures)} trials failed; see the log"))
        if result.records and options.get("out"):
            summary = summarize(result.records, spec.epsilons, spec.delta)
            for row in summary.table():
                self.stdout.write("  ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}" for k, v in row.items()))
            for eps, m in summary.minimal_m.items():
                self.stdout.write(f"minimal m at epsilon={eps:g}: {'not reached' if m is None else m}")
            if summary.slope is not None:
                self.stdout.write(self.style.SUCCESS(f"log-log slope of minimal m vs epsilon: {summary.slope:.3f}"))
