"""Shared plumbing for the lab's management commands."""

import csv
import logging

from django.core.management.base import BaseCommand, CommandError

from pac_lab.exceptions import PacLabError
from sampling.formats import build_labels
from sampling.labels import LabelPair

logger = logging.getLogger(__name__)


class LabCommand(BaseCommand):
    """
    Runs self.run(**options) and maps lab errors onto exit codes:
    2 for bad input, 3 for a tripped numerical guard.
    """

    def handle(self, *args, **options):
        try:
            return self.run(**options)
        except PacLabError as exc:
            logger.debug("%s failed", self.__class__.__module__, exc_info=True)
            raise CommandError(f"{type(exc).__name__}: {exc}", returncode=exc.exit_code) from exc

    def run(self, **options):
        raise NotImplementedError

    def write_pairs(self, pairs):
        width = max((len(str(key)) for key, _ in pairs), default=0)
        for key, value in pairs:
            self.stdout.write(f"{str(key).ljust(width)}  {format_value(value)}")

    def write_csv(self, header, rows, path=None):
        if path:
            with open(path, "w", newline="") as handle:
                _write_rows(handle, header, rows)
            self.stdout.write(self.style.SUCCESS(f"Wrote {len(rows)} rows to {path}"))
        else:
            _write_rows(self.stdout, header, rows)


def _write_rows(handle, header, rows):
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([[format_value(v) for v in row] for row in rows])


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def add_labels_arguments(parser):
    parser.add_argument(
        "--labels",
        default="ground-state",
        help="Label pair: orthogonal[:dim=N], ground-state, symmetric:eta=E, files:sigma0=PATH,sigma1=PATH.",
    )
    parser.add_argument("--sigma0", help="State file for σ₀ (with --sigma1, overrides --labels).")
    parser.add_argument("--sigma1", help="State file for σ₁.")


def labels_from_options(options) -> LabelPair:
    if options.get("sigma0") or options.get("sigma1"):
        if not (options.get("sigma0") and options.get("sigma1")):
            raise CommandError("--sigma0 and --sigma1 go together", returncode=2)
        return LabelPair.from_files(options["sigma0"], options["sigma1"])
    return build_labels(options["labels"])
