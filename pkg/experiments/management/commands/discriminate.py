"""
Holevo-Helstrom measurement of a label pair.

Usage:
  python manage.py discriminate --labels ground-state
  python manage.py discriminate --sigma0 s0.txt --sigma1 s1.txt
"""

from qstate.literals import format_complex_literal
from qstate.operations import fidelity, helstrom_success_probability, success_probability

from experiments.cli import LabCommand, add_labels_arguments, labels_from_options


def _matrix_lines(name, matrix):
    rows = [" ".join(format_complex_literal(v) for v in row) for row in matrix]
    return [f"{name}:"] + [f"  {row}" for row in rows]


class Command(LabCommand):
    help = "Build the Holevo-Helstrom measurement for a label pair and report its error rates."

    def add_arguments(self, parser):
        add_labels_arguments(parser)

    def run(self, **options):
        labels = labels_from_options(options)
        povm = labels.holevo_helstrom
        noise = labels.noise
        self.write_pairs(
            [
                ("labels", labels.name),
                ("dim", labels.dim),
                ("trace_distance", labels.distance),
                ("fidelity", fidelity(labels.sigma0, labels.sigma1)),
                ("eta0", noise.eta0),
                ("eta1", noise.eta1),
                ("success_probability", success_probability(povm, labels.sigma0, labels.sigma1)),
                ("helstrom_bound", helstrom_success_probability(labels.sigma0, labels.sigma1)),
            ]
        )
        for line in _matrix_lines("E0", povm.e0) + _matrix_lines("E1", povm.e1):
            self.stdout.write(line)
