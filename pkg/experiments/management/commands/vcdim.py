from concepts.classes import shattered_subset
from concepts.formats import build_class

from experiments.cli import LabCommand


class Command(LabCommand):
    help = "Brute-force VC dimension of a concept class, with a largest shattered subset."

    def add_arguments(self, parser):
        parser.add_argument("--class", dest="class_spec", required=True, help="Class spec or class file.")
        parser.add_argument("--max-subsets", type=int, help="Enumeration limit (default MAX_VC_SUBSETS).")

    def run(self, **options):
        concept_class = build_class(options["class_spec"])
        subset = shattered_subset(concept_class, options.get("max_subsets"))
        ids = [concept_class.domain.ids[i] for i in subset]
        self.write_pairs(
            [
                ("class", concept_class.describe()),
                ("members", len(concept_class)),
                ("points", len(concept_class.domain)),
                ("vc_dimension", len(subset)),
                ("shattered", " ".join(str(x) for x in ids)),
            ]
        )
