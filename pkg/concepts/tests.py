import numpy as np
from django.test import SimpleTestCase

from pac_lab.exceptions import EnumerationLimitExceeded, SpecError, UnknownInstance

from .classes import (
    Concept,
    ConceptClass,
    Domain,
    axis_rectangles,
    balls,
    evaluate,
    explicit,
    full_class,
    ground_state_noise,
    is_nontrivial,
    is_realizably_nontrivial,
    nontrivial_witness,
    realizable_witness,
    s_equivalence_classes,
    shatters,
    thresholds,
    vc_dimension_bruteforce,
)
from .formats import build_class, format_class_text, parse_class_text


def constants(n=4):
    domain = Domain.line(n)
    return explicit(domain, [[0] * n, [1] * n])


class EvaluateTests(SimpleTestCase):
    def test_constant_zero(self):
        domain = Domain.line(5)
        zero = Concept(domain, np.zeros(5))
        self.assertEqual(evaluate(zero, "3"), 0)

    def test_threshold_at_three(self):
        cls = thresholds(Domain.line(5))
        at_three = cls.member(2)
        self.assertEqual(evaluate(at_three, 4), 1)
        self.assertEqual(evaluate(at_three, 2), 0)

    def test_ground_state_region_member(self):
        cls = ground_state_noise(axis_rectangles(Domain.grid(3, 2)))
        inside = int(np.flatnonzero(cls.labels[1])[0])
        x = cls.domain.ids[inside]
        self.assertEqual(evaluate(cls.member(1), x), 1)
        self.assertEqual(evaluate(cls.member(0), x), 0)

    def test_unknown_instance(self):
        with self.assertRaises(UnknownInstance):
            evaluate(thresholds(Domain.line(3)).member(0), "99")


class ConceptClassTests(SimpleTestCase):
    def test_thresholds_count(self):
        cls = thresholds(Domain.line(50))
        self.assertEqual(len(cls), 51)
        self.assertTrue(cls.labels[0].all())
        self.assertFalse(cls.labels[-1].any())

    def test_members_must_be_distinct(self):
        with self.assertRaises(SpecError):
            explicit(Domain.line(2), [[0, 1], [0, 1]])

    def test_rectangles_include_empty(self):
        cls = axis_rectangles(Domain.grid(5, 2))
        self.assertEqual(len(cls), 15 * 15 + 1)
        self.assertFalse(cls.labels[0].any())

    def test_balls_are_distinct(self):
        cls = balls(Domain.grid(4, 2))
        self.assertEqual(len(np.unique(cls.labels, axis=0)), len(cls))


class ShatterTests(SimpleTestCase):
    def test_empty_subset(self):
        self.assertTrue(shatters(thresholds(Domain.line(3)), []))

    def test_thresholds_do_not_shatter_pairs(self):
        self.assertFalse(shatters(thresholds(Domain.line(10)), ["3", "7"]))

    def test_full_class_shatters(self):
        self.assertTrue(shatters(full_class(Domain.line(3)), ["1", "2", "3"]))

    def test_subset_guard(self):
        cls = thresholds(Domain.line(30))
        with self.assertRaises(EnumerationLimitExceeded):
            shatters(cls, cls.domain.ids[:26])


class VcDimensionTests(SimpleTestCase):
    def test_single_concept(self):
        self.assertEqual(vc_dimension_bruteforce(explicit(Domain.line(4), [[0, 1, 0, 1]])), 0)

    def test_thresholds(self):
        self.assertEqual(vc_dimension_bruteforce(thresholds(Domain.line(20))), 1)

    def test_rectangles_on_grid(self):
        self.assertEqual(vc_dimension_bruteforce(axis_rectangles(Domain.grid(5, 2))), 4)

    def test_full_class(self):
        for n in range(1, 5):
            self.assertEqual(vc_dimension_bruteforce(full_class(Domain.line(n))), n)

    def test_ground_state_class_matches_regions(self):
        regions = axis_rectangles(Domain.grid(4, 2))
        self.assertEqual(
            vc_dimension_bruteforce(ground_state_noise(regions)), vc_dimension_bruteforce(regions)
        )

    def test_adding_members_never_decreases(self):
        rng = np.random.default_rng(4)
        domain = Domain.line(6)
        for _ in range(30):
            rows = np.unique(rng.integers(0, 2, size=(8, 6)), axis=0)
            small = explicit(domain, rows[: max(1, len(rows) // 2)])
            self.assertLessEqual(vc_dimension_bruteforce(small), vc_dimension_bruteforce(explicit(domain, rows)))

    def test_enumeration_guard(self):
        with self.assertRaises(EnumerationLimitExceeded):
            vc_dimension_bruteforce(axis_rectangles(Domain.grid(5, 2)), max_subsets=100)


class EquivalenceClassTests(SimpleTestCase):
    def test_empty_sample(self):
        partition = s_equivalence_classes(thresholds(Domain.line(5)), [])
        self.assertEqual(len(partition), 1)
        self.assertEqual(partition.representatives[0], 0)

    def test_constants_split(self):
        self.assertEqual(len(s_equivalence_classes(constants(), ["2"])), 2)

    def test_thresholds_single_point(self):
        partition = s_equivalence_classes(thresholds(Domain.line(10)), ["4"])
        self.assertEqual(list(partition.representatives), [0, 4])
        self.assertEqual(list(partition.class_index), [0] * 4 + [1] * 7)

    def test_cells_agree_on_sample(self):
        cls = axis_rectangles(Domain.grid(3, 2))
        sample = ["0:0", "1:2", "2:1"]
        partition = s_equivalence_classes(cls, sample, vc_dim=4)
        columns = cls.domain.indices(sample)
        for member, cell in enumerate(partition.class_index):
            rep = partition.representatives[cell]
            self.assertTrue(np.array_equal(cls.labels[member, columns], cls.labels[rep, columns]))
            self.assertLessEqual(rep, member)

    def test_sauer_bound_on_thresholds(self):
        rng = np.random.default_rng(12)
        full = thresholds(Domain.line(15))
        for _ in range(50):
            keep = np.sort(rng.choice(len(full), size=int(rng.integers(1, len(full))), replace=False))
            cls = ConceptClass(full.domain, full.labels[keep])
            sample = rng.choice(full.domain.ids, size=int(rng.integers(1, 8)))
            self.assertLessEqual(len(s_equivalence_classes(cls, sample)), len(sample) + 1)


class PredicateTests(SimpleTestCase):
    def test_thresholds(self):
        cls = thresholds(Domain.line(4))
        self.assertTrue(is_nontrivial(cls))
        self.assertTrue(is_realizably_nontrivial(cls))
        f1, f2, x1, x2 = realizable_witness(cls)
        self.assertEqual(cls.labels[f1, x1], cls.labels[f2, x1])
        self.assertNotEqual(cls.labels[f1, x2], cls.labels[f2, x2])

    def test_constants_are_not_realizably_nontrivial(self):
        cls = constants()
        f, g, x = nontrivial_witness(cls)
        self.assertEqual((cls.labels[f, x], cls.labels[g, x]), (0, 1))
        self.assertFalse(is_realizably_nontrivial(cls))

    def test_single_member(self):
        self.assertFalse(is_nontrivial(explicit(Domain.line(2), [[1, 0]])))


class FormatTests(SimpleTestCase):
    def test_generator_specs(self):
        self.assertEqual(len(build_class("thresholds:n=50")), 51)
        self.assertEqual(len(build_class("axis-rectangles:side=5,dim=2")), 226)
        ground = build_class("ground-state:side=3,dim=2,regions=axis-rectangles")
        self.assertEqual(ground.generator, "ground-state")

    def test_unknown_spec(self):
        with self.assertRaises(SpecError):
            build_class("hyperplanes:dim=3")

    def test_explicit_file(self):
        text = "# two points\nclass explicit\ndomain a b c\n001\n110\n"
        cls = parse_class_text(text)
        self.assertEqual(cls.domain.ids, ("a", "b", "c"))
        self.assertTrue(np.array_equal(parse_class_text(format_class_text(cls)).labels, cls.labels))

    def test_generator_file(self):
        self.assertEqual(len(parse_class_text("class thresholds:n=4\n")), 5)
