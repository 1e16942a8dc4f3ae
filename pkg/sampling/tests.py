import math
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from concepts.classes import Domain, explicit, thresholds
from pac_lab.exceptions import InvalidDistribution, PreconditionViolation, SpecError
from qstate.states import TwoOutcomePovm

from .distributions import (
    ClassicalSample,
    LabeledDistribution,
    draw_quantum_sample,
    induced_nu,
    measure_labels,
)
from .formats import build_distribution, build_labels, format_distribution_text, parse_distribution_text
from .hard_instances import (
    agnostic_hard_family,
    agnostic_hard_pair,
    realizable_hard_distribution,
)
from .labels import LabelPair

GROUND_ETA = (1 - math.sqrt(2) / 2) / 2


def two_point_domain():
    return Domain(("x1", "x2"))


class LabelPairTests(SimpleTestCase):
    def test_orthogonal(self):
        pair = LabelPair.orthogonal()
        self.assertAlmostEqual(pair.distance, 2.0)
        self.assertAlmostEqual(pair.noise.total, 0.0, places=12)

    def test_ground_state_rates(self):
        pair = LabelPair.example_ground_state()
        self.assertAlmostEqual(pair.noise.eta0, GROUND_ETA, places=9)
        self.assertAlmostEqual(pair.overlap(), 1 / math.sqrt(2), places=9)

    def test_symmetric_noise(self):
        pair = LabelPair.symmetric_noise(0.15)
        self.assertAlmostEqual(pair.noise.eta0, 0.15, places=9)
        self.assertAlmostEqual(pair.noise.eta1, 0.15, places=9)
        self.assertAlmostEqual(pair.overlap(), math.sqrt(0.51), places=9)

    def test_symmetric_noise_range(self):
        with self.assertRaises(PreconditionViolation):
            LabelPair.symmetric_noise(0.5)


class DistributionTests(SimpleTestCase):
    def test_sum_must_be_one(self):
        with self.assertRaises(InvalidDistribution):
            LabeledDistribution(two_point_domain(), [0, 1], [0, 0], [0.5, 0.4])

    def test_duplicate_rows(self):
        with self.assertRaises(InvalidDistribution):
            LabeledDistribution(two_point_domain(), [0, 0], [1, 1], [0.5, 0.5])

    def test_conditional(self):
        mu = LabeledDistribution.from_rows(two_point_domain(), [("x1", 0, 0.2), ("x1", 1, 0.6), ("x2", 0, 0.2)])
        p0, p1 = mu.conditional("x1")
        self.assertAlmostEqual(p1, 0.75)
        self.assertTrue(np.allclose(mu.marginal(), [0.8, 0.2]))

    def test_agnostic_flip(self):
        cls = thresholds(Domain.line(4))
        mu = LabeledDistribution.agnostic(LabeledDistribution.uniform_marginal(cls.domain), cls.member(2), 0.1)
        self.assertAlmostEqual(mu.conditional("4")[0], 0.1)


class DrawTests(SimpleTestCase):
    def test_point_mass(self):
        mu = LabeledDistribution.point_mass(two_point_domain(), "x2", 1)
        sample = draw_quantum_sample(mu, 50, np.random.default_rng(0))
        self.assertEqual(set(sample.items()), {("x2", 1)})

    def test_balanced_bits(self):
        mu = LabeledDistribution.from_rows(two_point_domain(), [("x1", 0, 0.5), ("x1", 1, 0.5)])
        sample = draw_quantum_sample(mu, 100_000, np.random.default_rng(1))
        self.assertAlmostEqual(sample.latent.mean(), 0.5, delta=0.01)

    def test_realizable_latent_is_concept_label(self):
        cls = thresholds(Domain.line(10))
        target = cls.member(4)
        mu = LabeledDistribution.realizable(LabeledDistribution.uniform_marginal(cls.domain), target)
        sample = draw_quantum_sample(mu, 1000, np.random.default_rng(2))
        self.assertTrue(np.array_equal(sample.latent, target.labels[sample.instances]))

    def test_zero_size(self):
        mu = LabeledDistribution.point_mass(two_point_domain(), "x1", 0)
        with self.assertRaises(PreconditionViolation):
            draw_quantum_sample(mu, 0, np.random.default_rng(0))

    def test_reproducible(self):
        mu = LabeledDistribution.agnostic([0.3, 0.7], explicit(two_point_domain(), [[0, 1]]).member(0), 0.2)
        labels = LabelPair.example_ground_state()
        first = measure_labels(draw_quantum_sample(mu, 500, 42), labels.holevo_helstrom, labels, 43)
        second = measure_labels(draw_quantum_sample(mu, 500, 42), labels.holevo_helstrom, labels, 43)
        self.assertEqual(first.items(), second.items())

    def test_prefix_of_larger_draw(self):
        mu = LabeledDistribution.agnostic([0.3, 0.7], explicit(two_point_domain(), [[0, 1]]).member(0), 0.2)
        labels = LabelPair.example_ground_state()
        short = draw_quantum_sample(mu, 40, 17)
        long = draw_quantum_sample(mu, 400, 17)
        self.assertTrue(np.array_equal(long.instances[:40], short.instances))
        self.assertTrue(np.array_equal(long.latent[:40], short.latent))
        measured_short = measure_labels(short, labels.holevo_helstrom, labels, 17)
        measured_long = measure_labels(long, labels.holevo_helstrom, labels, 17)
        self.assertTrue(np.array_equal(measured_long.observed[:40], measured_short.observed))

    def test_different_seeds_differ(self):
        mu = LabeledDistribution.from_rows(two_point_domain(), [("x1", 0, 0.5), ("x2", 1, 0.5)])
        first = draw_quantum_sample(mu, 200, 1)
        second = draw_quantum_sample(mu, 200, 2)
        self.assertFalse(np.array_equal(first.instances, second.instances))

    def test_skips_zero_mass_rows(self):
        mu = LabeledDistribution.from_table(two_point_domain(), np.array([[0.0, 0.0], [0.0, 1.0]]))
        sample = draw_quantum_sample(mu, 100, 3)
        self.assertEqual(set(sample.items()), {("x2", 1)})


class MeasureLabelsTests(SimpleTestCase):
    def setUp(self):
        self.domain = two_point_domain()
        self.mu = LabeledDistribution.from_rows(self.domain, [("x1", 0, 0.5), ("x2", 1, 0.5)])

    def test_zero_noise(self):
        labels = LabelPair.orthogonal()
        sample = draw_quantum_sample(self.mu, 1000, 3)
        measured = measure_labels(sample, labels.holevo_helstrom, labels, 4)
        self.assertTrue(np.array_equal(measured.observed, sample.latent))

    def test_ground_state_flip_rate(self):
        labels = LabelPair.example_ground_state()
        mu = LabeledDistribution.point_mass(self.domain, "x1", 0)
        measured = measure_labels(draw_quantum_sample(mu, 100_000, 5), labels.holevo_helstrom, labels, 6)
        self.assertAlmostEqual(measured.observed.mean(), 0.1464, delta=0.004)

    def test_always_one(self):
        labels = LabelPair.orthogonal()
        measured = measure_labels(draw_quantum_sample(self.mu, 200, 7), TwoOutcomePovm.constant(2, 1), labels, 8)
        self.assertTrue(measured.observed.all())

    def test_matches_induced_law(self):
        rng = np.random.default_rng(9)
        domain = Domain(("a", "b", "c"))
        table = rng.random((3, 2))
        mu = LabeledDistribution.from_table(domain, table / table.sum())
        labels = LabelPair.example_ground_state()
        povm = labels.holevo_helstrom
        m = 1_000_000
        measured = measure_labels(draw_quantum_sample(mu, m, 10), povm, labels, 11)
        zeros, ones = measured.counts()
        empirical = np.stack([zeros, ones], axis=1) / m
        expected = induced_nu(mu, povm, labels).table()
        sd = np.sqrt(expected * (1 - expected) / m)
        self.assertTrue(np.all(np.abs(empirical - expected) <= 4 * sd + 1e-12))

    def test_counts(self):
        sample = ClassicalSample.from_items(self.domain, [("x1", 1), ("x1", 0), ("x2", 1), ("x1", 1)])
        zeros, ones = sample.counts()
        self.assertEqual(list(zeros), [1, 0])
        self.assertEqual(list(ones), [2, 1])


class InducedNuTests(SimpleTestCase):
    def test_zero_noise_is_identity(self):
        domain = two_point_domain()
        mu = LabeledDistribution.from_rows(domain, [("x1", 0, 0.3), ("x1", 1, 0.1), ("x2", 1, 0.6)])
        labels = LabelPair.orthogonal()
        self.assertTrue(np.allclose(induced_nu(mu, labels.holevo_helstrom, labels).table(), mu.table(), atol=1e-12))

    def test_ground_state_point_mass(self):
        domain = two_point_domain()
        labels = LabelPair.example_ground_state()
        nu = induced_nu(LabeledDistribution.point_mass(domain, "x1", 0), labels.holevo_helstrom, labels)
        self.assertAlmostEqual(nu.conditional("x1")[1], 0.1464466, places=7)

    def test_symmetric_noise_expansion(self):
        domain = two_point_domain()
        labels = LabelPair.symmetric_noise(0.2)
        p = 0.35
        mu = LabeledDistribution.from_rows(domain, [("x1", 0, 1 - p), ("x1", 1, p)])
        nu = induced_nu(mu, labels.holevo_helstrom, labels)
        self.assertAlmostEqual(nu.conditional("x1")[1], p * 0.8 + (1 - p) * 0.2, places=9)
        self.assertAlmostEqual(nu.probs.sum(), 1.0, delta=1e-12)


class HardInstanceTests(SimpleTestCase):
    def setUp(self):
        self.cls = explicit(Domain(("x",)), [[0], [1]])
        self.f, self.g = self.cls.member(0), self.cls.member(1)

    def test_hard_pair_values(self):
        plus, minus = agnostic_hard_pair(self.f, self.g, "x", 0.2, LabelPair.orthogonal())
        self.assertAlmostEqual(plus.conditional("x")[0], 0.525)
        self.assertAlmostEqual(minus.conditional("x")[0], 0.475)

    def test_hard_pair_small_epsilon(self):
        plus, minus = agnostic_hard_pair(self.f, self.g, "x", 0.0, LabelPair.orthogonal())
        self.assertEqual(plus.conditional("x"), (0.5, 0.5))
        self.assertEqual(minus.conditional("x"), (0.5, 0.5))

    def test_hard_pair_preconditions(self):
        with self.assertRaises(PreconditionViolation):
            agnostic_hard_pair(self.g, self.f, "x", 0.1, LabelPair.orthogonal())
        with self.assertRaises(PreconditionViolation):
            agnostic_hard_pair(self.f, self.g, "x", 0.8, LabelPair.orthogonal())

    def test_hard_family_values(self):
        domain = Domain(("s1", "s2"))
        mu = agnostic_hard_family(domain, ["s1", "s2"], "00", 0.1, LabelPair.orthogonal())
        self.assertAlmostEqual(mu.table()[0, 0], 0.35)
        self.assertAlmostEqual(mu.probs.sum(), 1.0, delta=1e-12)
        uniform = agnostic_hard_family(domain, ["s1", "s2"], "01", 0.0, LabelPair.orthogonal())
        self.assertTrue(np.allclose(uniform.probs, 0.25))

    def test_hard_family_bit_flip(self):
        domain = Domain(tuple(f"s{i}" for i in range(4)))
        labels = LabelPair.example_ground_state()
        eps = 0.9 * labels.distance / 8
        base = agnostic_hard_family(domain, domain.ids, "0110", eps, labels).table()
        flipped = agnostic_hard_family(domain, domain.ids, "0100", eps, labels).table()
        changed = np.argwhere(~np.isclose(base, flipped))
        self.assertEqual([tuple(c) for c in changed], [(2, 0), (2, 1)])
        self.assertTrue(np.all(base >= 0) and np.all(base <= 1 / 4 + 1e-15))

    def test_hard_family_too_large(self):
        with self.assertRaises(PreconditionViolation):
            agnostic_hard_family(Domain(("s",)), ["s"], "1", 0.25, LabelPair.orthogonal())

    def test_realizable_pair(self):
        cls = thresholds(Domain.line(3))
        mu = realizable_hard_distribution(
            "pair", target=cls.member(1), x1="1", x2="3", epsilon=0.1, labels=LabelPair.orthogonal()
        )
        self.assertAlmostEqual(mu.marginal()[2], 0.1)
        point = realizable_hard_distribution(
            "pair", target=cls.member(1), x1="1", x2="3", epsilon=0.0, labels=LabelPair.orthogonal()
        )
        self.assertEqual(point.marginal()[0], 1.0)

    def test_realizable_family(self):
        domain = Domain(tuple(f"s{i}" for i in range(5)))
        mu = realizable_hard_distribution(
            "shattered-family", domain=domain, anchor="s0", shattered=["s1", "s2", "s3", "s4"],
            a="1010", epsilon=0.1, labels=LabelPair.orthogonal(),
        )
        self.assertTrue(np.allclose(mu.marginal()[1:], 0.1))
        self.assertAlmostEqual(mu.marginal()[0], 0.6)

    def test_realizable_lambda_guard(self):
        cls = thresholds(Domain.line(3))
        with self.assertRaises(PreconditionViolation):
            realizable_hard_distribution(
                "pair", target=cls.member(1), x1="1", x2="3", epsilon=1.0, labels=LabelPair.orthogonal()
            )


class FormatTests(SimpleTestCase):
    def test_label_specs(self):
        self.assertEqual(build_labels("ground-state").dim, 3)
        self.assertAlmostEqual(build_labels("symmetric:eta=0.1").noise.eta0, 0.1, places=9)
        with self.assertRaises(SpecError):
            build_labels("bell")

    def test_distribution_specs(self):
        cls = thresholds(Domain.line(6))
        labels = LabelPair.orthogonal()
        self.assertEqual(len(build_distribution("realizable:concept=2", cls, labels)), 6)
        plus = build_distribution("hard-pair:epsilon=0.2,sign=+", cls, labels)
        minus = build_distribution("hard-pair:epsilon=0.2,sign=-", cls, labels)
        self.assertFalse(np.allclose(plus.table(), minus.table()))
        family = build_distribution("hard-family:epsilon=0.1,a=1", cls, labels)
        self.assertAlmostEqual(family.probs.sum(), 1.0)
        pair = build_distribution("realizable-pair:epsilon=0.1,target=2", cls, labels)
        self.assertAlmostEqual(pair.probs.max(), 0.9)

    def test_distribution_file(self):
        domain = two_point_domain()
        mu = parse_distribution_text("# mu\nx1, 0, 0.25\nx2, 1, 0.75\n", domain)
        self.assertTrue(np.allclose(mu.marginal(), [0.25, 0.75]))
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "mu.txt"
            path.write_text(format_distribution_text(mu))
            cls = explicit(domain, [[0, 1]])
            loaded = build_distribution(str(path), cls, LabelPair.orthogonal())
            self.assertTrue(np.allclose(loaded.table(), mu.table()))

    def test_bad_distribution_line(self):
        with self.assertRaises(InvalidDistribution):
            parse_distribution_text("x1, 0\n", two_point_domain())
