import math

import numpy as np
from django.test import SimpleTestCase

from concepts.classes import Domain, explicit, thresholds
from pac_lab.exceptions import DegenerateNoise, PreconditionViolation, SpecError
from qstate.states import NoisePair, random_density_matrix
from sampling.distributions import (
    ClassicalSample,
    LabeledDistribution,
    draw_quantum_sample,
    induced_nu,
    measure_labels,
)
from sampling.labels import LabelPair

from .base import Hypothesis, LearnerConfig
from .erm import empirical_risks, erm_01, erm_noise_corrected, noise_corrected_loss, zero_one_matrix
from .realizable import (
    iter_subsamples,
    laird_constant,
    laird_split,
    majority_vote,
    min_disagreement,
    minimum_split_size,
    realizable_learner,
    subsamples,
)
from .registry import get_learner


def constants_class():
    domain = Domain(("x1", "x2", "x3", "x4"))
    return explicit(domain, [[0, 0, 0, 0], [1, 1, 1, 1]])


def seven_three_sample(concept_class):
    ids = concept_class.domain.ids
    items = [(ids[i % 4], 1) for i in range(7)] + [(ids[i % 4], 0) for i in range(3)]
    return ClassicalSample.from_items(concept_class.domain, items)


class NoiseCorrectedLossTests(SimpleTestCase):
    def test_zero_noise_is_zero_one(self):
        noise = NoisePair(0.0, 0.0)
        for y1 in (0, 1):
            for y2 in (0, 1):
                self.assertEqual(noise_corrected_loss(y1, y2, noise), float(y1 != y2))

    def test_symmetric_values(self):
        noise = NoisePair.symmetric(0.1)
        self.assertAlmostEqual(noise_corrected_loss(1, 0, noise), 1.125)
        self.assertAlmostEqual(noise_corrected_loss(0, 0, noise), -0.125)

    def test_bounded(self):
        noise = NoisePair(0.2, 0.35)
        for y1 in (0, 1):
            for y2 in (0, 1):
                self.assertLessEqual(abs(noise_corrected_loss(y1, y2, noise)), 1 / noise.denominator + 1e-15)

    def test_degenerate(self):
        with self.assertRaises(DegenerateNoise):
            noise_corrected_loss(0, 1, NoisePair(0.6, 0.4))

    def test_unbiased_for_random_laws(self):
        rng = np.random.default_rng(1000)
        domain = Domain(("a", "b", "c"))
        cases = 0
        for _ in range(100):
            dim = int(rng.integers(2, 4))
            labels = LabelPair(random_density_matrix(dim, rng), random_density_matrix(dim, rng))
            noise = labels.noise
            table = rng.random((3, 2))
            mu = LabeledDistribution.from_table(domain, table / table.sum())
            nu = induced_nu(mu, labels.holevo_helstrom, labels)
            for _ in range(10):
                x = domain.ids[int(rng.integers(0, 3))]
                z = int(rng.integers(0, 2))
                nu_x, mu_x = nu.conditional(x), mu.conditional(x)
                corrected = sum(nu_x[y] * noise_corrected_loss(z, y, noise) for y in (0, 1))
                clean = sum(mu_x[y] * (z != y) for y in (0, 1))
                self.assertAlmostEqual(corrected, clean, delta=1e-12)
                cases += 1
        self.assertEqual(cases, 1000)


class ErmTests(SimpleTestCase):
    def test_unique_consistent_member(self):
        cls = thresholds(Domain.line(5))
        target = cls.member(3)
        items = [(x, int(target(x))) for x in cls.domain.ids]
        h = erm_noise_corrected(ClassicalSample.from_items(cls.domain, items), cls, NoisePair(0.0, 0.0))
        self.assertEqual(h.provenance["member"], 3)

    def test_seven_three(self):
        cls = constants_class()
        sample = seven_three_sample(cls)
        risks = empirical_risks(sample, cls, zero_one_matrix())
        self.assertTrue(np.allclose(risks, [0.7, 0.3]))
        self.assertEqual(erm_noise_corrected(sample, cls, NoisePair(0.0, 0.0)).provenance["member"], 1)
        self.assertEqual(erm_01(sample, cls).provenance["member"], 1)

    def test_single_member(self):
        cls = explicit(Domain.line(3), [[0, 1, 0]])
        sample = ClassicalSample.from_items(cls.domain, [("1", 1), ("2", 0)])
        self.assertEqual(erm_01(sample, cls).provenance["member"], 0)

    def test_empty_sample(self):
        cls = constants_class()
        with self.assertRaises(PreconditionViolation):
            erm_01(ClassicalSample(cls.domain, [], []), cls)

    def test_symmetric_noise_matches_zero_one(self):
        rng = np.random.default_rng(21)
        cls = thresholds(Domain.line(12))
        for _ in range(100):
            m = int(rng.integers(1, 40))
            sample = ClassicalSample(cls.domain, rng.integers(0, 12, m), rng.integers(0, 2, m))
            eta = float(rng.uniform(0, 0.45))
            nc = erm_noise_corrected(sample, cls, NoisePair.symmetric(eta))
            plain = erm_01(sample, cls)
            self.assertEqual(nc.provenance["member"], plain.provenance["member"])

    def test_zero_noise_value_matches(self):
        rng = np.random.default_rng(22)
        cls = thresholds(Domain.line(8))
        for _ in range(50):
            m = int(rng.integers(1, 30))
            sample = ClassicalSample(cls.domain, rng.integers(0, 8, m), rng.integers(0, 2, m))
            nc = erm_noise_corrected(sample, cls, NoisePair(0.0, 0.0))
            plain = erm_01(sample, cls)
            self.assertEqual(nc.provenance["member"], plain.provenance["member"])
            self.assertAlmostEqual(nc.provenance["empirical_risk"], plain.provenance["empirical_risk"], places=12)


class LairdSplitTests(SimpleTestCase):
    def test_constant_at_zero(self):
        self.assertAlmostEqual(laird_constant(0.0), 5.082988, places=6)

    def test_hundred(self):
        split = laird_split(100, 0.0)
        self.assertEqual((split.m1, split.m2), (16, 84))

    def test_boundary(self):
        m = math.ceil(2 * (1 + laird_constant(0.0)))
        self.assertEqual(m, minimum_split_size(0.0))
        self.assertGreaterEqual(laird_split(m, 0.0).m1, 1)
        with self.assertRaises(PreconditionViolation):
            laird_split(m - 1, 0.0)

    def test_share_of_m2_grows_with_noise(self):
        shares = [laird_split(10_000, eta).m2 / 10_000 for eta in np.linspace(0, 0.45, 10)]
        self.assertTrue(all(a <= b for a, b in zip(shares, shares[1:])))
        self.assertGreater(laird_split(10**7, 0.49).m2 / 10**7, 0.999)

    def test_literal_sizes(self):
        split = laird_split(100, 0.1, LearnerConfig(0.1, 0.05, 0.1), d=2)
        self.assertGreater(split.literal_m1, 0)
        self.assertGreater(split.literal_m2, 0)


class SubsampleTests(SimpleTestCase):
    def test_counts_and_sizes(self):
        expected = {3: (1, 3), 4: (3, 3), 16: (9, 11), 64: (27, 43)}
        for n, (count, size) in expected.items():
            blocks = list(iter_subsamples(np.arange(n)))
            self.assertEqual(len(blocks), count)
            self.assertEqual({len(b) for b in blocks}, {size})

    def test_base_case(self):
        self.assertEqual(subsamples(["a", "b", "c"]), [["a", "b", "c"]])

    def test_four_items(self):
        self.assertEqual(subsamples([1, 2, 3, 4]), [[1, 3, 4], [1, 2, 4], [1, 2, 3]])

    def test_structure_for_random_sizes(self):
        for n in range(1, 200, 7):
            blocks = subsamples(list(range(n)), ["t"])
            count = len(blocks)
            self.assertEqual(3 ** round(math.log(count, 3)), count)
            covered = set()
            for block in blocks:
                self.assertEqual(block[-1], "t")
                body = block[:-1]
                self.assertEqual(body, sorted(body))
                covered.update(body)
            self.assertEqual(covered, set(range(n)))


class MinDisagreementTests(SimpleTestCase):
    def test_hand_example(self):
        cls = constants_class()
        sample = ClassicalSample.from_items(cls.domain, [("x1", 1), ("x2", 1), ("x3", 1), ("x4", 0)])
        h = min_disagreement(sample, cls, 1)
        self.assertEqual(h.provenance["member"], 1)
        self.assertEqual(h.provenance["disagreements"], 1)

    def test_tie_goes_to_lower_representative(self):
        cls = constants_class()
        sample = ClassicalSample.from_items(cls.domain, [("x1", 1), ("x2", 1), ("x3", 0)])
        self.assertEqual(min_disagreement(sample, cls, 1).provenance["member"], 0)

    def test_m1_range(self):
        cls = constants_class()
        sample = seven_three_sample(cls)
        with self.assertRaises(PreconditionViolation):
            min_disagreement(sample, cls, 10)
        with self.assertRaises(PreconditionViolation):
            min_disagreement(sample, cls, 0)


class RealizableLearnerTests(SimpleTestCase):
    def test_majority_vote(self):
        domain = Domain(("x",))
        hyps = [Hypothesis(domain, [b]) for b in (1, 1, 0)]
        self.assertEqual(majority_vote(hyps)("x"), 1)
        self.assertEqual(majority_vote(hyps[1:])("x"), 0)

    def test_base_case_equals_min_disagreement(self):
        cls = constants_class()
        sample = ClassicalSample.from_items(cls.domain, [("x1", 1), ("x2", 0), ("x3", 0)])
        config = LearnerConfig(0.1, 0.05)
        direct = min_disagreement(sample, cls, 2)
        self.assertTrue(np.array_equal(realizable_learner(sample, cls, config).labels, direct.labels))

    def test_short_subsample_fallback_warns(self):
        cls = constants_class()
        sample = ClassicalSample.from_items(cls.domain, [("x1", 1), ("x2", 0), ("x3", 0)])
        self.assertLess(len(sample), minimum_split_size(0.0))
        with self.assertLogs("learners.realizable", level="WARNING") as logs:
            h = realizable_learner(sample, cls, LearnerConfig(0.1, 0.05))
        self.assertEqual(h.provenance["fallbacks"], 1)
        self.assertIn("ceil(n/2)", logs.output[0])

    def test_recovers_unique_consistent_member(self):
        cls = thresholds(Domain.line(5))
        target = cls.member(2)
        items = [(x, int(target(x))) for _ in range(40) for x in cls.domain.ids]
        sample = ClassicalSample.from_items(cls.domain, items)
        h = realizable_learner(sample, cls, LearnerConfig(0.1, 0.05))
        self.assertTrue(np.array_equal(h.labels, target.labels))
        self.assertEqual(h.provenance["voters"], 81)

    def test_zero_risk_on_noiseless_data(self):
        cls = thresholds(Domain.line(10))
        labels = LabelPair.orthogonal()
        config = LearnerConfig(0.1, 0.05)
        for trial in range(100):
            rng = np.random.default_rng(trial)
            target = cls.member(int(rng.integers(0, len(cls))))
            mu = LabeledDistribution.realizable(LabeledDistribution.uniform_marginal(cls.domain), target)
            sample = measure_labels(draw_quantum_sample(mu, 2000, rng), labels.holevo_helstrom, labels, rng)
            h = realizable_learner(sample, cls, config)
            self.assertTrue(np.array_equal(h.labels, target.labels), f"trial {trial}")

    def test_deterministic(self):
        cls = thresholds(Domain.line(10))
        rng = np.random.default_rng(3)
        sample = ClassicalSample(cls.domain, rng.integers(0, 10, 100), rng.integers(0, 2, 100))
        config = LearnerConfig(0.2, 0.1, 0.2)
        first = realizable_learner(sample, cls, config)
        second = realizable_learner(sample, cls, config)
        self.assertTrue(np.array_equal(first.labels, second.labels))


class RegistryTests(SimpleTestCase):
    def test_names(self):
        cls = constants_class()
        sample = seven_three_sample(cls)
        config = LearnerConfig(0.1, 0.05)
        for name in ("erm01", "erm-nc", "mindis", "realizable"):
            h = get_learner(name)(sample, cls, config, NoisePair(0.0, 0.0))
            self.assertEqual(len(h.labels), 4)
        with self.assertRaises(SpecError):
            get_learner("svm")

    def test_config_ranges(self):
        with self.assertRaises(PreconditionViolation):
            LearnerConfig(0.0, 0.1)
        with self.assertRaises(PreconditionViolation):
            LearnerConfig(0.1, 0.1, 0.5)
        self.assertTrue(LearnerConfig(0.1, 0.05).check_realizable_delta(1))
