import math

import numpy as np
from django.test import SimpleTestCase

from concepts.classes import ConceptClass, Domain, explicit, full_class, realizable_witness, thresholds
from learners.base import LearnerConfig
from learners.realizable import laird_constant
from pac_lab.exceptions import EnumerationLimitExceeded, PreconditionViolation, UnsupportedRegime
from qstate.states import DensityMatrix, NoisePair, PureState, random_density_matrix
from sampling.distributions import ClassicalSample, LabeledDistribution, induced_nu
from sampling.hard_instances import agnostic_hard_family, agnostic_hard_pair, realizable_hard_pair
from sampling.labels import LabelPair

from .bounds import agnostic_sample_bound, realizable_sample_bound
from .diagnostics import (
    agnostic_pair_lower_bound,
    distinguishing_diagnostics,
    hamming_distance,
    mutual_info_single_example,
    realizable_distinguishing_diagnostics,
    realizable_mutual_info,
    success_upper_bound,
    teacher_game_check,
    vc_lower_bound,
)
from .rademacher import (
    contraction_factor,
    empirical_rademacher,
    empirical_rademacher_values,
    noise_corrected_rademacher,
)
from .risk import (
    intermediate_risk,
    optimal_class_risk,
    risk_comparison,
    risk_report,
    true_risk,
)


def pure_pair(c):
    """Pure qubit labels with overlap c."""
    return LabelPair.from_pure(PureState([1, 0]), PureState([c, math.sqrt(1 - c * c)]))


def random_class(rng, n_points, size):
    rows = np.unique(rng.integers(0, 2, (size, n_points)), axis=0)
    return explicit(Domain.line(n_points), rows)


class RiskTests(SimpleTestCase):
    def setUp(self):
        self.cls = thresholds(Domain.line(5))
        self.uniform = LabeledDistribution.uniform_marginal(self.cls.domain)

    def test_target_has_zero_risk(self):
        target = self.cls.member(2)
        mu = LabeledDistribution.realizable(self.uniform, target)
        self.assertEqual(true_risk(target, mu, LabelPair.example_ground_state()), 0.0)

    def test_wrong_everywhere_with_orthogonal_labels(self):
        target = self.cls.member(0)
        mu = LabeledDistribution.realizable(self.uniform, target)
        self.assertAlmostEqual(true_risk(self.cls.member(len(self.cls) - 1), mu, LabelPair.orthogonal()), 1.0)

    def test_hard_pair_excess(self):
        labels = LabelPair.example_ground_state()
        f, g = self.cls.member(len(self.cls) - 1), self.cls.member(0)
        plus, _ = agnostic_hard_pair(f, g, "3", 0.2, labels)
        excess = true_risk(g, plus, labels) - true_risk(f, plus, labels)
        self.assertAlmostEqual(excess, 0.2 / 4, places=12)

    def test_report(self):
        labels = LabelPair.orthogonal()
        mu = LabeledDistribution.agnostic(self.uniform, self.cls.member(2), 0.1)
        report = risk_report(self.cls.member(4), self.cls, mu, labels, with_intermediate=True)
        self.assertAlmostEqual(report.excess, report.true_risk - report.optimal_class_risk, places=12)
        self.assertAlmostEqual(report.optimal_class_risk, 0.1 * labels.half_distance)
        self.assertAlmostEqual(report.intermediate_risk, report.true_risk / labels.half_distance)
        self.assertLessEqual(report.true_risk, labels.half_distance)


class IntermediateRiskTests(SimpleTestCase):
    def test_perfect_under_noiseless(self):
        cls = thresholds(Domain.line(4))
        labels = LabelPair.orthogonal()
        mu = LabeledDistribution.realizable(LabeledDistribution.uniform_marginal(cls.domain), cls.member(1))
        nu = induced_nu(mu, labels.holevo_helstrom, labels)
        self.assertAlmostEqual(intermediate_risk(cls.member(1), nu), 0.0, places=12)

    def test_constant_one(self):
        domain = Domain(("a", "b"))
        nu = LabeledDistribution.from_rows(domain, [("a", 1, 0.3), ("a", 0, 0.2), ("b", 0, 0.5)])
        self.assertAlmostEqual(intermediate_risk(np.ones(2), nu), 0.7)

    def test_symmetric_noise_level(self):
        cls = thresholds(Domain.line(6))
        labels = LabelPair.symmetric_noise(0.15)
        mu = LabeledDistribution.realizable(LabeledDistribution.uniform_marginal(cls.domain), cls.member(3))
        nu = induced_nu(mu, labels.holevo_helstrom, labels)
        self.assertAlmostEqual(intermediate_risk(cls.member(3), nu), 0.15, places=9)


class RiskComparisonTests(SimpleTestCase):
    def test_identity_and_sandwiches(self):
        rng = np.random.default_rng(4)
        domain = Domain(("a", "b", "c", "d"))
        checked = 0
        for trial in range(500):
            if trial % 5 == 0:
                labels = LabelPair.example_ground_state()
            else:
                dim = int(rng.integers(2, 4))
                labels = LabelPair(random_density_matrix(dim, rng), random_density_matrix(dim, rng))
            table = rng.random((4, 2))
            mu = LabeledDistribution.from_table(domain, table / table.sum())
            rows = np.unique(rng.integers(0, 2, (6, 4)), axis=0)
            cls = explicit(domain, rows)
            g = rng.integers(0, 2, 4)
            report = risk_comparison(g, mu, labels, concept_class=cls)
            self.assertTrue(report.identity_holds, f"trial {trial}: {report.identity_gap}")
            self.assertTrue(report.sandwich_holds, f"trial {trial}")
            self.assertTrue(report.excess_sandwich_holds, f"trial {trial}")
            self.assertAlmostEqual(report.contrast, report.half_distance, delta=1e-9)
            checked += 1
        self.assertEqual(checked, 500)

    def test_constant_zero(self):
        labels = LabelPair.example_ground_state()
        domain = Domain.line(3)
        mu = LabeledDistribution.from_table(domain, np.array([[0.1, 0.2], [0.3, 0.1], [0.2, 0.1]]))
        report = risk_comparison(np.zeros(3), mu, labels)
        self.assertEqual(report.mean_g, 0.0)
        self.assertAlmostEqual(report.identity_rhs, labels.half_distance * 0.4 + report.eta0, places=12)

    def test_equal_rates_give_equal_excess(self):
        rng = np.random.default_rng(8)
        labels = pure_pair(0.6)
        cls = thresholds(Domain.line(4))
        for _ in range(50):
            table = rng.random((4, 2))
            mu = LabeledDistribution.from_table(cls.domain, table / table.sum())
            report = risk_comparison(rng.integers(0, 2, 4), mu, labels, concept_class=cls)
            self.assertAlmostEqual(report.eta0, report.eta1, places=12)
            self.assertAlmostEqual(report.excess_true, report.excess_intermediate, places=12)
            self.assertAlmostEqual(report.intermediate_risk - report.true_risk, report.eta0, places=12)


class RademacherTests(SimpleTestCase):
    def test_single_concept(self):
        cls = explicit(Domain.line(4), [[0, 1, 1, 0]])
        self.assertAlmostEqual(empirical_rademacher(cls, ["1", "2", "3", "4"]), 0.0, places=14)

    def test_full_class_on_three_points(self):
        cls = full_class(Domain.line(3))
        self.assertAlmostEqual(empirical_rademacher(cls, ["1", "2", "3"]), 0.5, places=14)

    def test_monte_carlo_close_to_exact(self):
        cls = thresholds(Domain.line(8))
        points = list(cls.domain.ids)
        exact = empirical_rademacher(cls, points)
        estimate = empirical_rademacher(cls, points, mode="monte-carlo", draws=20000, rng=np.random.default_rng(0))
        self.assertAlmostEqual(estimate, exact, delta=0.01)

    def test_exact_limit(self):
        with self.assertRaises(EnumerationLimitExceeded):
            empirical_rademacher_values(np.zeros((1, 21)))

    def test_contraction_inequality(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            n_points = int(rng.integers(2, 7))
            cls = random_class(rng, n_points, int(rng.integers(1, 10)))
            n = int(rng.integers(1, 13))
            sample = ClassicalSample(cls.domain, rng.integers(0, n_points, n), rng.integers(0, 2, n))
            eta0, eta1 = rng.uniform(0, 0.45, 2)
            noise = NoisePair(eta0, eta1)
            ids = [cls.domain.ids[i] for i in sample.instances]
            lhs = noise_corrected_rademacher(cls, sample, noise)
            rhs = contraction_factor(noise) * empirical_rademacher(cls, ids)
            self.assertLessEqual(lhs, rhs + 1e-12)


class BoundTests(SimpleTestCase):
    def test_agnostic_regression(self):
        config = LearnerConfig(0.1, 0.05)
        report = agnostic_sample_bound(4, config, LabelPair.orthogonal())
        inner = 124 * 2 + 5 * math.sqrt(2 * math.log(8 / 0.05))
        self.assertAlmostEqual(report.m_sufficient, math.ceil(4 / (4 * 0.01) * inner**2), delta=1)
        self.assertAlmostEqual(report.m_sufficient / 1e6, 6.966, places=3)

    def test_agnostic_scaling(self):
        labels = LabelPair.example_ground_state()
        half = agnostic_sample_bound(3, LearnerConfig(0.1, 0.05), labels).constants["value"]
        quarter = agnostic_sample_bound(3, LearnerConfig(0.05, 0.05), labels).constants["value"]
        self.assertAlmostEqual(quarter / half, 4.0, places=9)
        for d in (100, 400, 1600):
            small = agnostic_sample_bound(d, LearnerConfig(0.1, 0.05), labels).m_sufficient
            big = agnostic_sample_bound(2 * d, LearnerConfig(0.1, 0.05), labels).m_sufficient
            self.assertGreater(big / small, 1.0)
            self.assertLessEqual(big / small, 2.0 + 1e-9)

    def test_realizable_regression(self):
        report = realizable_sample_bound(1, LearnerConfig(0.1, 0.05))
        expected = math.floor(7200 * laird_constant(0.0) / 0.1 * (1 + math.log(18 / 0.05)))
        self.assertEqual(report.m_sufficient, expected)
        self.assertAlmostEqual(report.m_sufficient / 1e6, 2.52, delta=0.005)
        self.assertEqual(report.constants["c"], 7200)

    def test_relaxation_fails_without_noise(self):
        report = realizable_sample_bound(2, LearnerConfig(0.1, 0.01))
        self.assertAlmostEqual(report.constants["C"], 5.08299, places=5)
        self.assertFalse(report.constants["relaxation_holds"])
        self.assertGreater(report.m_sufficient, report.constants["m_relaxed"])

    def test_constant_grows_with_noise(self):
        values = [laird_constant(eta) for eta in np.linspace(0, 0.49, 50)]
        self.assertTrue(all(a < b for a, b in zip(values, values[1:])))
        for eta in (0.1, 0.3, 0.45):
            report = realizable_sample_bound(3, LearnerConfig(0.1, 0.01, eta))
            self.assertEqual(report.constants["c"], 7200)

    def test_large_delta_warns(self):
        with self.assertLogs("learners.base", level="WARNING"):
            report = realizable_sample_bound(8, LearnerConfig(0.1, 0.5))
        self.assertFalse(report.constants["delta_ok"])


class DistinguishingTests(SimpleTestCase):
    def test_zero_bias(self):
        labels = LabelPair.orthogonal()
        report = agnostic_pair_lower_bound(0.0, 0.05, labels)
        self.assertAlmostEqual(report.fidelity, 1.0, places=9)
        self.assertEqual(report.m_min, math.inf)
        self.assertAlmostEqual(success_upper_bound(1.0, 50), 0.5)

    def test_orthogonal_fidelity_matches_concavity_bound(self):
        labels = LabelPair.orthogonal()
        report = agnostic_pair_lower_bound(0.1, 0.05, labels)
        lam = 0.1 / 4
        self.assertAlmostEqual(report.lam, lam, places=12)
        self.assertAlmostEqual(report.fidelity, math.sqrt(1 - lam**2), places=9)
        self.assertAlmostEqual(report.fidelity_lower, math.sqrt(1 - lam**2), places=12)
        expected = math.ceil(math.log(4 * 0.05 * 0.95) / math.log(report.fidelity**2))
        self.assertEqual(report.m_min, expected)

    def test_mixed_labels_respect_concavity(self):
        labels = LabelPair.example_ground_state()
        report = agnostic_pair_lower_bound(0.1, 0.05, labels)
        self.assertGreaterEqual(report.fidelity + 1e-12, report.fidelity_lower)
        self.assertLessEqual(report.m_min_lower, report.m_min)

    def test_inverse_square_scaling(self):
        labels = LabelPair.orthogonal()
        eps = np.array([0.01, 0.02, 0.04, 0.08])
        m = np.array([agnostic_pair_lower_bound(e, 0.05, labels).m_min for e in eps])
        slope = np.polyfit(np.log(eps), np.log(m), 1)[0]
        self.assertAlmostEqual(slope, -2.0, delta=0.1)

    def test_nonincreasing_in_delta(self):
        labels = LabelPair.orthogonal()
        m = [agnostic_pair_lower_bound(0.1, delta, labels).m_min for delta in (0.01, 0.05, 0.1, 0.2, 0.4)]
        self.assertTrue(all(a >= b for a, b in zip(m, m[1:])))

    def test_multi_instance_support_rejected(self):
        cls = thresholds(Domain.line(3))
        mu = LabeledDistribution.realizable(LabeledDistribution.uniform_marginal(cls.domain), cls.member(1))
        with self.assertRaises(PreconditionViolation):
            distinguishing_diagnostics(mu, mu, LabelPair.orthogonal())

    def test_success_bound(self):
        labels = LabelPair.orthogonal()
        pair = explicit(Domain(("x",)), [[0], [1]])
        plus, minus = agnostic_hard_pair(pair.member(0), pair.member(1), "x", 0.2, labels)
        report = distinguishing_diagnostics(plus, minus, labels, m=10)
        self.assertGreater(report.success_bound, 0.5)
        self.assertLessEqual(report.success_bound, 1.0)

    def test_realizable_pair_distance(self):
        labels = LabelPair.example_ground_state()
        cls = thresholds(Domain.line(3))
        f1, f2, x1, x2 = realizable_witness(cls)
        ids = cls.domain.ids
        first = realizable_hard_pair(cls.member(f1), ids[x1], ids[x2], 0.05, labels)
        second = realizable_hard_pair(cls.member(f2), ids[x1], ids[x2], 0.05, labels)
        report = realizable_distinguishing_diagnostics(first, second, labels, delta=0.05)
        self.assertAlmostEqual(report.trace_distance, 0.1, places=9)
        expected = math.ceil(math.log(4 * 0.05 * 0.95) / (2 * math.log(1 - 0.05)))
        self.assertEqual(report.m_min_lower, expected)


class MutualInformationTests(SimpleTestCase):
    def test_zero_epsilon(self):
        report = mutual_info_single_example(3, 0.0, pure_pair(0.5))
        self.assertAlmostEqual(report.exact_bits, 0.0, places=12)
        self.assertAlmostEqual(report.closed_form_bits, 0.0, places=15)

    def test_reference_point(self):
        report = mutual_info_single_example(2, 0.01, pure_pair(1 / math.sqrt(2)))
        self.assertAlmostEqual(report.exact_bits, report.closed_form_bits, delta=1e-8)

    def test_closed_form_grid(self):
        for c in (0.0, 0.2, 0.5, 1 / math.sqrt(2), 0.9):
            labels = pure_pair(c)
            for eps in (0.001, 0.005, 0.01, 0.05):
                for d in (1, 2, 3, 4):
                    report = mutual_info_single_example(d, eps, labels)
                    self.assertAlmostEqual(report.exact_bits, report.closed_form_bits, delta=1e-8)
                    self.assertGreaterEqual(report.exact_bits, -1e-12)
                    self.assertLessEqual(report.exact_bits, d)

    def test_quadratic_scaling(self):
        labels = pure_pair(1 / math.sqrt(2))
        for eps in (0.01, 0.005, 0.002):
            full = mutual_info_single_example(2, eps, labels)
            half = mutual_info_single_example(2, eps / 2, labels)
            self.assertAlmostEqual(full.exact_bits / half.exact_bits, 4.0, delta=0.08)
            self.assertAlmostEqual(full.leading_order_bits / half.leading_order_bits, 4.0, places=9)
            self.assertAlmostEqual(full.exact_bits / full.leading_order_bits, 1.0, delta=0.05)

    def test_ground_state_labels(self):
        report = mutual_info_single_example(2, 0.01, LabelPair.example_ground_state())
        self.assertAlmostEqual(report.overlap, 1 / math.sqrt(2), places=9)
        self.assertAlmostEqual(report.exact_bits, report.closed_form_bits, delta=1e-8)

    def test_guards(self):
        mixed = LabelPair(DensityMatrix.basis_state(2, 0), DensityMatrix.maximally_mixed(2))
        with self.assertRaises(UnsupportedRegime):
            mutual_info_single_example(2, 0.01, mixed)
        with self.assertRaises(EnumerationLimitExceeded):
            mutual_info_single_example(9, 0.01, pure_pair(0.5))
        with self.assertRaises(PreconditionViolation):
            mutual_info_single_example(2, 1.0, pure_pair(0.5))

    def test_non_uniform_ensemble(self):
        probs = np.array([0.4, 0.1, 0.3, 0.2])
        report = mutual_info_single_example(2, 0.02, pure_pair(0.3), ensemble=probs)
        self.assertGreater(report.exact_bits, 0.0)
        self.assertLessEqual(report.exact_bits, report.entropies["S_A"])


class RealizableInformationTests(SimpleTestCase):
    def test_zero_epsilon(self):
        report = realizable_mutual_info(3, 0.0, pure_pair(0.5))
        self.assertAlmostEqual(report.exact_bits, 0.0, places=12)
        self.assertEqual(report.closed_form_bits, 0.0)

    def test_orthogonal_is_lambda(self):
        report = realizable_mutual_info(2, 0.01, LabelPair.orthogonal())
        lam = 8 * 0.01 / 2
        self.assertAlmostEqual(report.closed_form_bits, lam, places=12)
        self.assertAlmostEqual(report.exact_bits, lam, places=10)

    def test_linear_in_epsilon(self):
        for c in (0.0, 0.3, 0.8):
            labels = pure_pair(c)
            for d in (1, 3, 5):
                one = realizable_mutual_info(d, 0.01, labels)
                two = realizable_mutual_info(d, 0.02, labels)
                self.assertAlmostEqual(two.exact_bits / one.exact_bits, 2.0, delta=1e-9)
                self.assertAlmostEqual(one.exact_bits, one.closed_form_bits, delta=1e-10)

    def test_lambda_guard(self):
        with self.assertRaises(PreconditionViolation):
            realizable_mutual_info(2, 0.3, LabelPair.orthogonal())


class VcLowerBoundTests(SimpleTestCase):
    def test_positive_and_growing(self):
        labels = LabelPair.example_ground_state()
        coarse = vc_lower_bound(4, 0.02, 0.05, labels)
        fine = vc_lower_bound(4, 0.01, 0.05, labels)
        self.assertGreater(coarse, 0)
        self.assertAlmostEqual(fine / coarse, 4.0, delta=0.1)

    def test_small_d_gives_nothing(self):
        self.assertEqual(vc_lower_bound(1, 0.01, 0.05, LabelPair.orthogonal()), 0.0)

    def test_large_d_uses_closed_form(self):
        labels = pure_pair(0.5)
        self.assertAlmostEqual(
            vc_lower_bound(16, 0.01, 0.05, labels) / vc_lower_bound(8, 0.01, 0.05, labels),
            ((1 - 0.8112781244591328 - 0.05) * 16 - 0.28639695711595625)
            / ((1 - 0.8112781244591328 - 0.05) * 8 - 0.28639695711595625),
            delta=1e-6,
        )

    def test_realizable_regime(self):
        labels = LabelPair.orthogonal()
        self.assertAlmostEqual(
            vc_lower_bound(4, 0.01, 0.05, labels, "realizable") / vc_lower_bound(4, 0.02, 0.05, labels, "realizable"),
            2.0,
            delta=1e-6,
        )


class HammingTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(hamming_distance("0000", "0000"), 0)
        self.assertEqual(hamming_distance("0101", "1010"), 4)
        with self.assertRaises(PreconditionViolation):
            hamming_distance("01", "011")

    def test_excess_tracks_hamming(self):
        labels = LabelPair.example_ground_state()
        cls = full_class(Domain.line(4))
        eps = 0.03
        for a in ("0000", "0110", "1011"):
            mu = agnostic_hard_family(cls.domain, cls.domain.ids, a, eps, labels)
            f_a = _member_for(cls, a)
            for other in ("0000", "1111", "0101", "1001"):
                excess = true_risk(_member_for(cls, other), mu, labels) - true_risk(f_a, mu, labels)
                self.assertAlmostEqual(excess, hamming_distance(a, other) * 4 * eps / 4, places=12)
            self.assertAlmostEqual(true_risk(f_a, mu, labels), optimal_class_risk(cls, mu, labels), places=12)


def _member_for(cls: ConceptClass, bits: str):
    row = np.array([int(b) for b in bits], dtype=np.uint8)
    return cls.member(int(np.flatnonzero((cls.labels == row).all(axis=1))[0]))


class TeacherGameTests(SimpleTestCase):
    def test_bayes_optimal_has_no_gap(self):
        cls = thresholds(Domain.line(4))
        mu = LabeledDistribution.realizable(LabeledDistribution.uniform_marginal(cls.domain), cls.member(2))
        report = teacher_game_check(cls.member(2), mu, LabelPair.example_ground_state())
        self.assertAlmostEqual(report.gap, 0.0, places=12)

    def test_wrong_everywhere(self):
        cls = thresholds(Domain.line(4))
        mu = LabeledDistribution.realizable(LabeledDistribution.uniform_marginal(cls.domain), cls.member(0))
        report = teacher_game_check(cls.member(4), mu, LabelPair.orthogonal())
        self.assertAlmostEqual(report.gap, 0.5, places=12)
        self.assertTrue(report.holds)

    def test_random_predictors(self):
        rng = np.random.default_rng(6)
        labels = LabelPair.example_ground_state()
        domain = Domain.line(4)
        for _ in range(100):
            concept = explicit(domain, [rng.integers(0, 2, 4)]).member(0)
            marginal = rng.random(4)
            mu = LabeledDistribution.realizable(marginal / marginal.sum(), concept)
            h = rng.integers(0, 2, 4)
            report = teacher_game_check(h, mu, labels)
            self.assertAlmostEqual(report.gap, 0.5 * true_risk(h, mu, labels), delta=1e-9)
            self.assertTrue(report.deterministic_labels)

    def test_noisy_labels_compare_against_bayes(self):
        rng = np.random.default_rng(7)
        labels = pure_pair(0.4)
        domain = Domain.line(4)
        for _ in range(50):
            table = rng.random((4, 2))
            mu = LabeledDistribution.from_table(domain, table / table.sum())
            report = teacher_game_check(rng.integers(0, 2, 4), mu, labels)
            self.assertTrue(report.holds)

    def test_unequal_error_rates(self):
        labels = LabelPair(DensityMatrix(np.diag([0.6, 0.4, 0.0])), DensityMatrix(np.diag([0.0, 0.4, 0.6])))
        self.assertAlmostEqual(labels.noise.eta0, 0.0, places=9)
        self.assertAlmostEqual(labels.noise.eta1, 0.4, places=9)
        mu = LabeledDistribution.from_table(Domain.line(2), np.array([[0.8, 0.0], [0.0, 0.2]]))
        report = teacher_game_check(np.array([1, 0]), mu, labels)
        self.assertAlmostEqual(report.expected_rejection, 0.34, places=9)
        self.assertAlmostEqual(report.optimal_rejection, 0.04, places=9)
        self.assertAlmostEqual(report.gap, 0.30, places=9)
        self.assertAlmostEqual(report.half_excess_over_bayes, 0.30, places=9)
        self.assertTrue(report.holds)

    def test_unequal_error_rates_random_tables(self):
        rng = np.random.default_rng(8)
        labels = LabelPair(DensityMatrix(np.diag([0.6, 0.4, 0.0])), DensityMatrix(np.diag([0.0, 0.4, 0.6])))
        domain = Domain.line(4)
        for _ in range(50):
            table = rng.random((4, 2))
            mu = LabeledDistribution.from_table(domain, table / table.sum())
            report = teacher_game_check(rng.integers(0, 2, 4), mu, labels)
            self.assertAlmostEqual(report.gap, report.half_excess_over_bayes, delta=1e-9)

    def test_unequal_purity(self):
        labels = LabelPair(DensityMatrix.basis_state(2, 0), DensityMatrix.maximally_mixed(2))
        mu = LabeledDistribution.point_mass(Domain.line(1), "1", 0)
        with self.assertRaises(UnsupportedRegime):
            teacher_game_check(np.zeros(1), mu, labels)
