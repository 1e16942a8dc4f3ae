import math

import numpy as np
from django.test import SimpleTestCase

from pac_lab.exceptions import (
    DegenerateNoise,
    DimensionMismatch,
    IndistinguishableStates,
    InvalidState,
)

from .literals import format_state_text, parse_complex_literal, parse_state_text
from .operations import (
    binary_entropy,
    error_rates,
    fidelity,
    helstrom_success_probability,
    holevo_helstrom,
    measure,
    mixture_eigenvalues,
    success_probability,
    trace_distance,
    von_neumann_entropy,
)
from .states import (
    DensityMatrix,
    NoisePair,
    PureState,
    TwoOutcomePovm,
    matrices_close,
    random_density_matrix,
    random_pure_state,
    tensor,
)

SQRT2 = math.sqrt(2.0)


def ground_state_pair():
    phi0 = PureState([0, 1, 0])
    phi1 = PureState(np.array([1, -1, 0]) / SQRT2)
    return phi0, phi1


def random_projective_povm(dim, rng):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, _ = np.linalg.qr(g)
    rank = int(rng.integers(0, dim + 1))
    cols = q[:, :rank]
    return TwoOutcomePovm.from_effect(cols @ cols.conj().T)


class StateValidationTests(SimpleTestCase):
    def test_rejects_non_unit_trace(self):
        with self.assertRaises(InvalidState):
            DensityMatrix(np.eye(2))

    def test_rejects_negative_eigenvalue(self):
        with self.assertRaises(InvalidState):
            DensityMatrix(np.diag([1.5, -0.5]))

    def test_rejects_non_hermitian(self):
        with self.assertRaises(InvalidState):
            DensityMatrix([[0.5, 0.5], [0.0, 0.5]])

    def test_pure_state_norm(self):
        with self.assertRaises(InvalidState):
            PureState([1, 1])

    def test_matrix_is_read_only(self):
        rho = DensityMatrix.maximally_mixed(2)
        with self.assertRaises(ValueError):
            rho.matrix[0, 0] = 1.0

    def test_povm_must_sum_to_identity(self):
        with self.assertRaises(InvalidState):
            TwoOutcomePovm(np.eye(2), np.eye(2))

    def test_noise_pair_guard(self):
        self.assertEqual(NoisePair(0.1, 0.2).require_learnable().total, NoisePair(0.1, 0.2).total)
        with self.assertRaises(DegenerateNoise):
            NoisePair(0.5, 0.5).require_learnable()


class TraceDistanceFidelityTests(SimpleTestCase):
    def test_orthogonal_and_identical(self):
        zero, one = DensityMatrix.basis_state(2, 0), DensityMatrix.basis_state(2, 1)
        self.assertAlmostEqual(trace_distance(zero, one), 2.0, places=12)
        self.assertAlmostEqual(trace_distance(zero, zero), 0.0, places=12)
        self.assertAlmostEqual(fidelity(zero, zero), 1.0, places=9)
        self.assertAlmostEqual(fidelity(zero, one), 0.0, places=9)

    def test_ground_state_pair_distance(self):
        phi0, phi1 = ground_state_pair()
        expected = 2 * math.sqrt(1 - phi0.overlap(phi1) ** 2)
        self.assertAlmostEqual(trace_distance(phi0.density(), phi1.density()), SQRT2, places=9)
        self.assertAlmostEqual(expected, SQRT2, places=12)

    def test_pure_fidelity_is_overlap(self):
        psi = PureState([1, 0])
        phi = PureState(np.array([1, 1]) / SQRT2)
        self.assertAlmostEqual(fidelity(psi.density(), phi.density()), 1 / SQRT2, places=7)

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            trace_distance(DensityMatrix.maximally_mixed(2), DensityMatrix.maximally_mixed(3))

    def test_fuchs_van_de_graaf_sandwich(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            dim = int(rng.integers(2, 4))
            rho, sigma = random_density_matrix(dim, rng), random_density_matrix(dim, rng)
            distance = trace_distance(rho, sigma)
            f = fidelity(rho, sigma)
            self.assertLessEqual(1 - distance / 2, f + 1e-9)
            self.assertLessEqual(f, math.sqrt(max(0.0, 1 - distance**2 / 4)) + 1e-9)

    def test_fidelity_multiplicative_under_tensor(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            a, b, c, d = (random_density_matrix(2, rng) for _ in range(4))
            self.assertAlmostEqual(
                fidelity(tensor(a, b), tensor(c, d)), fidelity(a, c) * fidelity(b, d), delta=1e-9
            )


class HolevoHelstromTests(SimpleTestCase):
    def test_orthogonal_pure_states(self):
        zero, one = DensityMatrix.basis_state(2, 0), DensityMatrix.basis_state(2, 1)
        povm = holevo_helstrom(zero, one)
        self.assertTrue(matrices_close(povm.e0, np.diag([1, 0])))
        self.assertTrue(matrices_close(povm.e1, np.diag([0, 1])))
        rates = error_rates(povm, zero, one)
        self.assertAlmostEqual(rates.eta0, 0.0, places=12)
        self.assertAlmostEqual(rates.eta1, 0.0, places=12)

    def test_ground_state_projector(self):
        phi0, phi1 = ground_state_pair()
        povm = holevo_helstrom(phi0.density(), phi1.density())
        v = np.array([SQRT2 - 1, 1, 0])
        expected = np.outer(v, v) / (v @ v)
        self.assertTrue(matrices_close(povm.e0, expected, atol=1e-9))

    def test_ground_state_error_rates(self):
        phi0, phi1 = ground_state_pair()
        sigma0, sigma1 = phi0.density(), phi1.density()
        rates = error_rates(holevo_helstrom(sigma0, sigma1), sigma0, sigma1)
        expected = (1 - SQRT2 / 2) / 2
        self.assertAlmostEqual(rates.eta0, expected, places=9)
        self.assertAlmostEqual(rates.eta1, expected, places=9)
        self.assertAlmostEqual(helstrom_success_probability(sigma0, sigma1), 0.5 * (1 + SQRT2 / 2), places=9)

    def test_zero_difference_splits_on_support(self):
        sigma0 = DensityMatrix(np.diag([0.5, 0.5, 0.0, 0.0]))
        sigma1 = DensityMatrix(np.diag([0.0, 0.5, 0.5, 0.0]))
        povm = holevo_helstrom(sigma0, sigma1)
        self.assertTrue(matrices_close(povm.e0, np.diag([1, 1, 0, 0])))
        self.assertTrue(matrices_close(povm.e1, np.diag([0, 0, 1, 1])))

    def test_identical_inputs_raise(self):
        half = DensityMatrix.maximally_mixed(2)
        with self.assertRaises(IndistinguishableStates):
            holevo_helstrom(half, half)

    def test_constant_povm_rates(self):
        phi0, phi1 = ground_state_pair()
        rates = error_rates(TwoOutcomePovm.constant(3, 0), phi0.density(), phi1.density())
        self.assertEqual((rates.eta0, rates.eta1), (0.0, 1.0))

    def test_helstrom_bounds(self):
        zero = DensityMatrix.basis_state(2, 0)
        self.assertAlmostEqual(helstrom_success_probability(zero, DensityMatrix.basis_state(2, 1)), 1.0)
        self.assertAlmostEqual(helstrom_success_probability(zero, zero), 0.5)

    def test_optimality_on_random_pairs(self):
        rng = np.random.default_rng(2024)
        for _ in range(200):
            dim = int(rng.integers(2, 5))
            sigma0, sigma1 = random_density_matrix(dim, rng), random_density_matrix(dim, rng)
            povm = holevo_helstrom(sigma0, sigma1)
            optimum = helstrom_success_probability(sigma0, sigma1)
            self.assertAlmostEqual(success_probability(povm, sigma0, sigma1), optimum, delta=1e-9)

            rates = error_rates(povm, sigma0, sigma1)
            distance = trace_distance(sigma0, sigma1)
            self.assertAlmostEqual(rates.total, 1 - distance / 2, delta=1e-9)
            self.assertLess(max(rates.eta0, rates.eta1), 0.5)
            self.assertLessEqual(1 / rates.denominator, 4 / distance + 1e-9)

    def test_no_projective_candidate_beats_it(self):
        rng = np.random.default_rng(99)
        for _ in range(10):
            dim = int(rng.integers(2, 5))
            sigma0, sigma1 = random_density_matrix(dim, rng), random_density_matrix(dim, rng)
            optimum = helstrom_success_probability(sigma0, sigma1)
            for _ in range(100):
                candidate = random_projective_povm(dim, rng)
                self.assertLessEqual(success_probability(candidate, sigma0, sigma1), optimum + 1e-9)


class MeasureTests(SimpleTestCase):
    def test_deterministic_outcomes(self):
        rng = np.random.default_rng(0)
        zero, one = DensityMatrix.basis_state(2, 0), DensityMatrix.basis_state(2, 1)
        povm = holevo_helstrom(zero, one)
        self.assertTrue(all(measure(povm, one, rng) == 1 for _ in range(100)))
        always0 = TwoOutcomePovm.constant(2, 0)
        self.assertTrue(all(measure(always0, one, rng) == 0 for _ in range(100)))

    def test_consumes_one_uniform(self):
        povm = TwoOutcomePovm.constant(2, 1)
        rng = np.random.default_rng(5)
        measure(povm, DensityMatrix.maximally_mixed(2), rng)
        reference = np.random.default_rng(5)
        reference.random()
        self.assertEqual(rng.random(), reference.random())

    def test_flip_frequency_matches_error_rate(self):
        phi0, phi1 = ground_state_pair()
        sigma0 = phi0.density()
        povm = holevo_helstrom(sigma0, phi1.density())
        rng = np.random.default_rng(31)
        draws = 200_000
        ones = sum(measure(povm, sigma0, rng) for _ in range(draws))
        self.assertAlmostEqual(ones / draws, 0.1464466, delta=0.003)


class MixtureAndEntropyTests(SimpleTestCase):
    def test_mixture_examples(self):
        zero, one = PureState.basis(2, 0), PureState.basis(2, 1)
        plus = PureState(np.array([1, 1]) / SQRT2)
        self.assertEqual(mixture_eigenvalues(1.0, 0.0, zero, plus), (1.0, 0.0))
        l1, l2 = mixture_eigenvalues(0.5, 0.5, zero, one)
        self.assertAlmostEqual(l1, 0.5)
        self.assertAlmostEqual(l2, 0.5)
        l1, l2 = mixture_eigenvalues(0.5, 0.5, zero, plus)
        self.assertAlmostEqual(l1, 0.8535534, places=7)
        self.assertAlmostEqual(l2, 0.1464466, places=7)

    def test_mixture_matches_dense_eigensolver(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            dim = int(rng.integers(2, 6))
            psi, phi = random_pure_state(dim, rng), random_pure_state(dim, rng)
            alpha, beta = rng.random(2)
            m = alpha * np.outer(psi.amplitudes, psi.amplitudes.conj()) + beta * np.outer(
                phi.amplitudes, phi.amplitudes.conj()
            )
            dense = np.sort(np.linalg.eigvalsh(m))[::-1][:2]
            l1, l2 = mixture_eigenvalues(alpha, beta, psi, phi)
            self.assertAlmostEqual(l1, dense[0], delta=1e-10)
            self.assertAlmostEqual(l2, dense[1], delta=1e-10)

    def test_von_neumann_entropy(self):
        self.assertAlmostEqual(von_neumann_entropy(DensityMatrix.basis_state(3, 1)), 0.0, places=12)
        self.assertAlmostEqual(von_neumann_entropy(DensityMatrix.maximally_mixed(2)), 1.0, places=12)
        phi0, phi1 = ground_state_pair()
        mixture = DensityMatrix((phi0.density().matrix + phi1.density().matrix) / 2)
        self.assertAlmostEqual(von_neumann_entropy(mixture), 0.6009810, places=6)
        self.assertAlmostEqual(binary_entropy(0.8535534), 0.6009810, places=6)

    def test_entropy_range(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            rho = random_density_matrix(4, rng)
            value = von_neumann_entropy(rho)
            self.assertGreaterEqual(value, 0.0)
            self.assertLessEqual(value, 2.0 + 1e-12)


class LiteralTests(SimpleTestCase):
    def test_complex_literals(self):
        self.assertEqual(parse_complex_literal("1-2i"), complex(1, -2))
        self.assertEqual(parse_complex_literal("0.5+i"), complex(0.5, 1))
        self.assertEqual(parse_complex_literal("-i"), complex(0, -1))
        self.assertEqual(parse_complex_literal("2.5e-1"), complex(0.25, 0))
        self.assertEqual(parse_complex_literal("3i"), complex(0, 3))

    def test_bad_literal(self):
        with self.assertRaises(InvalidState):
            parse_complex_literal("1+2j")

    def test_density_matrix_file(self):
        text = "# qubit\n2\n0.5 0.5i\n-0.5i 0.5\n"
        rho = parse_state_text(text)
        self.assertTrue(matrices_close(rho.matrix, [[0.5, 0.5j], [-0.5j, 0.5]]))
        self.assertTrue(parse_state_text(format_state_text(rho)).close_to(rho))

    def test_pure_state_file(self):
        state = parse_state_text("3 pure\n0 1 0\n")
        self.assertIsInstance(state, PureState)
        self.assertEqual(state.dim, 3)

    def test_wrong_shape(self):
        with self.assertRaises(InvalidState):
            parse_state_text("2\n1 0\n")
