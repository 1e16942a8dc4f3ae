import json
import math
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock, skipUnless

import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from scipy.stats import binom

from pac_lab.conf import lab_setting
from pac_lab.exceptions import DegenerateNoise, SpecError
from pac_lab.seeding import (
    MASK64,
    MEASUREMENT,
    SAMPLING,
    example_uniforms,
    splitmix64,
    splitmix64_array,
    stream_key,
    trial_seed,
)

from .management.commands.diagnose import COLUMNS
from .runner import (
    CSV_COLUMNS,
    ExperimentSetup,
    ExperimentSpec,
    TrialRecord,
    format_records,
    parse_records,
    run_experiment,
)
from .summary import summarize


def spec_data(**overrides):
    data = {
        "scenario": "realizable",
        "concept_class": "thresholds:n=10",
        "labels": "orthogonal",
        "distribution": "realizable:concept=3",
        "learner": "erm01",
        "sample_sizes": [50, 200],
        "epsilons": [0.1],
        "delta": 0.1,
        "trials": 3,
        "master_seed": 11,
    }
    data.update(overrides)
    return data


def geometric_sizes(smallest, largest):
    """Sample sizes spaced by √2 from smallest to largest."""
    steps = int(round(2 * math.log2(largest / smallest)))
    return sorted({int(round(smallest * 2 ** (k / 2))) for k in range(steps + 1)})


def realizable_pair_data(labels, eta_bound):
    """Two-point distributions on t0, t1, t2 whose target t1 loses every tie; the wrong guess costs 1.5ε."""

    def build(eps):
        return {
            "scenario": "realizable",
            "concept_class": "thresholds:n=2",
            "labels": labels,
            "distribution": f"realizable-pair:epsilon={1.5 * eps:.6g},target=2",
            "learner": "realizable",
            "eta_bound": eta_bound,
        }

    return build


def biased_coin_data(labels, kappa):
    """One point whose label is 1 with probability ½ + 0.75ε; predicting 0 costs 1.5ε."""

    def build(eps):
        return {
            "scenario": "agnostic",
            "concept_class": "thresholds:n=1",
            "labels": labels,
            "distribution": f"agnostic:concept=0,flip={0.5 - 0.75 * eps / kappa:.6g}",
            "learner": "erm-nc",
        }

    return build


def minimal_sizes(build, epsilons, sizes, trials, delta=0.1):
    """Smallest m reaching failure frequency ≤ δ, one run per ε."""
    minimal = {}
    for eps in epsilons:
        data = {**build(eps), "epsilons": [eps], "sample_sizes": sizes, "delta": delta, "trials": trials, "master_seed": 3}
        records = run_experiment(ExperimentSpec.from_data(data), record_timing=False).records
        minimal[eps] = summarize(records, [eps], delta).minimal_m[eps]
    return minimal


def fitted_slope(minimal, smallest):
    fitted = [(eps, m) for eps, m in minimal.items() if m is not None and m > smallest]
    return float(np.polyfit(np.log([e for e, _ in fitted]), np.log([m for _, m in fitted]), 1)[0])


class ExperimentSpecTests(SimpleTestCase):
    def test_defaults(self):
        data = spec_data()
        del data["learner"], data["master_seed"]
        spec = ExperimentSpec.from_data(data)
        self.assertEqual(spec.learner, "realizable")
        self.assertEqual(spec.master_seed, lab_setting("DEFAULT_SEED"))
        self.assertEqual(spec.labels, "orthogonal")
        self.assertEqual(spec.eta_bound, 0.0)
        self.assertEqual(spec.sample_sizes, (50, 200))

    def test_empty_grid(self):
        with self.assertRaises(SpecError):
            ExperimentSpec.from_data(spec_data(sample_sizes=[]))

    def test_bad_values(self):
        for bad in ({"learner": "svm"}, {"trials": 0}, {"epsilons": [1.5]}, {"epsilons": []}, {"delta": 0}):
            with self.subTest(bad=bad), self.assertRaises(SpecError):
                ExperimentSpec.from_data(spec_data(**bad))

    def test_file_overrides(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "config.json"
            path.write_text(json.dumps(spec_data()))
            spec = ExperimentSpec.from_file(path, master_seed=99, trials=None)
        self.assertEqual(spec.master_seed, 99)
        self.assertEqual(spec.trials, 3)

    def test_unresolvable_names(self):
        spec = ExperimentSpec.from_data(spec_data(concept_class="hexagons:n=3"))
        with self.assertRaises(SpecError):
            ExperimentSetup.from_spec(spec)

    def test_grid_from_bound(self):
        spec = ExperimentSpec.from_data(
            spec_data(scenario="agnostic", labels="ground-state", m_from_bound=True, epsilons=[0.2, 0.1])
        )
        grid = ExperimentSetup.from_spec(spec).grid()
        self.assertEqual([p.epsilon for p in grid], [0.2, 0.1])
        self.assertGreater(grid[1].m, 3.9 * grid[0].m)


class RunExperimentTests(SimpleTestCase):
    def test_noiseless_realizable_has_zero_excess(self):
        result = run_experiment(ExperimentSpec.from_data(spec_data(sample_sizes=[400], trials=5)))
        self.assertEqual(len(result.records), 5)
        self.assertEqual(result.failures, [])
        for record in result.records:
            self.assertEqual(record.excess_risk, 0.0)

    def test_rerun_is_byte_identical(self):
        spec = ExperimentSpec.from_data(
            spec_data(scenario="agnostic", labels="ground-state", distribution="agnostic:concept=4,flip=0.2", learner="erm-nc")
        )
        first = format_records(run_experiment(spec, record_timing=False).records)
        second = format_records(run_experiment(spec, record_timing=False).records)
        self.assertEqual(first, second)
        self.assertTrue(first.startswith(",".join(CSV_COLUMNS) + "\n"))

    def test_parallel_matches_serial(self):
        spec = ExperimentSpec.from_data(spec_data(labels="symmetric:eta=0.1", learner="realizable", trials=4))
        serial = run_experiment(spec, n_jobs=1, record_timing=False)
        parallel = run_experiment(spec, n_jobs=2, record_timing=False)
        self.assertEqual(format_records(serial.records), format_records(parallel.records))

    def test_seed_changes_records(self):
        data = spec_data(labels="symmetric:eta=0.2", distribution="agnostic:concept=3,flip=0.3", learner="erm-nc")
        first = run_experiment(ExperimentSpec.from_data(data), record_timing=False).records
        second = run_experiment(ExperimentSpec.from_data({**data, "master_seed": 12}), record_timing=False).records
        self.assertNotEqual([r.seed for r in first], [r.seed for r in second])

    def test_failures_are_recorded(self):
        spec = ExperimentSpec.from_data(spec_data(sample_sizes=[20], trials=2))
        with mock.patch("experiments.runner.measure_labels", side_effect=DegenerateNoise("stuck")):
            result = run_experiment(spec, record_timing=False)
        self.assertEqual(result.records, [])
        self.assertEqual([f.trial for f in result.failures], [0, 1])
        self.assertEqual(result.failures[0].error, "DegenerateNoise: stuck")

    def test_agnostic_failure_rate_at_the_bound(self):
        spec = ExperimentSpec.from_data(
            {
                "scenario": "agnostic",
                "concept_class": "thresholds:n=50",
                "labels": "ground-state",
                "distribution": "agnostic:concept=25,flip=0.2",
                "learner": "erm-nc",
                "epsilons": [0.2],
                "delta": 0.1,
                "trials": 300,
                "master_seed": 7,
                "m_from_bound": True,
            }
        )
        result = run_experiment(spec, record_timing=False)
        self.assertEqual(result.failures, [])
        self.assertEqual(len(result.records), 300)
        failures = sum(r.excess_risk > 0.2 for r in result.records)
        self.assertLessEqual(failures, binom.ppf(0.95, 300, 0.1))
        self.assertTrue(all(r.excess_risk >= -1e-12 for r in result.records))

    def test_realizable_scales_better_than_agnostic_small(self):
        realizable = minimal_sizes(
            realizable_pair_data("orthogonal", 0.0), [0.2, 0.1, 0.05], geometric_sizes(4, 2048), trials=100
        )
        agnostic = minimal_sizes(
            biased_coin_data("orthogonal", 1.0), [0.1, 0.05, 0.025], geometric_sizes(4, 4096), trials=100
        )
        for minimal in (realizable, agnostic):
            for m in minimal.values():
                self.assertIsNotNone(m)
                self.assertGreater(m, 4)
        realizable_slope = fitted_slope(realizable, 4)
        agnostic_slope = fitted_slope(agnostic, 4)
        self.assertLess(realizable_slope, 0.0)
        self.assertLess(agnostic_slope, realizable_slope)

    @skipUnless(lab_setting("SLOW_TESTS"), "set PAC_LAB_SLOW_TESTS=true to run the scaling sweep")
    def test_realizable_scales_better_than_agnostic(self):
        epsilons = [0.4, 0.2, 0.1, 0.05]
        sizes = geometric_sizes(2, 8192)
        # symmetric:eta=0.15 has half trace distance 0.7
        realizable = minimal_sizes(realizable_pair_data("symmetric:eta=0.15", 0.2), epsilons, sizes, trials=200)
        agnostic = minimal_sizes(biased_coin_data("symmetric:eta=0.15", 0.7), epsilons, sizes, trials=200)
        realizable_slope = fitted_slope(realizable, sizes[0])
        agnostic_slope = fitted_slope(agnostic, sizes[0])
        self.assertAlmostEqual(realizable_slope, -1.0, delta=0.3)
        self.assertAlmostEqual(agnostic_slope, -2.0, delta=0.3)
        self.assertLess(agnostic_slope, realizable_slope)


class RecordCsvTests(SimpleTestCase):
    def test_parse_back(self):
        records = [
            TrialRecord(10, 1, 2**63 + 5, 0.1 + 0.2, 0.0),
            TrialRecord(10, 0, 17, 1e-17, 3.25),
            TrialRecord(5, 0, 3, -0.0, 0.0),
        ]
        text = format_records(records)
        self.assertEqual(text.splitlines()[0], "m,trial,seed,excess_risk,elapsed_ms")
        parsed = parse_records(text)
        self.assertEqual(parsed, sorted(records, key=TrialRecord.sort_key))
        self.assertEqual(format_records(parsed), text)

    def test_bad_header(self):
        with self.assertRaises(SpecError):
            parse_records("m,trial,excess\n1,2,3\n")


class SeedingTests(SimpleTestCase):
    def test_splitmix64_first_output(self):
        self.assertEqual(splitmix64(0), 0xE220A8397B1DCDAF)

    def test_array_matches_scalar(self):
        values = [0, 1, 12345, 2**63, MASK64]
        mixed = splitmix64_array(np.array(values, dtype=np.uint64))
        self.assertEqual([int(v) for v in mixed], [splitmix64(v) for v in values])

    def test_trial_seeds(self):
        self.assertEqual(trial_seed(5, 1, 2), trial_seed(5, 1, 2))
        seeds = {trial_seed(5, g, t) for g in range(4) for t in range(50)}
        self.assertEqual(len(seeds), 200)

    def test_example_uniforms_are_per_index(self):
        key = stream_key(99, SAMPLING)
        full = example_uniforms(key, 10)
        np.testing.assert_array_equal(full[4:], example_uniforms(key, 6, start=4))
        self.assertTrue(np.all((full >= 0) & (full < 1)))
        self.assertFalse(np.array_equal(full, example_uniforms(stream_key(99, MEASUREMENT), 10)))


class SummarizeTests(SimpleTestCase):
    def test_zero_excess(self):
        records = [TrialRecord(m, t, t, 0.0, 0.0) for m in (10, 20) for t in range(5)]
        summary = summarize(records, [0.1], 0.05)
        self.assertEqual([row.failure_frequency[0.1] for row in summary.rows], [0.0, 0.0])
        self.assertEqual(summary.minimal_m[0.1], 10)
        self.assertIsNone(summary.slope)

    def test_statistics(self):
        records = [TrialRecord(10, t, t, float(t), 0.0) for t in range(11)]
        row = summarize(records, [4.5], 0.5).rows[0]
        self.assertEqual(row.trials, 11)
        self.assertAlmostEqual(row.mean_excess, 5.0)
        self.assertAlmostEqual(row.median_excess, 5.0)
        self.assertAlmostEqual(row.q90_excess, 9.0)
        self.assertAlmostEqual(row.failure_frequency[4.5], 6 / 11)

    def test_inverse_m_gives_slope_minus_one(self):
        records = [TrialRecord(m, 0, m, 10.0 / m, 0.0) for m in range(1, 2001)]
        summary = summarize(records, [0.4, 0.2, 0.1, 0.05], 0.1)
        self.assertAlmostEqual(summary.slope, -1.0, delta=0.05)

    def test_inverse_sqrt_m_gives_slope_minus_two(self):
        records = [TrialRecord(m, 0, m, 2.0 / math.sqrt(m), 0.0) for m in range(1, 2001)]
        summary = summarize(records, [0.4, 0.2, 0.1, 0.05], 0.1)
        self.assertAlmostEqual(summary.slope, -2.0, delta=0.05)

    def test_empty(self):
        with self.assertRaises(SpecError):
            summarize([], [0.1], 0.1)


class CommandTests(SimpleTestCase):
    def call(self, *args):
        out = StringIO()
        call_command(*args, stdout=out, stderr=StringIO())
        return out.getvalue()

    def test_vcdim(self):
        out = self.call("vcdim", "--class", "axis-rectangles:side=3,dim=2")
        self.assertIn("vc_dimension  4", out)

    def test_discriminate(self):
        out = self.call("discriminate", "--labels", "orthogonal")
        self.assertIn("trace_distance", out)
        self.assertIn("E0:", out)
        self.assertIn("eta1", out)

    def test_bounds(self):
        out = self.call("bounds", "--d", "4", "--epsilon", "0.1", "--delta", "0.05", "--labels", "orthogonal")
        self.assertIn("[agnostic]", out)
        self.assertIn("[realizable]", out)
        self.assertIn("vc_constant", out)
        self.assertRegex(out, r"m_sufficient\s+69658\d\d")

    def test_diagnose_csv(self):
        out = self.call("diagnose", "--d", "2", "--epsilons", "0.01", "0.02", "--labels", "orthogonal")
        lines = out.strip().splitlines()
        self.assertEqual(lines[0], ",".join(COLUMNS))
        self.assertEqual(len(lines), 3)

    def test_diagnose_mixed_labels_leave_information_blank(self):
        with tempfile.TemporaryDirectory() as tmp:
            s0, s1 = Path(tmp) / "s0.txt", Path(tmp) / "s1.txt"
            s0.write_text("2\n1 0\n0 0\n")
            s1.write_text("2\n0.5 0\n0 0.5\n")
            out = self.call("diagnose", "--epsilons", "0.01", "--sigma0", str(s0), "--sigma1", str(s1))
        row = out.strip().splitlines()[1].split(",")
        self.assertEqual(row[COLUMNS.index("I_exact_bits")], "")
        self.assertNotEqual(row[COLUMNS.index("m_lower_pair")], "")

    def test_learn(self):
        out = self.call(
            "learn", "--scenario", "realizable", "--class", "thresholds:n=8", "--labels", "orthogonal",
            "--distribution", "realizable:concept=5", "--learner", "erm01", "--m", "300", "--seed", "4",
        )
        self.assertRegex(out, r"excess_risk\s+0\.0")
        self.assertRegex(out, r"hypothesis\s+00000111")

    def test_experiment_writes_identical_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = Path(tmp) / "config.json"
            config.write_text(json.dumps(spec_data()))
            first, second = Path(tmp) / "a.csv", Path(tmp) / "b.csv"
            self.call("experiment", "--config", str(config), "--out", str(first), "--no-timing")
            out = self.call("experiment", "--config", str(config), "--out", str(second), "--no-timing", "--n-jobs", "2")
            self.assertEqual(first.read_bytes(), second.read_bytes())
            self.assertEqual(len(first.read_text().splitlines()), 1 + 2 * 3)
        self.assertIn("minimal m at epsilon=0.1", out)

    def test_spec_error_exit_code(self):
        with self.assertRaises(CommandError) as ctx:
            self.call("vcdim", "--class", "hexagons:n=3")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_guard_exit_code(self):
        with self.assertRaises(CommandError) as ctx:
            self.call("vcdim", "--class", "full:n=4", "--max-subsets", "1")
        self.assertEqual(ctx.exception.returncode, 3)
