import unittest

from hypothesis import given, strategies as st

from ugvdefend.core.components import Experiment
from ugvdefend.core.errors import ConfigurationError
from ugvdefend.env_integrated.mission import MissionResult
from ugvdefend.env_simple.rollout import EpisodeResult
from ugvdefend.harness.summary import Algorithm, RunSummary, TransferReport, wilson_interval


class TestAlgorithm(unittest.TestCase):
    def test_cli_names(self):
        self.assertIs(Algorithm.from_cli_name("qlearning"), Algorithm.QLEARNING)
        self.assertIs(Algorithm.from_cli_name("dqn"), Algorithm.DQN)
        with self.assertRaises(ConfigurationError):
            Algorithm.from_cli_name("sarsa")


class TestWilsonInterval(unittest.TestCase):
    def test_known_value(self):
        low, high = wilson_interval(16, 20)
        self.assertAlmostEqual(low, 0.584, places=3)
        self.assertAlmostEqual(high, 0.919, places=3)

    def test_extremes(self):
        self.assertAlmostEqual(wilson_interval(0, 10)[0], 0.0, places=12)
        self.assertAlmostEqual(wilson_interval(10, 10)[1], 1.0, places=12)

    @given(st.integers(1, 500).flatmap(lambda n: st.tuples(st.integers(0, n), st.just(n))))
    def test_contains_point_estimate(self, pair):
        successes, n = pair
        low, high = wilson_interval(successes, n)
        self.assertLessEqual(low, successes / n + 1e-12)
        self.assertGreaterEqual(high, successes / n - 1e-12)

    def test_invalid(self):
        with self.assertRaises(ConfigurationError):
            wilson_interval(1, 0)
        with self.assertRaises(ConfigurationError):
            wilson_interval(5, 4)


class TestReports(unittest.TestCase):
    def test_run_summary(self):
        results = [EpisodeResult(0, 70.0, 10, True), EpisodeResult(1, -40.0, 30, False)]
        summary = RunSummary.from_results(results, algorithm=Algorithm.QLEARNING, experiment=Experiment.EXP1,
                                          seed=3, attack_prob=0.1)
        self.assertEqual(summary.mean_reward, 15.0)
        self.assertEqual(summary.mean_timesteps, 20.0)
        self.assertEqual(summary.success_rate, 0.5)
        self.assertEqual(summary.to_dict()["algorithm"], "QLearning")
        self.assertIn("QLearning on Exp1", summary.describe())

    def test_transfer_report(self):
        results = [MissionResult(True, 50.0, 6, 6, 900.0), MissionResult(False, 120.0, 15, 0, -200.0)]
        report = TransferReport.from_results(results, experiment=Experiment.EXP1, seed=0)
        self.assertEqual(report.successes, 1)
        self.assertEqual(report.mean_attacks, 10.5)
        self.assertLess(report.interval_low, 0.5)
        self.assertEqual(report.to_dict()["experiment"], "Exp1")

    def test_empty_results(self):
        with self.assertRaises(ConfigurationError):
            RunSummary.from_results([], algorithm=Algorithm.DQN, experiment=Experiment.EXP1, seed=0, attack_prob=0.1)


if __name__ == '__main__':
    unittest.main()
