import os
import unittest

import numpy as np

from ugvdefend.agents.policies import DoNothingPolicy, GreedyPolicy, RandomPolicy
from ugvdefend.core.components import Experiment
from ugvdefend.core.errors import ConfigurationError
from ugvdefend.env_integrated.clock import PacedClock, SimulatedClock
from ugvdefend.env_integrated.mission import (
    IntegratedScenario, integrated_scenario_from_dict, load_integrated_scenario, run_mission,
)
from ugvdefend.env_integrated.transcript import MissionTranscript
from ugvdefend.env_simple.oracles import RepairOraclePolicy

CONFIG_DIR = os.path.join(os.path.dirname(__file__), "..", "..", "configs")

NO_ATTACKS = IntegratedScenario(max_time=60.0, route_length=100.0, speed=2.0, attacks_enabled=False)
EVERY_FIVE_SECONDS = IntegratedScenario(max_time=60.0, min_attack_bound=5.0, max_attack_bound=5.0, seed=7)


class TestRunMission(unittest.TestCase):
    def test_undisturbed_mission_arrives_on_time(self):
        transcript = MissionTranscript()
        result = run_mission(DoNothingPolicy(), NO_ATTACKS, transcript=transcript)

        self.assertTrue(result.success)
        self.assertAlmostEqual(result.elapsed, 50.0, places=6)
        self.assertEqual(result.attacks_injected, 0)
        self.assertEqual(result.responses, 0)
        self.assertEqual(result.distance_remaining, 0.0)
        # 500 driven periods at +2 and the goal bonus
        self.assertEqual(result.total_reward, 500 * 2.0 + 50.0)
        self.assertEqual(transcript.events[-1]["event"], "terminal")
        self.assertEqual(len(transcript.of_type("tick")), 500)

    def test_never_repairing_fails(self):
        # after an odd number of attacks the vehicle is always compromised, so it cannot drive 50 s in time
        result = run_mission(DoNothingPolicy(), EVERY_FIVE_SECONDS)
        self.assertFalse(result.success)
        self.assertAlmostEqual(result.elapsed, 60.0, places=6)
        self.assertEqual(result.attacks_injected, 11)
        self.assertGreater(result.distance_remaining, 0.0)

    def test_repairing_agent_succeeds(self):
        oracle = RepairOraclePolicy(EVERY_FIVE_SECONDS.scenario)
        for seed in range(5):
            transcript = MissionTranscript()
            result = run_mission(oracle, IntegratedScenario(max_time=120.0, seed=seed), transcript=transcript)
            self.assertTrue(result.success, f"seed {seed}")
            self.assertGreater(result.attacks_injected, 0)
            self.assertEqual(result.responses, result.attacks_injected)
            self.assertEqual(len(transcript.of_type("attack")), result.attacks_injected)

    def test_attack_gaps_within_bounds(self):
        transcript = MissionTranscript(record_ticks=False)
        scenario = IntegratedScenario(max_time=120.0, min_attack_bound=5.0, max_attack_bound=10.0, seed=3)
        run_mission(RepairOraclePolicy(scenario.scenario), scenario, transcript=transcript)
        times = [0.0] + [e["payload"]["scheduled_time"] for e in transcript.of_type("attack")]
        gaps = np.diff(times)
        self.assertGreaterEqual(len(gaps), 4)
        self.assertTrue(np.all(gaps >= 5.0 - 1e-6) and np.all(gaps <= 10.0 + 1e-6), gaps)

    def test_deterministic(self):
        scenario = IntegratedScenario(max_time=60.0, seed=11)
        first, second = MissionTranscript(), MissionTranscript()
        a = run_mission(RandomPolicy(7, seed=1), scenario, transcript=first)
        b = run_mission(RandomPolicy(7, seed=1), scenario, transcript=second)
        self.assertEqual(a, b)
        self.assertEqual(list(first.lines()), list(second.lines()))

    def test_outcome_independent_of_clock_pacing(self):
        scenario = IntegratedScenario(max_time=20.0, route_length=30.0, seed=5)
        oracle = RepairOraclePolicy(scenario.scenario)
        simulated = run_mission(oracle, scenario, clock=SimulatedClock())
        paced = run_mission(oracle, scenario, clock=PacedClock(clock_scale=1000.0))
        self.assertEqual(simulated, paced)

    def test_policy_space_mismatch(self):
        exp2_policy = GreedyPolicy(np.zeros((192, 10)))
        with self.assertRaises(ConfigurationError):
            run_mission(exp2_policy, IntegratedScenario(experiment=Experiment.EXP1))
        with self.assertRaises(ConfigurationError):
            run_mission(RandomPolicy(10, seed=0), IntegratedScenario(experiment=Experiment.EXP1))

    def test_exp2_mission(self):
        scenario = IntegratedScenario(experiment=Experiment.EXP2, seed=2)
        self.assertTrue(run_mission(RepairOraclePolicy(scenario.scenario), scenario).success)


class TestIntegratedScenario(unittest.TestCase):
    def test_invalid_bounds(self):
        with self.assertRaises(ConfigurationError):
            IntegratedScenario(min_attack_bound=10.0, max_attack_bound=5.0)
        with self.assertRaises(ConfigurationError):
            IntegratedScenario(max_time=8.0, min_attack_bound=5.0, max_attack_bound=10.0)

    def test_bounds_ignored_without_attacks(self):
        self.assertFalse(IntegratedScenario(max_time=8.0, attacks_enabled=False).attacks_enabled)

    def test_clock_scale_below_one(self):
        with self.assertRaises(ConfigurationError):
            IntegratedScenario(clock_scale=0.5)

    def test_from_dict(self):
        scenario = integrated_scenario_from_dict({"experiment": "Exp2", "seed": 4, "integrated": {"speed": 1.0}})
        self.assertIs(scenario.experiment, Experiment.EXP2)
        self.assertEqual(scenario.seed, 4)
        self.assertEqual(scenario.speed, 1.0)
        self.assertEqual(scenario.max_time, 120.0)

    def test_unknown_key(self):
        with self.assertRaises(ConfigurationError):
            integrated_scenario_from_dict({"integrated": {"warp": 9}})

    def test_shipped_config(self):
        scenario = load_integrated_scenario(os.path.join(CONFIG_DIR, "integrated.yaml"))
        self.assertEqual((scenario.min_attack_bound, scenario.max_attack_bound), (5.0, 10.0))
        self.assertEqual(scenario.clock_scale, 50.0)
        self.assertEqual(scenario.control_period, 0.1)


if __name__ == '__main__':
    unittest.main()
