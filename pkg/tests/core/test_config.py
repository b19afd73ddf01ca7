import os
import tempfile
import unittest

from ugvdefend.core.components import Experiment
from ugvdefend.core.config import ScenarioConfig, load_scenario_config, scenario_config_from_dict
from ugvdefend.core.errors import ConfigurationError

CONFIG_DIR = os.path.join(os.path.dirname(__file__), "..", "..", "configs")


class TestScenarioConfig(unittest.TestCase):
    def setUp(self) -> None:
        self.tmp = tempfile.TemporaryDirectory()
        return super().setUp()

    def tearDown(self) -> None:
        self.tmp.cleanup()
        return super().tearDown()

    def write(self, text: str) -> str:
        path = os.path.join(self.tmp.name, "config.yaml")
        with open(path, "w") as file:
            file.write(text)
        return path

    def test_defaults(self):
        cfg = scenario_config_from_dict({})
        self.assertEqual(cfg, ScenarioConfig())
        self.assertEqual((cfg.max_timesteps, cfg.goal_step, cfg.attack_prob), (1800, 800, 0.1))
        self.assertIs(cfg.experiment, Experiment.EXP1)

    def test_load_file(self):
        cfg = load_scenario_config(self.write("experiment: Exp2\nattack_prob: 0.9\nrewards:\n  goal_bonus: 75\n"))
        self.assertIs(cfg.experiment, Experiment.EXP2)
        self.assertEqual(cfg.attack_prob, 0.9)
        self.assertEqual(cfg.rewards.goal_bonus, 75.0)
        self.assertEqual(cfg.rewards.timeout_penalty, -10.0)

    def test_empty_file(self):
        self.assertEqual(load_scenario_config(self.write("")), ScenarioConfig())

    def test_shipped_configs(self):
        self.assertIs(load_scenario_config(os.path.join(CONFIG_DIR, "exp2.yaml")).experiment, Experiment.EXP2)
        self.assertEqual(load_scenario_config(os.path.join(CONFIG_DIR, "exp1_training.yaml")).attack_prob, 0.9)

    def test_invalid_values(self):
        for text in ("goal_step: 2000\n", "attack_prob: 1.5\n", "experiment: Exp3\n", "max_timesteps: ten\n",
                     "unknown_key: 1\n", "rewards: 5\n", "rewards:\n  bonus: 1\n", "- a list\n", "a: [unclosed\n"):
            with self.subTest(text=text):
                with self.assertRaises(ConfigurationError):
                    load_scenario_config(self.write(text))

    def test_missing_file(self):
        with self.assertRaises(ConfigurationError):
            load_scenario_config(os.path.join(self.tmp.name, "missing.yaml"))

    def test_overrides(self):
        cfg = ScenarioConfig().with_overrides(seed=5, attack_prob=None)
        self.assertEqual(cfg.seed, 5)
        self.assertEqual(cfg.attack_prob, 0.1)
        self.assertEqual(cfg.to_dict()["experiment"], "Exp1")

    def test_invalid_seed_overrides(self):
        for seed in (-1, 2**64, True, 1.5, "3"):
            with self.subTest(seed=seed):
                with self.assertRaises(ConfigurationError):
                    ScenarioConfig().with_overrides(seed=seed)


if __name__ == '__main__':
    unittest.main()
