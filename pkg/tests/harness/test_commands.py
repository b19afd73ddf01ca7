import csv
import json
import os
import tempfile
import unittest

import numpy as np

from ugvdefend.agents.qlearning import QTable
from ugvdefend.core.components import Experiment
from ugvdefend.core.errors import ConfigurationError
from ugvdefend.core.scenario import scenario_for
from ugvdefend.env_simple.oracles import RepairOraclePolicy
from ugvdefend.harness.commands import cmd_compare, cmd_eval, cmd_train, cmd_transfer
from ugvdefend.harness.episode_log import episode_returns_from_steps, read_step_log
from ugvdefend.harness.model_file import ModelFile, save_model
from ugvdefend.harness.summary import Algorithm

SMALL_CONFIG = """
experiment: Exp1
max_timesteps: 30
goal_step: 10
attack_prob: 0.0
seed: 0
qlearning:
  episodes: 200
dqn:
  total_timesteps: 1500
  learning_starts: 100
  batch_size: 16
  hidden_size: 8
  buffer_capacity: 1000
  target_sync_interval: 200
  log_interval: 500
integrated:
  route_length: 20.0
  max_time: 60.0
evaluation:
  episodes: 10
  missions: 3
"""


def oracle_model_file(experiment=Experiment.EXP1):
    scenario = scenario_for(experiment)
    oracle = RepairOraclePolicy(scenario)
    values = np.zeros((scenario.num_states, scenario.num_actions))
    for obs in range(scenario.num_states):
        values[obs, oracle(obs)] = 1.0
    return ModelFile(experiment, "qlearning", QTable(values))


def read_rows(path):
    with open(path, encoding="utf-8", newline="") as file:
        return list(csv.DictReader(file))


class CommandTestCase(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.config = self.path("small.yaml")
        with open(self.config, "w", encoding="utf-8") as file:
            file.write(SMALL_CONFIG)

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, *names):
        return os.path.join(self.tmp.name, *names)


class TestTrain(CommandTestCase):
    def test_train_writes_artifacts(self):
        summary = cmd_train(self.config, "qlearning", self.path("q.json"), trace=True)

        self.assertIs(summary.algorithm, Algorithm.QLEARNING)
        # without attacks the greedy policy drives straight to the goal
        self.assertEqual(summary.mean_reward, 2 * 10 + 50)
        self.assertEqual(summary.success_rate, 1.0)
        self.assertEqual(len(read_rows(self.path("q.returns.csv"))), 200)
        self.assertEqual(len(read_step_log(self.path("q.steps.csv"))), 10 * 10)
        with open(self.path("q.summary.json"), encoding="utf-8") as file:
            self.assertEqual(json.load(file)["episodes_evaluated"], 10)

    def test_same_seed_same_model(self):
        cmd_train(self.config, "qlearning", self.path("a.json"), seed=4, episodes=50)
        cmd_train(self.config, "qlearning", self.path("b.json"), seed=4, episodes=50)

        with open(self.path("a.json"), encoding="utf-8") as a, open(self.path("b.json"), encoding="utf-8") as b:
            first, second = json.load(a), json.load(b)
        self.assertEqual(first["payload"], second["payload"])
        self.assertEqual(first["training"], second["training"])
        with open(self.path("a.returns.csv"), "rb") as a, open(self.path("b.returns.csv"), "rb") as b:
            self.assertEqual(a.read(), b.read())

    def test_dqn(self):
        summary = cmd_train(self.config, "dqn", self.path("dqn.json"))
        self.assertIs(summary.algorithm, Algorithm.DQN)
        with open(self.path("dqn.json"), encoding="utf-8") as file:
            self.assertEqual(json.load(file)["payload"]["layer_sizes"], [24, 8, 8, 7])

    def test_refuses_to_overwrite(self):
        cmd_train(self.config, "qlearning", self.path("q.json"), episodes=5)
        with self.assertRaises(ConfigurationError):
            cmd_train(self.config, "qlearning", self.path("q.json"), episodes=5)
        cmd_train(self.config, "qlearning", self.path("q.json"), episodes=5, force=True)

    def test_random_cannot_be_trained(self):
        with self.assertRaises(ConfigurationError):
            cmd_train(self.config, "random", self.path("r.json"))


class TestEval(CommandTestCase):
    def setUp(self):
        super().setUp()
        save_model(oracle_model_file(), self.path("oracle.json"))

    def test_eval_model(self):
        summary = cmd_eval(self.path("oracle.json"), self.config, episodes=5, seed=None, out_dir=self.path("out"))
        self.assertEqual(summary.mean_reward, 70.0)
        self.assertEqual(summary.episodes_evaluated, 5)
        for name in ("eval_steps.csv", "eval_returns.csv", "summary.json"):
            self.assertTrue(os.path.isfile(self.path("out", name)), name)
        self.assertEqual(len(read_rows(self.path("out", "eval_returns.csv"))), 5)

    def test_outputs_are_consistent(self):
        summary = cmd_eval(self.path("oracle.json"), self.config, 4, 2, self.path("out"), algorithm="random")
        returns = [float(row["return"]) for row in read_rows(self.path("out", "eval_returns.csv"))]
        per_episode = episode_returns_from_steps(read_step_log(self.path("out", "eval_steps.csv")))

        self.assertEqual(summary.mean_reward, float(np.mean(returns)))
        for episode, value in enumerate(returns):
            self.assertAlmostEqual(per_episode[episode], value, places=9)

    def test_eval_random_baseline(self):
        summary = cmd_eval(None, self.config, episodes=5, seed=1, out_dir=self.path("out"), algorithm="random")
        self.assertIs(summary.algorithm, Algorithm.RANDOM)
        self.assertLess(summary.mean_reward, 70.0)

    def test_worker_count_does_not_change_results(self):
        local = cmd_eval(self.path("oracle.json"), self.config, 6, 3, self.path("one"), workers=1)
        pooled = cmd_eval(self.path("oracle.json"), self.config, 6, 3, self.path("two"), workers=2)
        self.assertEqual(local, pooled)
        with open(self.path("one", "eval_steps.csv"), "rb") as a, open(self.path("two", "eval_steps.csv"), "rb") as b:
            self.assertEqual(a.read(), b.read())

    def test_invalid_requests(self):
        with self.assertRaises(ConfigurationError):
            cmd_eval(self.path("oracle.json"), self.config, 0, None, self.path("out"))
        with self.assertRaises(ConfigurationError):
            cmd_eval(None, self.config, 5, None, self.path("out"))

        save_model(oracle_model_file(Experiment.EXP2), self.path("exp2.json"))
        with self.assertRaises(ConfigurationError):
            cmd_eval(self.path("exp2.json"), self.config, 5, None, self.path("out"))

    def test_non_empty_output_directory(self):
        os.makedirs(self.path("out"))
        with open(self.path("out", "keep.txt"), "w", encoding="utf-8") as file:
            file.write("x")
        with self.assertRaises(ConfigurationError):
            cmd_eval(self.path("oracle.json"), self.config, 5, None, self.path("out"))


class TestCompare(CommandTestCase):
    def test_compare_strategies(self):
        report = cmd_compare(self.config, [0, 1], self.path("cmp"), episodes=30)

        self.assertEqual(set(report["final_100_mean"]), {"random", "q_argmax", "q_epsilon_greedy"})
        self.assertEqual(report["seeds"], [0, 1])
        self.assertEqual(len(read_rows(self.path("cmp", "returns.csv"))), 30)
        with open(self.path("cmp", "returns.svg"), encoding="utf-8") as file:
            self.assertIn("<svg", file.read())
        self.assertGreater(report["evaluation_mean_reward"]["q_epsilon_greedy"], report["evaluation_mean_reward"]["random"])

    def test_requires_seed(self):
        with self.assertRaises(ConfigurationError):
            cmd_compare(self.config, [], self.path("cmp"))


class TestTransfer(CommandTestCase):
    def test_oracle_model_completes_missions(self):
        save_model(oracle_model_file(), self.path("oracle.json"))
        report = cmd_transfer(self.path("oracle.json"), self.config, None, None, self.path("tr"), paced=False)

        self.assertEqual(report.missions, 3)
        self.assertEqual(report.successes, 3)
        with open(self.path("tr", "transfer.json"), encoding="utf-8") as file:
            self.assertEqual(len(json.load(file)["missions_detail"]), 3)
        with open(self.path("tr", "mission_2.jsonl"), encoding="utf-8") as file:
            events = [json.loads(line) for line in file]
        self.assertEqual(events[-1]["event"], "terminal")
        self.assertTrue(events[-1]["payload"]["success"])

    def test_baselines(self):
        for algorithm in ("donothing", "random"):
            report = cmd_transfer(None, self.config, 2, 5, self.path(algorithm), algorithm=algorithm, paced=False)
            self.assertEqual(report.missions, 2)

    def test_missing_model(self):
        with self.assertRaises(ConfigurationError):
            cmd_transfer(None, self.config, 2, None, self.path("tr"))

    def test_zero_missions(self):
        with self.assertRaises(ConfigurationError):
            cmd_transfer(None, self.config, 0, None, self.path("tr"), algorithm="donothing")

    def test_do_nothing_never_arrives_under_attack(self):
        with open(self.path("attacked.yaml"), "w", encoding="utf-8") as file:
            file.write("integrated:\n  max_time: 60.0\n  min_attack_bound: 5.0\n  max_attack_bound: 5.0\n")
        report = cmd_transfer(None, self.path("attacked.yaml"), 3, 0, self.path("tr"), algorithm="donothing", paced=False)
        self.assertEqual(report.successes, 0)


if __name__ == '__main__':
    unittest.main()
