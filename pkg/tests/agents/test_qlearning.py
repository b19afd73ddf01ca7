import time
import unittest

import numpy as np

from ugvdefend.agents.qlearning import QLearningParams, QTable, q_update, train_q
from ugvdefend.core.config import ScenarioConfig
from ugvdefend.core.errors import DomainError
from ugvdefend.env_simple.environment import SimpleUGVEnv


def factory(cfg: ScenarioConfig):
    return lambda: SimpleUGVEnv(cfg)


class TestQUpdate(unittest.TestCase):
    def test_update(self):
        table = q_update(QTable.zeros(4, 2), 0, 1, 2.0, 3, False, QLearningParams(alpha=0.1))
        self.assertAlmostEqual(table.values[0, 1], 0.2)

    def test_alpha_override(self):
        table = q_update(QTable.zeros(4, 2), 0, 1, 2.0, 3, False, QLearningParams(alpha=0.1), alpha=0.5)
        self.assertAlmostEqual(table.values[0, 1], 1.0)

    def test_terminal_update(self):
        table = QTable.zeros(4, 2)
        table.values[3] = [10.0, 20.0]
        q_update(table, 0, 0, 50.0, 3, True, QLearningParams(alpha=0.1))
        self.assertAlmostEqual(table.values[0, 0], 5.0)

    def test_bootstrap(self):
        table = QTable.zeros(4, 2)
        table.values[3] = [10.0, 20.0]
        q_update(table, 0, 0, 1.0, 3, False, QLearningParams(alpha=0.5, gamma=0.9))
        self.assertAlmostEqual(table.values[0, 0], 0.5 * (1.0 + 0.9 * 20.0))

    def test_only_one_entry_changes(self):
        table = QTable(np.arange(8, dtype=float).reshape(4, 2))
        before = table.values.copy()
        q_update(table, 2, 1, 3.0, 0, False, QLearningParams())
        changed = np.argwhere(table.values != before)
        self.assertListEqual(changed.tolist(), [[2, 1]])

    def test_zero_learning_rate(self):
        table = QTable(np.ones((4, 2)))
        q_update(table, 0, 0, 100.0, 1, False, QLearningParams(alpha=0.0))
        self.assertTrue(np.all(table.values == 1.0))

    def test_table_shape(self):
        with self.assertRaises(DomainError):
            QTable(np.zeros(3))


class TestTrainQ(unittest.TestCase):
    def test_zero_episodes(self):
        result = train_q(factory(ScenarioConfig()), QLearningParams(episodes=0), np.random.default_rng(0))
        self.assertEqual(result.model.values.shape, (24, 7))
        self.assertTrue(np.all(result.model.values == 0.0))
        self.assertListEqual(result.episode_returns, [])

    def test_determinism(self):
        cfg = ScenarioConfig(max_timesteps=200, goal_step=100)
        params = QLearningParams(episodes=30)
        a = train_q(factory(cfg), params, np.random.default_rng(4))
        b = train_q(factory(cfg), params, np.random.default_rng(4))
        self.assertTrue(np.array_equal(a.model.values, b.model.values))
        self.assertListEqual(a.episode_returns, b.episode_returns)

    def test_argmax_strategy(self):
        params = QLearningParams(strategy="argmax")
        self.assertEqual(params.epsilon(0), 0.0)
        self.assertEqual(QLearningParams().epsilon(0), 0.9)

    def test_learning_rate_schedules(self):
        self.assertEqual(QLearningParams(alpha=0.2).learning_rate(500), 0.2)
        params = QLearningParams(alpha=0.1, alpha_schedule="linear", alpha_final=0.01, episodes=11)
        self.assertEqual(params.learning_rate(0), 0.1)
        self.assertAlmostEqual(params.learning_rate(5), 0.055)
        self.assertAlmostEqual(params.learning_rate(10), 0.01)

    def test_decayed_learning_rate_only_changes_later_episodes(self):
        cfg = ScenarioConfig(max_timesteps=40, goal_step=10)
        constant = train_q(factory(cfg), QLearningParams(episodes=5), np.random.default_rng(2))
        decayed = train_q(factory(cfg), QLearningParams(episodes=5, alpha_schedule="linear", alpha_final=0.05),
                          np.random.default_rng(2))
        self.assertListEqual(constant.episode_returns[:1], decayed.episode_returns[:1])
        self.assertFalse(np.array_equal(constant.model.values, decayed.model.values))

    def test_training_time(self):
        started = time.perf_counter()
        result = train_q(factory(ScenarioConfig()), QLearningParams(episodes=1000), np.random.default_rng(0))
        self.assertLess(time.perf_counter() - started, 120.0)
        self.assertEqual(len(result.episode_returns), 1000)
        self.assertEqual(len(result.episode_lengths), 1000)
        self.assertGreater(np.mean(result.episode_returns[-100:]), np.mean(result.episode_returns[:100]))


if __name__ == '__main__':
    unittest.main()
