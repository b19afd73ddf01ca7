# General imports
from dataclasses import dataclass
from typing import Any, Dict, Tuple
import time

import numpy as np

# Relative imports
from .network import Adam, Approximator, approx_forward, approx_gradient_step, one_hot
from .policies import argmax_action
from .qlearning import EnvFactory, TrainingResult
from .replay import ReplayBuffer
from .schedules import dqn_epsilon
from ..core.errors import NumericError
from ..util.logging import get_logger
from ..util.seeding import seed_from_rng

logger = get_logger(__name__)

DIVERGENCE_THRESHOLD = 1e6

DQN_PARAMETERS: Dict[str, Dict[str, Any]] = {
    "gamma": {"type": "float", "default": 0.9, "min": 0.0, "max": 1.0, "exclusive_min": True},
    "learning_rate": {"type": "float", "default": 1e-3, "min": 0.0, "exclusive_min": True},
    "batch_size": {"type": "int", "default": 64, "min": 1},
    "buffer_capacity": {"type": "int", "default": 50_000, "min": 1},
    "target_sync_interval": {"type": "int", "default": 1_000, "min": 1, "description": "Environment steps between target syncs"},
    "train_freq": {"type": "int", "default": 4, "min": 1, "description": "Environment steps between gradient steps"},
    "learning_starts": {"type": "int", "default": 1_000, "min": 0, "description": "Steps collected before the first gradient step"},
    "total_timesteps": {"type": "int", "default": 1_800_000, "min": 0},
    "epsilon_initial": {"type": "float", "default": 1.0, "min": 0.0, "max": 1.0},
    "epsilon_final": {"type": "float", "default": 0.05, "min": 0.0, "max": 1.0},
    "exploration_fraction": {"type": "float", "default": 0.1, "min": 0.0, "max": 1.0},
    "hidden_size": {"type": "int", "default": 64, "min": 1, "description": "Width of both hidden layers"},
    "log_interval": {"type": "int", "default": 10_000, "min": 1, "description": "Steps between progress log lines"},
}


@dataclass(frozen=True)
class DQNParams:
    gamma: float = 0.9
    learning_rate: float = 1e-3
    batch_size: int = 64
    buffer_capacity: int = 50_000
    target_sync_interval: int = 1_000
    train_freq: int = 4
    learning_starts: int = 1_000
    total_timesteps: int = 1_800_000
    epsilon_initial: float = 1.0
    epsilon_final: float = 0.05
    exploration_fraction: float = 0.1
    hidden_size: int = 64
    log_interval: int = 10_000

    @property
    def hidden(self) -> Tuple[int, int]:
        return (self.hidden_size, self.hidden_size)

    def epsilon(self, step: int) -> float:
        return dqn_epsilon(step, self.total_timesteps, self.exploration_fraction, self.epsilon_initial, self.epsilon_final)


def td_targets(target_net: Approximator, rewards: np.ndarray, next_obs: np.ndarray, dones: np.ndarray, gamma: float) -> np.ndarray:
    """
    r + gamma * max_a' Q_target(s', a'), truncated to r for terminal transitions.
    """
    next_q = approx_forward(target_net, one_hot(next_obs, target_net.num_states)).max(axis=1)
    return rewards + gamma * next_q * (1.0 - dones)


class DQNAgent:
    """
    Online and target approximators, replay memory and optimizer of one DQN run.
    """

    def __init__(self, num_states: int, num_actions: int, params: DQNParams, rng: np.random.Generator) -> None:
        self._params = params
        self._rng = rng
        self.online = Approximator.initialize(num_states, num_actions, rng, hidden=params.hidden)
        self.target = self.online.copy()
        self.replay = ReplayBuffer(params.buffer_capacity)
        self._optimizer = Adam()
        self._mean_abs_q = 0.0
        self.gradient_steps = 0

    @property
    def num_actions(self) -> int:
        return self.online.num_actions

    def act(self, obs: int, epsilon: float) -> int:
        if self._rng.random() < epsilon:
            return int(self._rng.integers(self.num_actions))
        return argmax_action(self.online.forward_index(obs))

    def observe(self, obs: int, action: int, reward: float, next_obs: int, done: bool) -> None:
        self.replay.add(obs, action, reward, next_obs, done)

    def train_step(self) -> float:
        p = self._params
        obs, actions, rewards, next_obs, dones = self.replay.sample(p.batch_size, self._rng)
        targets = td_targets(self.target, rewards, next_obs, dones, p.gamma)
        _, loss = approx_gradient_step(self.online, one_hot(obs, self.online.num_states), actions, targets,
                                       p.learning_rate, self._optimizer)
        self.gradient_steps += 1

        predicted = approx_forward(self.online, one_hot(obs, self.online.num_states))[np.arange(len(actions)), actions]
        self._mean_abs_q = 0.99 * self._mean_abs_q + 0.01 * float(np.mean(np.abs(predicted)))
        if self._mean_abs_q > DIVERGENCE_THRESHOLD:
            raise NumericError(
                f"DQN diverged after {self.gradient_steps} gradient steps: running mean |Q| = {self._mean_abs_q:.3g}, "
                f"last loss = {loss:.3g}. Lower learning_rate or gamma.")
        return loss

    def sync_target(self) -> None:
        self.target = self.online.copy()


def dqn_train(env_factory: EnvFactory, params: DQNParams, rng: np.random.Generator) -> TrainingResult:
    """
    Runs params.total_timesteps environment steps over as many episodes as fit. The returned model is the
    online approximator; episode_returns only contains completed episodes.
    """
    env = env_factory()
    scenario = env.scenario
    agent = DQNAgent(scenario.num_states, scenario.num_actions, params, rng)
    result = TrainingResult(model=agent.online)

    started = time.perf_counter()
    obs, _ = env.reset(seed=seed_from_rng(rng))
    episode_return, steps = 0.0, 0
    last_loss = float("nan")

    for step in range(params.total_timesteps):
        epsilon = params.epsilon(step)
        action = agent.act(obs, epsilon)
        next_obs, reward, terminated, truncated, _ = env.step(action)
        agent.observe(obs, action, reward, next_obs, terminated)

        episode_return += reward
        steps += 1
        if terminated or truncated:
            result.episode_returns.append(episode_return)
            result.episode_lengths.append(steps)
            obs, _ = env.reset()
            episode_return, steps = 0.0, 0
        else:
            obs = next_obs

        if step >= params.learning_starts and step % params.train_freq == 0 and len(agent.replay) >= params.batch_size:
            last_loss = agent.train_step()

        if (step + 1) % params.target_sync_interval == 0:
            agent.sync_target()

        if (step + 1) % params.log_interval == 0:
            recent = result.episode_returns[-10:]
            logger.info("dqn step %d/%d: epsilon=%.3f loss=%.4f episodes=%d mean return (last %d)=%s",
                        step + 1, params.total_timesteps, epsilon, last_loss, len(result.episode_returns),
                        len(recent), f"{np.mean(recent):.2f}" if recent else "n/a")

    result.model = agent.online
    result.training_time_seconds = time.perf_counter() - started
    return result
