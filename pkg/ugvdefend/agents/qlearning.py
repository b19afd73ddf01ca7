# General imports
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional
import time

import numpy as np

# Relative imports
from .policies import select_epsilon_greedy
from .schedules import linear_decay
from ..core.errors import DomainError
from ..env_simple.environment import SimpleUGVEnv
from ..util.logging import get_logger
from ..util.seeding import seed_from_rng

logger = get_logger(__name__)

EnvFactory = Callable[[], SimpleUGVEnv]

STRATEGIES = ("epsilon-greedy", "argmax")
ALPHA_SCHEDULES = ("constant", "linear")

QLEARNING_PARAMETERS: Dict[str, Dict[str, Any]] = {
    "alpha": {"type": "float", "default": 0.1, "min": 0.0, "max": 1.0, "exclusive_min": True, "description": "Learning rate"},
    "alpha_schedule": {"type": "options", "options": list(ALPHA_SCHEDULES), "default": "constant",
                       "description": "Keep alpha constant or decay it linearly per episode to alpha_final"},
    "alpha_final": {"type": "float", "default": 0.01, "min": 0.0, "max": 1.0, "exclusive_min": True},
    "gamma": {"type": "float", "default": 0.9, "min": 0.0, "max": 1.0, "exclusive_min": True, "description": "Discount factor"},
    "epsilon_initial": {"type": "float", "default": 0.9, "min": 0.0, "max": 1.0, "exclusive_min": True},
    "epsilon_final": {"type": "float", "default": 0.05, "min": 0.0, "max": 1.0},
    "episodes": {"type": "int", "default": 1000, "min": 0, "description": "Training episodes"},
    "strategy": {"type": "options", "options": list(STRATEGIES), "default": "epsilon-greedy",
                 "description": "Action selection while training: decaying epsilon-greedy or pure argmax"},
    "log_interval": {"type": "int", "default": 100, "min": 1},
}


@dataclass(frozen=True)
class QLearningParams:
    alpha: float = 0.1
    alpha_schedule: str = "constant"
    alpha_final: float = 0.01
    gamma: float = 0.9
    epsilon_initial: float = 0.9
    epsilon_final: float = 0.05
    episodes: int = 1000
    strategy: str = "epsilon-greedy"
    log_interval: int = 100

    def epsilon(self, episode: int) -> float:
        if self.strategy == "argmax":
            return 0.0
        return linear_decay(episode, self.episodes, self.epsilon_initial, self.epsilon_final)

    def learning_rate(self, episode: int) -> float:
        if self.alpha_schedule == "constant":
            return self.alpha
        return linear_decay(episode, self.episodes, self.alpha, self.alpha_final)


class QTable:
    """
    Dense state x action value table, zero-initialised.
    """

    def __init__(self, values: np.ndarray) -> None:
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 2:
            raise DomainError(f"A Q-table must be two-dimensional but got shape {values.shape}")
        self.values = values

    @classmethod
    def zeros(cls, num_states: int, num_actions: int) -> "QTable":
        return cls(np.zeros((num_states, num_actions)))

    @property
    def num_states(self) -> int:
        return self.values.shape[0]

    @property
    def num_actions(self) -> int:
        return self.values.shape[1]

    def all_q_values(self) -> np.ndarray:
        return self.values


@dataclass
class TrainingResult:
    model: Any
    episode_returns: List[float] = field(default_factory=list)
    episode_lengths: List[int] = field(default_factory=list)
    training_time_seconds: float = 0.0


def q_update(table: QTable, s: int, a: int, r: float, s_next: int, done: bool, params: QLearningParams,
             alpha: Optional[float] = None) -> QTable:
    """
    One temporal-difference update of Q(s, a); no other entry changes. `alpha` overrides params.alpha.
    """
    values = table.values
    if alpha is None:
        alpha = params.alpha
    bootstrap = 0.0 if done else params.gamma * float(values[s_next].max())
    values[s, a] += alpha * (r + bootstrap - values[s, a])
    return table


def train_q(env_factory: EnvFactory, params: QLearningParams, rng: np.random.Generator) -> TrainingResult:
    """
    Tabular Q-learning. Bootstrapping stops only at goal terminations; a timeout truncates the episode
    but the value of the last observation is still bootstrapped since time is not observed.
    """
    env = env_factory()
    scenario = env.scenario
    table = QTable.zeros(scenario.num_states, scenario.num_actions)
    result = TrainingResult(model=table)

    started = time.perf_counter()
    seed = seed_from_rng(rng)
    for episode in range(params.episodes):
        obs, _ = env.reset(seed=seed if episode == 0 else None)
        epsilon = params.epsilon(episode)
        alpha = params.learning_rate(episode)
        episode_return = 0.0
        steps = 0

        while True:
            action = select_epsilon_greedy(table.values[obs], epsilon, rng)
            next_obs, reward, terminated, truncated, _ = env.step(action)
            q_update(table, obs, action, reward, next_obs, terminated, params, alpha)

            episode_return += reward
            steps += 1
            obs = next_obs
            if terminated or truncated:
                break

        result.episode_returns.append(episode_return)
        result.episode_lengths.append(steps)

        if (episode + 1) % params.log_interval == 0:
            window = result.episode_returns[-params.log_interval:]
            logger.info("q-learning episode %d/%d: epsilon=%.3f alpha=%.4f mean return (last %d)=%.2f",
                        episode + 1, params.episodes, epsilon, alpha, len(window), float(np.mean(window)))

    result.training_time_seconds = time.perf_counter() - started
    return result
