# General imports
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any, Dict, Sequence, Tuple
import math

import numpy as np

# Relative imports
from ..core.components import Experiment
from ..core.errors import ConfigurationError
from ..env_integrated.mission import MissionResult
from ..env_simple.rollout import EpisodeResult


class Algorithm(Enum):
    RANDOM = "Random"
    QLEARNING = "QLearning"
    DQN = "DQN"

    @property
    def cli_name(self) -> str:
        return self.name.lower()

    @classmethod
    def from_cli_name(cls, name: str) -> "Algorithm":
        for algorithm in cls:
            if algorithm.cli_name == name:
                return algorithm
        raise ConfigurationError(f"Unknown algorithm \"{name}\" (known: {', '.join(a.cli_name for a in cls)})")


@dataclass(frozen=True)
class RunSummary:
    algorithm: Algorithm
    experiment: Experiment
    episodes_evaluated: int
    mean_reward: float
    mean_timesteps: float
    training_time_seconds: float
    seed: int
    attack_prob: float
    success_rate: float

    @classmethod
    def from_results(cls,
                     results: Sequence[EpisodeResult],
                     *,
                     algorithm: Algorithm,
                     experiment: Experiment,
                     seed: int,
                     attack_prob: float,
                     training_time_seconds: float = 0.0,
                     ) -> "RunSummary":
        if not results:
            raise ConfigurationError("A run summary needs at least one evaluated episode")
        return cls(
            algorithm=algorithm,
            experiment=experiment,
            episodes_evaluated=len(results),
            mean_reward=float(np.mean([r.episode_return for r in results])),
            mean_timesteps=float(np.mean([r.timesteps for r in results])),
            training_time_seconds=training_time_seconds,
            seed=seed,
            attack_prob=attack_prob,
            success_rate=sum(r.success for r in results) / len(results),
        )

    def to_dict(self) -> Dict[str, Any]:
        values = asdict(self)
        values["algorithm"] = self.algorithm.value
        values["experiment"] = self.experiment.value
        return values

    def describe(self) -> str:
        return (f"{self.algorithm.value} on {self.experiment.value} (attack_prob={self.attack_prob}): "
                f"mean reward {self.mean_reward:.2f}, mean timesteps {self.mean_timesteps:.1f}, "
                f"success rate {self.success_rate:.1%} over {self.episodes_evaluated} episodes")


def wilson_interval(successes: int, n: int, z: float = 1.96) -> Tuple[float, float]:
    """
    Wilson score interval of a binomial proportion.
    """
    if n <= 0:
        raise ConfigurationError("The interval needs at least one trial")
    if not 0 <= successes <= n:
        raise ConfigurationError(f"successes must lie in [0, {n}] but got {successes}")
    p = successes / n
    denominator = 1.0 + z * z / n
    center = (p + z * z / (2 * n)) / denominator
    half_width = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denominator
    return max(0.0, center - half_width), min(1.0, center + half_width)


@dataclass(frozen=True)
class TransferReport:
    experiment: Experiment
    missions: int
    successes: int
    success_rate: float
    interval_low: float
    interval_high: float
    mean_elapsed: float
    mean_reward: float
    mean_attacks: float
    seed: int

    @classmethod
    def from_results(cls, results: Sequence[MissionResult], *, experiment: Experiment, seed: int) -> "TransferReport":
        if not results:
            raise ConfigurationError("A transfer report needs at least one mission")
        successes = sum(r.success for r in results)
        low, high = wilson_interval(successes, len(results))
        return cls(
            experiment=experiment,
            missions=len(results),
            successes=successes,
            success_rate=successes / len(results),
            interval_low=low,
            interval_high=high,
            mean_elapsed=float(np.mean([r.elapsed for r in results])),
            mean_reward=float(np.mean([r.total_reward for r in results])),
            mean_attacks=float(np.mean([r.attacks_injected for r in results])),
            seed=seed,
        )

    def to_dict(self) -> Dict[str, Any]:
        values = asdict(self)
        values["experiment"] = self.experiment.value
        return values

    def describe(self) -> str:
        return (f"{self.successes}/{self.missions} missions succeeded ({self.success_rate:.1%}, "
                f"95% interval [{self.interval_low:.1%}, {self.interval_high:.1%}]), "
                f"mean elapsed {self.mean_elapsed:.1f} s, mean attacks {self.mean_attacks:.1f}")
