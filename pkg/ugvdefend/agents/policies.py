# General imports
from typing import Protocol, Sequence

import numpy as np


def argmax_action(q_row: Sequence[float]) -> int:
    """
    Greedy action; ties go to the lowest action index.
    """
    return int(np.argmax(q_row))


def select_random(num_actions: int, rng: np.random.Generator) -> int:
    return int(rng.integers(num_actions))


def select_epsilon_greedy(q_row: Sequence[float], epsilon: float, rng: np.random.Generator) -> int:
    """
    Explores uniformly with probability epsilon, otherwise exploits the greedy action.
    """
    if rng.random() < epsilon:
        return int(rng.integers(len(q_row)))
    return argmax_action(q_row)


class RandomPolicy:
    """
    Uniform random baseline. Picklable, so evaluation can run it in worker processes.
    """

    def __init__(self, num_actions: int, seed: int) -> None:
        self._num_actions = num_actions
        self._rng = np.random.default_rng(seed)

    @property
    def num_actions(self) -> int:
        return self._num_actions

    def reseed(self, seed: int) -> None:
        self._rng = np.random.default_rng(seed)

    def __call__(self, obs_index: int) -> int:
        return select_random(self._num_actions, self._rng)


class DoNothingPolicy:
    """
    Always picks action 0, which is Do nothing in every scenario.
    """

    def __call__(self, obs_index: int) -> int:
        return 0


class GreedyPolicy:
    """
    Deterministic argmax policy over a full table of action values (num_states x num_actions).
    """

    def __init__(self, q_values: np.ndarray) -> None:
        q_values = np.asarray(q_values)
        self._actions = np.argmax(q_values, axis=1).astype(np.int64)
        self._num_actions = q_values.shape[1]

    @property
    def num_states(self) -> int:
        return self._actions.shape[0]

    @property
    def num_actions(self) -> int:
        return self._num_actions

    @property
    def actions(self) -> np.ndarray:
        return self._actions.copy()

    def __call__(self, obs_index: int) -> int:
        return int(self._actions[obs_index])


class ActionValueModel(Protocol):
    def all_q_values(self) -> np.ndarray:
        ...


def greedy_policy(model: ActionValueModel) -> GreedyPolicy:
    return GreedyPolicy(model.all_q_values())
