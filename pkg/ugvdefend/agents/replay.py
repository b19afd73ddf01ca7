# General imports
from typing import Tuple

import numpy as np

# Relative imports
from ..core.errors import DomainError


class ReplayBuffer:
    """
    Fixed-capacity ring of transitions; the oldest transition is overwritten first.
    """

    def __init__(self, capacity: int) -> None:
        if capacity <= 0:
            raise DomainError(f"The replay capacity must be positive but got {capacity}")
        self._capacity = capacity
        self._obs = np.zeros(capacity, dtype=np.int64)
        self._actions = np.zeros(capacity, dtype=np.int64)
        self._rewards = np.zeros(capacity, dtype=np.float64)
        self._next_obs = np.zeros(capacity, dtype=np.int64)
        self._dones = np.zeros(capacity, dtype=np.float64)
        self._next_index = 0
        self._size = 0

    @property
    def capacity(self) -> int:
        return self._capacity

    def __len__(self) -> int:
        return self._size

    def add(self, obs: int, action: int, reward: float, next_obs: int, done: bool) -> None:
        i = self._next_index
        self._obs[i] = obs
        self._actions[i] = action
        self._rewards[i] = reward
        self._next_obs[i] = next_obs
        self._dones[i] = 1.0 if done else 0.0
        self._next_index = (i + 1) % self._capacity
        self._size = min(self._size + 1, self._capacity)

    def sample(self, batch_size: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """
        Uniform sample with replacement of (obs, actions, rewards, next_obs, dones).
        """
        if self._size == 0:
            raise DomainError("Cannot sample from an empty replay buffer")
        idx = rng.integers(0, self._size, size=batch_size)
        return self._obs[idx], self._actions[idx], self._rewards[idx], self._next_obs[idx], self._dones[idx]

    def transitions(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """
        All stored transitions, oldest first.
        """
        if self._size < self._capacity:
            order = np.arange(self._size)
        else:
            order = (np.arange(self._capacity) + self._next_index) % self._capacity
        return self._obs[order], self._actions[order], self._rewards[order], self._next_obs[order], self._dones[order]
