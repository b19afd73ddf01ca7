# General imports
from typing import Any, List, Optional

import numpy as np

# Relative imports
from ..core.errors import ConfigurationError

MAX_SEED = 2**64 - 1


def check_seed(seed: Any) -> None:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or not (0 <= seed <= MAX_SEED):
        raise ConfigurationError(f"A seed must be an integer in [0, 2**64 - 1] but got {seed!r}")


def make_rng(seed: Optional[int]) -> np.random.Generator:
    return np.random.default_rng(seed)


def spawn_seeds(root_seed: int, count: int) -> List[int]:
    """
    Derives `count` independent 64-bit seeds from root_seed. Seed i only depends on (root_seed, i), so work
    items can be distributed over any number of workers without changing their results.
    """
    children = np.random.SeedSequence(root_seed).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


def seed_from_rng(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**63 - 1))
