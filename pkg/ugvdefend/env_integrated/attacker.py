# General imports
import numpy as np

# Relative imports
from .components import ComponentBoard
from ..core.errors import ConfigurationError


def schedule_next_attack(now: float, min_bound: float, max_bound: float, rng: np.random.Generator) -> float:
    if min_bound > max_bound:
        raise ConfigurationError(f"min_attack_bound ({min_bound}) must not exceed max_attack_bound ({max_bound})")
    return now + float(rng.uniform(min_bound, max_bound))


def inject_attack(board: ComponentBoard, rng: np.random.Generator, timestamp: float = 0.0) -> int:
    """
    Toggles a uniformly chosen component and publishes its new state. Returns the component index.
    """
    index = int(rng.integers(len(board.vector)))
    board.vector = board.vector.toggled(index)
    board.publish_state(index, timestamp)
    return index
