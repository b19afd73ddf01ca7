# General imports
from dataclasses import dataclass, field, replace
from typing import Dict, Iterator, Mapping, Optional, Tuple

import numpy as np

# Relative imports
from ..core.components import ComponentStateVector
from ..core.errors import ConfigurationError, DomainError
from ..core.observation import VehicleState


@dataclass(frozen=True)
class AttackSchedule:
    """
    Timesteps at which the attacker toggles a component, mapped to the attacked component index.
    """
    events: Mapping[int, int] = field(default_factory=dict)

    def __contains__(self, timestep: int) -> bool:
        return timestep in self.events

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.events))

    def target(self, timestep: int) -> Optional[int]:
        return self.events.get(timestep)

    def items(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted(self.events.items()))

    def validate(self, max_timesteps: int, num_components: int) -> None:
        for timestep, component_index in self.events.items():
            if not (0 <= timestep < max_timesteps):
                raise ConfigurationError(f"Attack timestep {timestep} lies outside [0, {max_timesteps})")
            if not (0 <= component_index < num_components):
                raise ConfigurationError(f"Attack at timestep {timestep} targets the invalid component {component_index}")


def make_attack_list(attack_prob: float, max_timesteps: int, num_components: int, rng: np.random.Generator) -> AttackSchedule:
    """
    Every timestep is attacked independently with probability attack_prob; the target is uniform over
    the components.
    """
    if not (0.0 <= attack_prob <= 1.0):
        raise ConfigurationError(f"attack_prob must lie in [0, 1] but got {attack_prob}")

    # both draws are always made so the stream position does not depend on attack_prob
    attacked = rng.random(max_timesteps) < attack_prob
    targets = rng.integers(0, num_components, size=max_timesteps)
    events: Dict[int, int] = {int(t): int(targets[t]) for t in np.flatnonzero(attacked)}
    return AttackSchedule(events)


@dataclass(frozen=True)
class EnvState:
    t: int
    position: int
    components: ComponentStateVector
    vehicle: VehicleState
    schedule: AttackSchedule
    rng: np.random.Generator = field(compare=False)


def apply_attack(state: EnvState, component_index: int) -> EnvState:
    if not (0 <= component_index < len(state.components)):
        raise DomainError(f"Cannot attack the invalid component index {component_index}")
    return replace(state, components=state.components.toggled(component_index))
