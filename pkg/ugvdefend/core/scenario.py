# General imports
from dataclasses import dataclass, field
from typing import Dict, Tuple

# Relative imports
from .actions import Action, enumerate_actions
from .components import ComponentSpec, ComponentStateVector, Experiment, components_for, validate_component_specs
from .errors import ConfigurationError, DomainError
from .observation import num_observations


@dataclass(frozen=True)
class Scenario:
    """
    The component set of an experiment together with its enumerated action space.
    """
    experiment: Experiment
    components: Tuple[ComponentSpec, ...]
    actions: Tuple[Action, ...] = field(init=False)
    _action_ids: Dict[Action, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        validate_component_specs(self.components)
        actions = enumerate_actions(self.components)
        object.__setattr__(self, "actions", actions)
        object.__setattr__(self, "_action_ids", {action: i for i, action in enumerate(actions)})

    @property
    def num_components(self) -> int:
        return len(self.components)

    @property
    def num_actions(self) -> int:
        return len(self.actions)

    @property
    def num_states(self) -> int:
        return num_observations(self.num_components)

    def nominal_components(self) -> ComponentStateVector:
        return ComponentStateVector.nominal(self.components)

    def action(self, action_id: int) -> Action:
        if not (0 <= action_id < self.num_actions):
            raise DomainError(f"Action id {action_id!r} is out of range for {self.num_actions} actions")
        return self.actions[action_id]

    def action_id(self, action: Action) -> int:
        try:
            return self._action_ids[action]
        except KeyError:
            raise DomainError(f"The action {action} is not part of the {self.experiment.value} action space") from None

    def action_labels(self) -> Tuple[str, ...]:
        return tuple(action.label(self.components) for action in self.actions)

    def check_shape(self, num_states: int, num_actions: int) -> None:
        if (num_states, num_actions) != (self.num_states, self.num_actions):
            raise ConfigurationError(
                f"Shape {num_states}x{num_actions} does not match the {self.experiment.value} "
                f"space of {self.num_states} states and {self.num_actions} actions")


_SCENARIOS = {experiment: Scenario(experiment, components_for(experiment)) for experiment in Experiment}


def scenario_for(experiment: Experiment) -> Scenario:
    return _SCENARIOS[experiment]
