# General imports
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

# Relative imports
from .components import ComponentKind, ComponentSpec, ComponentState, ComponentStateVector
from .errors import DomainError


class ActionKind(Enum):
    DO_NOTHING = "Do nothing"
    TURN_ON = "Turn on"
    TURN_OFF = "Turn off"
    PUBLISH_CORRECT = "Publish correct"


_ELIGIBLE_KIND = {
    ActionKind.TURN_ON: ComponentKind.TOGGLEABLE,
    ActionKind.TURN_OFF: ComponentKind.TOGGLEABLE,
    ActionKind.PUBLISH_CORRECT: ComponentKind.PUBLISHABLE,
}


@dataclass(frozen=True)
class Action:
    kind: ActionKind
    component_index: Optional[int] = None

    @property
    def is_do_nothing(self) -> bool:
        return self.kind is ActionKind.DO_NOTHING

    def label(self, specs: Sequence[ComponentSpec]) -> str:
        """
        Human readable name in the vocabulary of the component tables, e.g. "Turn on Generator".
        """
        if self.is_do_nothing:
            return self.kind.value
        return f"{self.kind.value} {specs[self.component_index].name}"

    def validate(self, specs: Sequence[ComponentSpec]) -> None:
        if self.is_do_nothing:
            if self.component_index is not None:
                raise DomainError("The action \"Do nothing\" does not target a component")
            return

        if self.component_index is None or not (0 <= self.component_index < len(specs)):
            raise DomainError(f"The action \"{self.kind.value}\" targets the invalid component index {self.component_index!r}")

        spec = specs[self.component_index]
        if spec.kind is not _ELIGIBLE_KIND[self.kind]:
            raise DomainError(f"The action \"{self.kind.value}\" cannot target the {spec.kind.value.lower()} component \"{spec.name}\"")


DO_NOTHING = Action(ActionKind.DO_NOTHING)


def enumerate_actions(specs: Sequence[ComponentSpec]) -> Tuple[Action, ...]:
    """
    Do nothing first, then (Turn on, Turn off) per toggleable component, then Publish correct per
    publishable component, both in component order.
    """
    actions = [DO_NOTHING]
    for i, spec in enumerate(specs):
        if spec.kind is ComponentKind.TOGGLEABLE:
            actions.append(Action(ActionKind.TURN_ON, i))
            actions.append(Action(ActionKind.TURN_OFF, i))
    for i, spec in enumerate(specs):
        if spec.kind is ComponentKind.PUBLISHABLE:
            actions.append(Action(ActionKind.PUBLISH_CORRECT, i))
    return tuple(actions)


def apply_action(components: ComponentStateVector, action: Action) -> ComponentStateVector:
    action.validate(components.specs)

    if action.kind is ActionKind.DO_NOTHING:
        return components
    if action.kind is ActionKind.TURN_OFF:
        return components.with_state(action.component_index, ComponentState.OFF)
    # Turn on and Publish correct both leave the component ON
    return components.with_state(action.component_index, ComponentState.ON)


def restoring_action(components: ComponentStateVector) -> Optional[Action]:
    """
    The action that returns the lowest-index compromised component to its nominal state, or None if the
    vector is nominal. For a single compromised component this is the unique restoring action.
    """
    compromised = components.compromised_indices()
    if not compromised:
        return None

    index = compromised[0]
    spec = components.specs[index]
    if spec.kind is ComponentKind.PUBLISHABLE:
        return Action(ActionKind.PUBLISH_CORRECT, index)
    if spec.nominal is ComponentState.ON:
        return Action(ActionKind.TURN_ON, index)
    return Action(ActionKind.TURN_OFF, index)
