# General imports
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterator, List, Sequence, Tuple

# Relative imports
from .errors import DomainError


class ComponentKind(Enum):
    TOGGLEABLE = "Toggleable"
    PUBLISHABLE = "Publishable"


class ComponentState(IntEnum):
    """
    Binary component state. For publishable components ON means "publishing correct data".
    """
    OFF = 0
    ON = 1

    def toggled(self) -> "ComponentState":
        return ComponentState.OFF if self is ComponentState.ON else ComponentState.ON


@dataclass(frozen=True)
class ComponentSpec:
    name: str
    kind: ComponentKind
    nominal: ComponentState

    @property
    def slug(self) -> str:
        """
        Lower-case topic-friendly name, e.g. "high_voltage_system".
        """
        return self.name.lower().replace("-", "_").replace(" ", "_")


class Experiment(Enum):
    EXP1 = "Exp1"
    EXP2 = "Exp2"


# The force brake halts the vehicle when ON, so its healthy state is OFF.
EXPERIMENT_1_COMPONENTS: Tuple[ComponentSpec, ...] = (
    ComponentSpec("Force Brake", ComponentKind.TOGGLEABLE, ComponentState.OFF),
    ComponentSpec("Generator", ComponentKind.TOGGLEABLE, ComponentState.ON),
    ComponentSpec("High-voltage system", ComponentKind.TOGGLEABLE, ComponentState.ON),
)

EXPERIMENT_2_COMPONENTS: Tuple[ComponentSpec, ...] = EXPERIMENT_1_COMPONENTS + (
    ComponentSpec("Heading", ComponentKind.PUBLISHABLE, ComponentState.ON),
    ComponentSpec("Noise", ComponentKind.PUBLISHABLE, ComponentState.ON),
    ComponentSpec("Trajectory", ComponentKind.PUBLISHABLE, ComponentState.ON),
)


def components_for(experiment: Experiment) -> Tuple[ComponentSpec, ...]:
    if experiment is Experiment.EXP1:
        return EXPERIMENT_1_COMPONENTS
    return EXPERIMENT_2_COMPONENTS


def validate_component_specs(specs: Sequence[ComponentSpec]) -> None:
    names = [spec.name for spec in specs]
    if len(set(names)) < len(names):
        raise DomainError(f"Component names must be unique but got {names}")


@dataclass(frozen=True)
class ComponentStateVector:
    """
    Immutable ON/OFF state of every component of a scenario, in scenario order.
    """
    specs: Tuple[ComponentSpec, ...]
    states: Tuple[ComponentState, ...]

    def __post_init__(self) -> None:
        if len(self.specs) != len(self.states):
            raise DomainError(f"Expected {len(self.specs)} component states but got {len(self.states)}")

    @classmethod
    def nominal(cls, specs: Sequence[ComponentSpec]) -> "ComponentStateVector":
        specs = tuple(specs)
        return cls(specs, tuple(spec.nominal for spec in specs))

    @classmethod
    def from_bits(cls, specs: Sequence[ComponentSpec], bits: int) -> "ComponentStateVector":
        specs = tuple(specs)
        return cls(specs, tuple(ComponentState((bits >> i) & 1) for i in range(len(specs))))

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self) -> Iterator[ComponentState]:
        return iter(self.states)

    def __getitem__(self, index: int) -> ComponentState:
        return self.states[index]

    def bits(self) -> int:
        """
        Bit i is set iff component i is ON.
        """
        value = 0
        for i, state in enumerate(self.states):
            if state is ComponentState.ON:
                value |= 1 << i
        return value

    def is_nominal(self) -> bool:
        return all(state == spec.nominal for spec, state in zip(self.specs, self.states))

    def compromised_indices(self) -> List[int]:
        return [i for i, (spec, state) in enumerate(zip(self.specs, self.states)) if state != spec.nominal]

    def with_state(self, index: int, state: ComponentState) -> "ComponentStateVector":
        self._check_index(index)
        states = list(self.states)
        states[index] = state
        return ComponentStateVector(self.specs, tuple(states))

    def toggled(self, index: int) -> "ComponentStateVector":
        self._check_index(index)
        return self.with_state(index, self.states[index].toggled())

    def _check_index(self, index: int) -> None:
        if not isinstance(index, (int,)) or not (0 <= index < len(self.states)):
            raise DomainError(f"Component index {index!r} is out of range for {len(self.states)} components")

    def describe(self) -> str:
        return ", ".join(f"{spec.name}={state.name}" for spec, state in zip(self.specs, self.states))
