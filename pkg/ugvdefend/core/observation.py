# General imports
from dataclasses import dataclass
from enum import IntEnum
from typing import Sequence

# Relative imports
from .components import ComponentSpec, ComponentStateVector
from .errors import DomainError


class VehicleState(IntEnum):
    """
    Vehicle state; the value is its index in the observation encoding. GoalReached is absorbing.
    """
    STATIONARY = 0
    DRIVING = 1
    GOAL_REACHED = 2

    @property
    def label(self) -> str:
        return {0: "Stationary", 1: "Driving", 2: "Goal reached"}[int(self)]


NUM_VEHICLE_STATES = len(VehicleState)


def num_observations(num_components: int) -> int:
    return NUM_VEHICLE_STATES * (1 << num_components)


@dataclass(frozen=True)
class Observation:
    components: ComponentStateVector
    vehicle: VehicleState
    index: int


def derive_vehicle_state(components: ComponentStateVector, position: int, goal_step: int, prev: VehicleState) -> VehicleState:
    if position < 0:
        raise DomainError(f"The position must be non-negative but got {position}")

    if prev is VehicleState.GOAL_REACHED or position >= goal_step:
        return VehicleState.GOAL_REACHED
    if components.is_nominal():
        return VehicleState.DRIVING
    return VehicleState.STATIONARY


def encode_observation(components: ComponentStateVector, vehicle: VehicleState) -> int:
    return int(vehicle) * (1 << len(components)) + components.bits()


def make_observation(components: ComponentStateVector, vehicle: VehicleState) -> Observation:
    return Observation(components, vehicle, encode_observation(components, vehicle))


def decode_observation(index: int, specs: Sequence[ComponentSpec]) -> Observation:
    k = len(specs)
    if not (0 <= index < num_observations(k)):
        raise DomainError(f"Observation index {index} is out of range [0, {num_observations(k)})")

    vehicle_index, bits = divmod(index, 1 << k)
    components = ComponentStateVector.from_bits(specs, bits)
    return Observation(components, VehicleState(vehicle_index), index)
