# General imports
from dataclasses import dataclass, replace
from enum import Enum

# Relative imports
from .bus import TopicBus
from .messages import CONTROL_TOPIC, ControlCommand, ControlMessage
from ..core.errors import DomainError
from ..core.observation import VehicleState

ARRIVAL_TOLERANCE = 1e-9


class VehicleMode(Enum):
    STOPPED = "Stopped"
    FOLLOWING = "Following"


@dataclass(frozen=True)
class VehicleSim:
    distance_remaining: float
    speed: float
    mode: VehicleMode = VehicleMode.FOLLOWING

    @property
    def arrived(self) -> bool:
        return self.distance_remaining <= 0.0

    def vehicle_state(self) -> VehicleState:
        if self.arrived:
            return VehicleState.GOAL_REACHED
        return VehicleState.DRIVING if self.mode is VehicleMode.FOLLOWING else VehicleState.STATIONARY


def tick(vehicle: VehicleSim, dt: float) -> VehicleSim:
    if dt <= 0:
        raise DomainError(f"The tick length must be positive but got {dt}")
    if vehicle.mode is VehicleMode.STOPPED:
        return vehicle
    remaining = vehicle.distance_remaining - vehicle.speed * dt
    # snap float residue from repeated subtraction to the goal
    if remaining <= ARRIVAL_TOLERANCE:
        remaining = 0.0
    return replace(vehicle, distance_remaining=remaining)


class VehicleNode:
    """
    Kinematic stand-in for the vehicle simulator: follows the newest control message and integrates
    distance while following the trajectory.
    """

    def __init__(self, bus: TopicBus, route_length: float, speed: float) -> None:
        self._control = bus.subscribe(CONTROL_TOPIC)
        self.vehicle = VehicleSim(distance_remaining=route_length, speed=speed, mode=VehicleMode.FOLLOWING)
        self.following_time = 0.0

    def apply_pending_controls(self) -> None:
        message: ControlMessage = self._control.latest()
        if message is None:
            return
        mode = VehicleMode.STOPPED if message.command is ControlCommand.STOP else VehicleMode.FOLLOWING
        self.vehicle = replace(self.vehicle, mode=mode)

    def tick(self, dt: float) -> VehicleSim:
        self.apply_pending_controls()
        if self.vehicle.mode is VehicleMode.FOLLOWING and not self.vehicle.arrived:
            self.following_time += dt
        self.vehicle = tick(self.vehicle, dt)
        return self.vehicle

    def close(self) -> None:
        self._control.close()
