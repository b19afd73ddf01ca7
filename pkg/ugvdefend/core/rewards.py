# General imports
from dataclasses import dataclass, asdict
from enum import Enum
from typing import Dict

# Relative imports
from .actions import Action
from .errors import DomainError
from .observation import VehicleState


class Terminal(Enum):
    NONE = "none"
    GOAL = "goal"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class RewardConfig:
    driving_base: float = 1.0
    driving_donothing_bonus: float = 1.0
    driving_wrong_action: float = -10.0
    stationary_base: float = -1.0
    stationary_donothing_extra: float = -1.0
    goal_bonus: float = 50.0
    timeout_penalty: float = -10.0

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def step_reward(vehicle_after_action: VehicleState, action: Action, terminal: Terminal, cfg: RewardConfig) -> float:
    """
    Sum of the state term, the action term and the terminal term of one step.

    The step that reaches the goal was driven, so GoalReached earns the Driving state/action term.
    """
    if terminal is Terminal.GOAL and vehicle_after_action is not VehicleState.GOAL_REACHED:
        raise DomainError("A goal terminal requires the vehicle state \"Goal reached\"")

    if vehicle_after_action is VehicleState.STATIONARY:
        reward = cfg.stationary_base
        if action.is_do_nothing:
            reward += cfg.stationary_donothing_extra
    else:
        reward = cfg.driving_base
        reward += cfg.driving_donothing_bonus if action.is_do_nothing else cfg.driving_wrong_action

    if terminal is Terminal.GOAL:
        reward += cfg.goal_bonus
    elif terminal is Terminal.TIMEOUT:
        reward += cfg.timeout_penalty
    return reward
