# General imports
from dataclasses import dataclass, field, asdict
from typing import Any, Callable, Dict, Mapping, Optional
import math

import numpy as np

# Relative imports
from .attacker import inject_attack, schedule_next_attack
from .bridge import bridge_action
from .bus import TopicBus
from .clock import Clock, SimulatedClock
from .components import ComponentBoard, ComponentMonitor
from .transcript import MissionTranscript
from .vehicle import VehicleNode
from ..core.components import Experiment
from ..core.config import load_config_file, scenario_config_from_dict, section
from ..core.errors import ConfigurationError
from ..core.observation import encode_observation
from ..core.rewards import RewardConfig, Terminal, step_reward
from ..core.scenario import Scenario, scenario_for
from ..util.config_section import ParameterSection
from ..util.seeding import check_seed
from ..util.logging import get_logger

logger = get_logger(__name__)

Policy = Callable[[int], int]

INTEGRATED_PARAMETERS: Dict[str, Dict[str, Any]] = {
    "max_time": {"type": "float", "default": 120.0, "min": 0.0, "exclusive_min": True, "description": "Mission time limit in seconds"},
    "route_length": {"type": "float", "default": 100.0, "min": 0.0, "exclusive_min": True, "description": "Meters to the goal"},
    "speed": {"type": "float", "default": 2.0, "min": 0.0, "exclusive_min": True, "description": "Meters per second while following"},
    "min_attack_bound": {"type": "float", "default": 5.0, "min": 0.0, "exclusive_min": True, "description": "Seconds"},
    "max_attack_bound": {"type": "float", "default": 10.0, "min": 0.0, "exclusive_min": True, "description": "Seconds"},
    "clock_scale": {"type": "float", "default": 50.0, "min": 1.0, "description": "Simulated seconds per wall-clock second"},
    "control_period": {"type": "float", "default": 0.1, "min": 0.0, "exclusive_min": True, "description": "Agent polling period in seconds"},
    "attacks_enabled": {"type": "bool", "default": True},
    "record_ticks": {"type": "bool", "default": True, "description": "Write one transcript event per control period"},
}


@dataclass(frozen=True)
class IntegratedScenario:
    max_time: float = 120.0
    route_length: float = 100.0
    speed: float = 2.0
    min_attack_bound: float = 5.0
    max_attack_bound: float = 10.0
    clock_scale: float = 50.0
    seed: int = 0
    control_period: float = 0.1
    attacks_enabled: bool = True
    record_ticks: bool = True
    experiment: Experiment = Experiment.EXP1
    rewards: RewardConfig = field(default_factory=RewardConfig)

    def __post_init__(self) -> None:
        if self.max_time <= 0 or self.route_length <= 0 or self.speed <= 0 or self.control_period <= 0:
            raise ConfigurationError("max_time, route_length, speed and control_period must be positive")
        if self.clock_scale < 1.0:
            raise ConfigurationError(f"clock_scale must be at least 1 but got {self.clock_scale}")
        if self.attacks_enabled and not (0 < self.min_attack_bound <= self.max_attack_bound < self.max_time):
            raise ConfigurationError(
                f"Attack bounds must satisfy 0 < min_attack_bound <= max_attack_bound < max_time but got "
                f"{self.min_attack_bound}, {self.max_attack_bound}, {self.max_time}")
        check_seed(self.seed)

    @property
    def scenario(self) -> Scenario:
        return scenario_for(self.experiment)


@dataclass(frozen=True)
class MissionResult:
    success: bool
    elapsed: float
    attacks_injected: int
    responses: int
    total_reward: float
    distance_remaining: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def integrated_scenario_from_dict(raw: Mapping[str, Any]) -> IntegratedScenario:
    base = scenario_config_from_dict(raw)
    values = ParameterSection("integrated", INTEGRATED_PARAMETERS).apply(section(raw, "integrated")).get_all_parameter_values()
    return IntegratedScenario(seed=base.seed, experiment=base.experiment, rewards=base.rewards, **values)


def load_integrated_scenario(path: str) -> IntegratedScenario:
    return integrated_scenario_from_dict(load_config_file(path))


def check_policy_space(policy: Policy, scenario: Scenario) -> None:
    """
    Rejects policies trained on another component set, when the policy exposes its space.
    """
    num_states = getattr(policy, "num_states", None)
    num_actions = getattr(policy, "num_actions", None)
    if num_states is not None and num_states != scenario.num_states:
        raise ConfigurationError(f"The policy expects {num_states} observations but {scenario.experiment.value} has {scenario.num_states}")
    if num_actions is not None and num_actions != scenario.num_actions:
        raise ConfigurationError(f"The policy has {num_actions} actions but {scenario.experiment.value} has {scenario.num_actions}")


def run_mission(policy: Policy,
                scenario: IntegratedScenario,
                clock: Optional[Clock] = None,
                transcript: Optional[MissionTranscript] = None,
                ) -> MissionResult:
    """
    Runs one mission. Each control period the agent polls the component topics, observes the vehicle
    state from the simulator mode and acts through the bridge; then the vehicle advances and a due
    attack is injected. Attack times are drawn relative to the previous scheduled attack time, so
    inter-arrival times stay within the configured bounds.
    """
    model = scenario.scenario
    check_policy_space(policy, model)

    clock = clock or SimulatedClock()
    transcript = transcript or MissionTranscript(record_ticks=scenario.record_ticks)
    rng = np.random.default_rng(scenario.seed)

    bus = TopicBus()
    board = ComponentBoard(bus, model.nominal_components())
    monitor = ComponentMonitor(bus, board.vector)
    node = VehicleNode(bus, scenario.route_length, scenario.speed)

    start = clock.now()
    board.publish_all(start)
    board.publish_control(start)

    next_attack = schedule_next_attack(start, scenario.min_attack_bound, scenario.max_attack_bound, rng) \
        if scenario.attacks_enabled else math.inf
    dt = scenario.control_period
    total_reward = 0.0
    attacks = responses = 0

    try:
        while True:
            now = clock.now()
            node.apply_pending_controls()
            components = monitor.poll()
            obs = encode_observation(components, node.vehicle.vehicle_state())

            action = model.action(int(policy(obs)))
            control = bridge_action(action, board, now)
            if not action.is_do_nothing:
                responses += 1
                transcript.emit(now, "action", action=action.label(model.components), action_id=model.action_id(action), obs_index=obs)
            if control is not None:
                transcript.emit(now, "control", command=control.command.value, source="agent")

            vehicle = node.tick(dt)
            now = clock.advance(dt)
            transcript.emit(now, "tick", distance_remaining=round(vehicle.distance_remaining, 6), mode=vehicle.mode.value)

            if vehicle.arrived:
                terminal = Terminal.GOAL
            elif now - start >= scenario.max_time - 1e-9:
                terminal = Terminal.TIMEOUT
            else:
                terminal = Terminal.NONE

            total_reward += step_reward(vehicle.vehicle_state(), action, terminal, scenario.rewards)

            if terminal is not Terminal.NONE:
                result = MissionResult(
                    success=terminal is Terminal.GOAL,
                    elapsed=round(now - start, 9),
                    attacks_injected=attacks,
                    responses=responses,
                    total_reward=total_reward,
                    distance_remaining=vehicle.distance_remaining,
                )
                transcript.emit(now, "terminal", **result.to_dict())
                logger.debug("mission finished: %s", result)
                return result

            while now >= next_attack:
                index = inject_attack(board, rng, now)
                attacks += 1
                transcript.emit(now, "attack", component=model.components[index].name, state=board.vector[index].name,
                                scheduled_time=round(next_attack, 6))
                control = board.publish_control(now)
                transcript.emit(now, "control", command=control.command.value, source="attack")
                next_attack = schedule_next_attack(next_attack, scenario.min_attack_bound, scenario.max_attack_bound, rng)
    finally:
        monitor.close()
        node.close()
