# General imports
import logging
from typing import Any, Dict, Optional, Tuple, Union

import gymnasium as gym
from gymnasium import spaces

# Relative imports
from .attacks import AttackSchedule, EnvState, apply_attack, make_attack_list
from ..core.actions import Action, apply_action
from ..core.config import ScenarioConfig
from ..core.errors import ConfigurationError, DomainError
from ..core.observation import Observation, VehicleState, derive_vehicle_state, make_observation
from ..core.rewards import Terminal, step_reward
from ..util.logging import get_logger

logger = get_logger(__name__)

StepResult = Tuple[int, float, bool, bool, Dict[str, Any]]


class SimpleUGVEnv(gym.Env):
    """
    Discrete incident-response environment with a scheduled attacker.

    Observations and actions are integers: the encoded observation index and the index into the
    scenario's enumerated action space. `info["observation"]` carries the decoded Observation.

    One step applies the agent's action, derives the vehicle state, moves the vehicle if it is driving,
    emits the reward and only then applies the attack scheduled for the new timestep (if the episode
    continues). Position and time are not part of the observation.
    """

    metadata = {"render_modes": ["ansi"]}

    def __init__(self, config: ScenarioConfig, render_mode: Optional[str] = None) -> None:
        super().__init__()
        self._config = config
        self._scenario = config.scenario
        self.render_mode = render_mode

        self.observation_space = spaces.Discrete(self._scenario.num_states)
        self.action_space = spaces.Discrete(self._scenario.num_actions)

        self._state: Optional[EnvState] = None
        self._ended = True
        self._seeded = False

    @property
    def config(self) -> ScenarioConfig:
        return self._config

    @property
    def scenario(self):
        return self._scenario

    @property
    def state(self) -> EnvState:
        if self._state is None:
            raise DomainError("The environment must be reset before use")
        return self._state

    def reset(self, *, seed: Optional[int] = None, options: Optional[Dict[str, Any]] = None) -> Tuple[int, Dict[str, Any]]:
        """
        Starts a new episode with nominal components and a fresh attack schedule. Without a seed the first
        reset uses the configured seed and later resets continue the same random stream.

        options["schedule"] replaces the random schedule by a fixed AttackSchedule.
        """
        if seed is None and not self._seeded:
            seed = self._config.seed
        super().reset(seed=seed)
        self._seeded = True

        cfg = self._config
        schedule = (options or {}).get("schedule")
        if schedule is None:
            schedule = make_attack_list(cfg.attack_prob, cfg.max_timesteps, self._scenario.num_components, self.np_random)
        elif not isinstance(schedule, AttackSchedule):
            raise ConfigurationError(f"The schedule option must be an AttackSchedule but got {type(schedule).__name__}")
        schedule.validate(cfg.max_timesteps, self._scenario.num_components)

        components = self._scenario.nominal_components()
        self._state = EnvState(
            t=0,
            position=0,
            components=components,
            vehicle=derive_vehicle_state(components, 0, cfg.goal_step, VehicleState.STATIONARY),
            schedule=schedule,
            rng=self.np_random,
        )
        self._ended = False

        observation = self.observation()
        return observation.index, self._info(observation, attacked=None, terminal=Terminal.NONE)

    def observation(self) -> Observation:
        return make_observation(self.state.components, self.state.vehicle)

    def resolve_action(self, action: Union[int, Action]) -> Action:
        if isinstance(action, Action):
            self._scenario.action_id(action)
            return action
        try:
            return self._scenario.action(int(action))
        except (TypeError, ValueError):
            raise DomainError(f"Invalid action {action!r}") from None

    def step(self, action: Union[int, Action]) -> StepResult:
        if self._ended:
            raise DomainError("The episode has ended; call reset() before stepping again")

        cfg = self._config
        state = self.state
        chosen = self.resolve_action(action)

        components = apply_action(state.components, chosen)
        vehicle = derive_vehicle_state(components, state.position, cfg.goal_step, state.vehicle)
        position = state.position + (1 if vehicle is VehicleState.DRIVING else 0)

        terminal = Terminal.NONE
        terminated = truncated = False
        if position >= cfg.goal_step:
            vehicle = VehicleState.GOAL_REACHED
            terminated = True
            terminal = Terminal.GOAL

        t = state.t + 1
        if not terminated and t >= cfg.max_timesteps:
            truncated = True
            terminal = Terminal.TIMEOUT

        reward = step_reward(vehicle, chosen, terminal, cfg.rewards)

        state = EnvState(t, position, components, vehicle, state.schedule, state.rng)
        attacked = None
        if not (terminated or truncated) and t in state.schedule:
            attacked = state.schedule.target(t)
            state = apply_attack(state, attacked)
            vehicle = derive_vehicle_state(state.components, position, cfg.goal_step, vehicle)
            state = EnvState(t, position, state.components, vehicle, state.schedule, state.rng)

        self._state = state
        self._ended = terminated or truncated

        observation = self.observation()
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug("t=%d pos=%d action=%s reward=%s attacked=%s obs=%d",
                         t, position, chosen.label(self._scenario.components), reward, attacked, observation.index)
        return observation.index, reward, terminated, truncated, self._info(observation, attacked, terminal)

    def _info(self, observation: Observation, attacked: Optional[int], terminal: Terminal) -> Dict[str, Any]:
        state = self.state
        return {
            "t": state.t,
            "position": state.position,
            "vehicle": state.vehicle,
            "components": state.components,
            "observation": observation,
            "attacked": attacked,
            "success": terminal is Terminal.GOAL,
        }

    def render(self) -> Optional[str]:
        if self.render_mode != "ansi" or self._state is None:
            return None
        state = self._state
        return (f"t={state.t:5d} position={state.position:4d}/{self._config.goal_step} "
                f"{state.vehicle.label:12s} [{state.components.describe()}]")
