"""
Reference solutions for the simple environment: the perfect-repair policy and exhaustive backward
induction over (timestep, position, component bits).

optimal_return knows the whole attack schedule in advance and can prepare for it, so it is an upper
bound that no reactive agent reaches. expected_return averages over the random attacker and only acts
on the current state, which is what a trained agent can match.
"""
# General imports
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

# Relative imports
from .attacks import AttackSchedule
from ..core.actions import DO_NOTHING, apply_action, restoring_action
from ..core.components import ComponentStateVector
from ..core.config import ScenarioConfig
from ..core.errors import ConfigurationError
from ..core.observation import VehicleState, decode_observation, encode_observation
from ..core.rewards import Terminal, step_reward
from ..core.scenario import Scenario

# (next timestep, next position, component bits after the action, values of timestep t + 1)
Continuation = Callable[[int, int, int, np.ndarray], float]


class RepairOraclePolicy:
    """
    Chooses the restoring action whenever a component is compromised and Do nothing otherwise.
    """

    def __init__(self, scenario: Scenario) -> None:
        self._scenario = scenario

    def __call__(self, obs_index: int) -> int:
        components = decode_observation(obs_index, self._scenario.components).components
        action = restoring_action(components) or DO_NOTHING
        return self._scenario.action_id(action)


def _transition_tables(scenario: Scenario) -> Tuple[List[ComponentStateVector], List[List[int]], List[List[int]]]:
    vectors = [ComponentStateVector.from_bits(scenario.components, bits) for bits in range(1 << scenario.num_components)]
    after_action = [[apply_action(vector, action).bits() for action in scenario.actions] for vector in vectors]
    toggled = [[vector.toggled(c).bits() for c in range(scenario.num_components)] for vector in vectors]
    return vectors, after_action, toggled


def _backward_induction(cfg: ScenarioConfig,
                        continuation: Continuation,
                        policy_actions: Optional[Sequence[int]],
                        max_states: int,
                        ) -> float:
    """
    Episode return from reset. Maximises over the actions, or follows policy_actions[bits] when given.
    """
    scenario = cfg.scenario
    num_bits = 1 << scenario.num_components
    if cfg.max_timesteps * cfg.goal_step * num_bits > max_states:
        raise ConfigurationError("The instance is too large for exhaustive backward induction")

    vectors, after_action, _ = _transition_tables(scenario)
    nominal = [vector.is_nominal() for vector in vectors]
    all_actions = range(scenario.num_actions)

    # value[position, bits] of the states at timestep t + 1; beyond the time limit nothing is earned
    next_value = np.zeros((cfg.goal_step, num_bits))
    for t in range(cfg.max_timesteps - 1, -1, -1):
        value = np.empty((cfg.goal_step, num_bits))
        timed_out = t + 1 >= cfg.max_timesteps

        for position in range(cfg.goal_step):
            for bits in range(num_bits):
                choices = all_actions if policy_actions is None else (policy_actions[bits],)
                best = -np.inf
                for action_id in choices:
                    action = scenario.actions[action_id]
                    after = after_action[bits][action_id]
                    driving = nominal[after]
                    new_position = position + 1 if driving else position

                    if new_position >= cfg.goal_step:
                        candidate = step_reward(VehicleState.GOAL_REACHED, action, Terminal.GOAL, cfg.rewards)
                    else:
                        vehicle = VehicleState.DRIVING if driving else VehicleState.STATIONARY
                        if timed_out:
                            candidate = step_reward(vehicle, action, Terminal.TIMEOUT, cfg.rewards)
                        else:
                            candidate = (step_reward(vehicle, action, Terminal.NONE, cfg.rewards)
                                         + continuation(t + 1, new_position, after, next_value))
                    best = max(best, candidate)
                value[position, bits] = best
        next_value = value

    return float(next_value[0, scenario.nominal_components().bits()])


def optimal_return(cfg: ScenarioConfig, schedule: AttackSchedule, max_states: int = 5_000_000) -> float:
    """
    Undiscounted optimal episode return from reset when the attack schedule is known in advance.

    Only meant for small instances; refuses instances with more than max_states (t, position, bits) states.
    """
    scenario = cfg.scenario
    schedule.validate(cfg.max_timesteps, scenario.num_components)
    _, _, toggled = _transition_tables(scenario)

    def continuation(t: int, position: int, bits: int, next_value: np.ndarray) -> float:
        attack = schedule.target(t)
        if attack is not None:
            bits = toggled[bits][attack]
        return next_value[position, bits]

    return _backward_induction(cfg, continuation, None, max_states)


def expected_return(cfg: ScenarioConfig,
                    policy: Optional[Callable[[int], int]] = None,
                    max_states: int = 5_000_000,
                    ) -> float:
    """
    Undiscounted expected episode return from reset against the random attacker of cfg.attack_prob.

    Without a policy this is the best any agent can do that reacts to the current state only. With a
    deterministic memoryless policy (observation index to action id) it is that policy's expected return.
    The same arithmetic is used in both cases, so a policy that always picks a best action scores exactly
    the optimum.
    """
    scenario = cfg.scenario
    k = scenario.num_components
    vectors, _, toggled = _transition_tables(scenario)
    stay, hit = 1.0 - cfg.attack_prob, cfg.attack_prob / k

    policy_actions = None
    if policy is not None:
        # the vehicle of a live state is Driving exactly when the components are nominal
        policy_actions = []
        for vector in vectors:
            vehicle = VehicleState.DRIVING if vector.is_nominal() else VehicleState.STATIONARY
            action_id = int(policy(encode_observation(vector, vehicle)))
            scenario.action(action_id)
            policy_actions.append(action_id)

    def continuation(t: int, position: int, bits: int, next_value: np.ndarray) -> float:
        attacked = sum(next_value[position, toggled[bits][c]] for c in range(k))
        return stay * next_value[position, bits] + hit * attacked

    return _backward_induction(cfg, continuation, policy_actions, max_states)
