# General imports
from dataclasses import dataclass, field, replace, asdict
from typing import Any, Dict, Mapping, Optional
import os

import yaml

# Relative imports
from .components import Experiment
from .errors import ConfigurationError
from .rewards import RewardConfig
from .scenario import Scenario, scenario_for
from ..util.config_section import ParameterSection
from ..util.seeding import check_seed


# Sections owned by other packages; the scenario loader only checks that they are mappings.
NESTED_SECTIONS = ("rewards", "qlearning", "dqn", "integrated", "evaluation")

SCENARIO_PARAMETERS: Dict[str, Dict[str, Any]] = {
    "experiment": {"type": "options", "options": [e.value for e in Experiment], "default": Experiment.EXP1.value,
                   "description": "Component set: Exp1 (3 toggleable) or Exp2 (3 toggleable + 3 publishable)"},
    "max_timesteps": {"type": "int", "default": 1800, "min": 1, "description": "Episode time limit in steps"},
    "goal_step": {"type": "int", "default": 800, "min": 1, "description": "Position of the goal"},
    "attack_prob": {"type": "float", "default": 0.1, "min": 0.0, "max": 1.0,
                    "description": "Per-timestep probability of one attack"},
    "seed": {"type": "int", "default": 0, "min": 0, "max": 2**64 - 1, "description": "Root seed of the run"},
}

REWARD_PARAMETERS: Dict[str, Dict[str, Any]] = {
    name: {"type": "float", "default": value}
    for name, value in RewardConfig().to_dict().items()
}


@dataclass(frozen=True)
class ScenarioConfig:
    experiment: Experiment = Experiment.EXP1
    max_timesteps: int = 1800
    goal_step: int = 800
    attack_prob: float = 0.1
    seed: int = 0
    rewards: RewardConfig = field(default_factory=RewardConfig)

    def __post_init__(self) -> None:
        if self.max_timesteps <= 0 or self.goal_step <= 0:
            raise ConfigurationError("max_timesteps and goal_step must be positive")
        if self.goal_step > self.max_timesteps:
            raise ConfigurationError(f"goal_step ({self.goal_step}) must not exceed max_timesteps ({self.max_timesteps})")
        if not (0.0 <= self.attack_prob <= 1.0):
            raise ConfigurationError(f"attack_prob must lie in [0, 1] but got {self.attack_prob}")
        check_seed(self.seed)

    @property
    def scenario(self) -> Scenario:
        return scenario_for(self.experiment)

    def with_overrides(self, **changes: Any) -> "ScenarioConfig":
        return replace(self, **{key: value for key, value in changes.items() if value is not None})

    def to_dict(self) -> Dict[str, Any]:
        values = asdict(self)
        values["experiment"] = self.experiment.value
        return values


def load_config_file(path: str) -> Dict[str, Any]:
    """
    Reads a YAML config file. An empty file is an empty config.
    """
    if not os.path.isfile(path):
        raise ConfigurationError(f"No such config file: '{path}'")

    try:
        with open(path, "r", encoding="utf-8") as file:
            raw = yaml.safe_load(file)
    except yaml.YAMLError as e:
        raise ConfigurationError(f"The config file '{path}' is not valid YAML: {e}") from e

    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ConfigurationError(f"The config file '{path}' must contain a mapping at the top level")
    return raw


def section(raw: Mapping[str, Any], name: str) -> Optional[Mapping[str, Any]]:
    value = raw.get(name)
    if value is not None and not isinstance(value, Mapping):
        raise ConfigurationError(f"The section \"{name}\" must be a mapping")
    return value


def reward_config_from_dict(raw: Optional[Mapping[str, Any]]) -> RewardConfig:
    values = ParameterSection("rewards", REWARD_PARAMETERS).apply(raw).get_all_parameter_values()
    return RewardConfig(**values)


def scenario_config_from_dict(raw: Mapping[str, Any]) -> ScenarioConfig:
    top_level = {key: value for key, value in raw.items() if key not in NESTED_SECTIONS}
    for name in NESTED_SECTIONS:
        section(raw, name)

    values = ParameterSection("scenario", SCENARIO_PARAMETERS).apply(top_level).get_all_parameter_values()
    values["experiment"] = Experiment(values["experiment"])
    return ScenarioConfig(rewards=reward_config_from_dict(raw.get("rewards")), **values)


def load_scenario_config(path: str) -> ScenarioConfig:
    return scenario_config_from_dict(load_config_file(path))
