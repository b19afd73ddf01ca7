# General imports
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Mapping, Optional

# Relative imports
from ..agents.dqn import DQN_PARAMETERS, DQNParams
from ..agents.qlearning import QLEARNING_PARAMETERS, QLearningParams
from ..core.config import ScenarioConfig, load_config_file, scenario_config_from_dict, section
from ..env_integrated.mission import IntegratedScenario, integrated_scenario_from_dict
from ..util.config_section import ParameterSection

EVALUATION_PARAMETERS: Dict[str, Dict[str, Any]] = {
    "episodes": {"type": "int", "default": 100, "min": 1, "description": "Evaluation episodes per policy"},
    "missions": {"type": "int", "default": 20, "min": 1, "description": "Integrated missions per transfer run"},
    "workers": {"type": "int", "default": 1, "min": 1, "description": "Worker processes for evaluation"},
    "smoothing_window": {"type": "int", "default": 20, "min": 1, "description": "Moving-average window of the charts"},
}


@dataclass(frozen=True)
class EvaluationParams:
    episodes: int = 100
    missions: int = 20
    workers: int = 1
    smoothing_window: int = 20


@dataclass(frozen=True)
class RunConfig:
    """
    Everything one config file describes: the simple scenario, both learners, the integrated mission
    and the evaluation settings.
    """
    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
    qlearning: QLearningParams = field(default_factory=QLearningParams)
    dqn: DQNParams = field(default_factory=DQNParams)
    integrated: IntegratedScenario = field(default_factory=IntegratedScenario)
    evaluation: EvaluationParams = field(default_factory=EvaluationParams)

    def with_overrides(self,
                       seed: Optional[int] = None,
                       episodes: Optional[int] = None,
                       timesteps: Optional[int] = None,
                       workers: Optional[int] = None,
                       ) -> "RunConfig":
        """
        Applies command line overrides. `episodes` sets the Q-learning training episodes, `timesteps` the DQN budget.
        """
        config = self
        if seed is not None:
            config = replace(config, scenario=config.scenario.with_overrides(seed=seed),
                             integrated=replace(config.integrated, seed=seed))
        if episodes is not None:
            config = replace(config, qlearning=replace(config.qlearning, episodes=episodes))
        if timesteps is not None:
            config = replace(config, dqn=replace(config.dqn, total_timesteps=timesteps))
        if workers is not None:
            config = replace(config, evaluation=replace(config.evaluation, workers=workers))
        return config


def _section_values(raw: Mapping[str, Any], name: str, specification: Dict[str, Dict[str, Any]]) -> Dict[str, Any]:
    return ParameterSection(name, specification).apply(section(raw, name)).get_all_parameter_values()


def run_config_from_dict(raw: Mapping[str, Any]) -> RunConfig:
    return RunConfig(
        scenario=scenario_config_from_dict(raw),
        qlearning=QLearningParams(**_section_values(raw, "qlearning", QLEARNING_PARAMETERS)),
        dqn=DQNParams(**_section_values(raw, "dqn", DQN_PARAMETERS)),
        integrated=integrated_scenario_from_dict(raw),
        evaluation=EvaluationParams(**_section_values(raw, "evaluation", EVALUATION_PARAMETERS)),
    )


def load_run_config(path: Optional[str]) -> RunConfig:
    """
    Without a path every section takes its defaults.
    """
    if path is None:
        return RunConfig()
    return run_config_from_dict(load_config_file(path))
