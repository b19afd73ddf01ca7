# General imports
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union
import json
import os

import numpy as np

# Relative imports
from .model_checks import FORMAT_CHECKS, FORMAT_VERSION, create_experiment_check, run_model_checks
from ..agents.network import Approximator
from ..agents.policies import GreedyPolicy, greedy_policy
from ..agents.qlearning import QTable
from ..core.components import Experiment
from ..core.errors import ConfigurationError, ModelFormatError
from ..core.scenario import Scenario, scenario_for

ActionValues = Union[QTable, Approximator]


@dataclass
class ModelFile:
    """
    A trained policy together with the experiment it was trained for.

    `training` holds deterministic facts about the run (seed, episodes, hyperparameters); wall-clock values
    such as the training time live in `metadata`, so two runs with the same seed only differ there.
    """
    experiment: Experiment
    algorithm: str
    model: ActionValues
    training: Dict[str, Any] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    @property
    def scenario(self) -> Scenario:
        return scenario_for(self.experiment)

    def policy(self) -> GreedyPolicy:
        return greedy_policy(self.model)

    def payload(self) -> Dict[str, Any]:
        if isinstance(self.model, QTable):
            return {"shape": list(self.model.values.shape), "values": self.model.values.ravel().tolist()}
        return {
            "layer_sizes": list(self.model.layer_sizes),
            "weights": [w.ravel().tolist() for w in self.model.weights],
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "format_version": self.format_version,
            "experiment": self.experiment.value,
            "algorithm": self.algorithm,
            "payload": self.payload(),
            "training": self.training,
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, raw: Any, expected_experiment: Optional[Experiment] = None, source: str = "model") -> "ModelFile":
        if not isinstance(raw, dict):
            raise ModelFormatError(f"The {source} must contain a JSON object at the top level")

        error_string = run_model_checks(raw, FORMAT_CHECKS, source)
        if error_string:
            raise ModelFormatError(error_string)
        if expected_experiment is not None:
            error_string = run_model_checks(raw, [create_experiment_check(expected_experiment)], source)
            if error_string:
                raise ConfigurationError(error_string)

        payload = raw["payload"]
        try:
            if raw["algorithm"] == "qlearning":
                model: ActionValues = QTable(np.asarray(payload["values"], dtype=np.float64).reshape(payload["shape"]))
                finite = bool(np.all(np.isfinite(model.values)))
            else:
                sizes = tuple(int(s) for s in payload["layer_sizes"])
                weights = []
                for i, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
                    weights.append(np.asarray(payload["weights"][2 * i], dtype=np.float64).reshape(fan_in, fan_out))
                    weights.append(np.asarray(payload["weights"][2 * i + 1], dtype=np.float64))
                model = Approximator(sizes, weights)
                finite = model.is_finite()
        except (TypeError, ValueError) as e:
            raise ModelFormatError(f"The {source} holds malformed values: {e}") from e
        if not finite:
            raise ModelFormatError(f"The {source} holds non-finite values")

        return cls(
            experiment=Experiment(raw["experiment"]),
            algorithm=raw["algorithm"],
            model=model,
            training=dict(raw.get("training") or {}),
            metadata=dict(raw.get("metadata") or {}),
            format_version=raw["format_version"],
        )


def dumps_model(model_file: ModelFile) -> str:
    return json.dumps(model_file.to_dict(), sort_keys=True, indent=1) + "\n"


def save_model(model_file: ModelFile, path: str) -> None:
    """
    Writes the model as JSON. The file is written under a temporary name first, so an interrupted save
    never leaves a partial model at `path`.
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    temporary = path + ".tmp"
    with open(temporary, "w", encoding="utf-8") as file:
        file.write(dumps_model(model_file))
    os.replace(temporary, path)


def load_model(path: str, expected_experiment: Optional[Experiment] = None) -> ModelFile:
    if not os.path.isfile(path):
        raise ConfigurationError(f"No such model file: '{path}'")

    with open(path, "r", encoding="utf-8") as file:
        text = file.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"The model file '{path}' is truncated or not valid JSON: {e}") from e
    return ModelFile.from_dict(raw, expected_experiment, source=f"model file '{path}'")
