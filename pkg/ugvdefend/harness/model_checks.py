"""
Named validation steps for raw model files. A check returns a bool or a (bool, message) tuple, and
run_model_checks stops at the first failing one.
"""
# General imports
from typing import Any, Callable, Dict, Mapping, Sequence, Tuple, Union

# Relative imports
from ..core.components import Experiment
from ..core.scenario import scenario_for

FORMAT_VERSION = 1
ALGORITHMS = ("qlearning", "dqn")

ModelCheck = Callable[[Mapping[str, Any]], Union[bool, Tuple[bool, str]]]  # type-alias


def name_model_check(name: str) -> Callable[[ModelCheck], ModelCheck]:
    """
    Decorator which sets a custom name for the check function.
    """
    def named_check(check: ModelCheck) -> ModelCheck:
        check.model_check_name = name
        return check

    return named_check


def get_model_check_name(check: ModelCheck) -> str:
    if hasattr(check, "model_check_name"):
        name: str = check.model_check_name
    else:
        name: str = check.__name__
    return name


@name_model_check("required-keys")
def required_keys_check(raw: Mapping[str, Any]) -> Tuple[bool, str]:
    missing = [key for key in ("format_version", "experiment", "algorithm", "payload") if key not in raw]
    return not missing, f"Missing keys: {', '.join(missing)}"


@name_model_check("format-version")
def format_version_check(raw: Mapping[str, Any]) -> Tuple[bool, str]:
    version = raw["format_version"]
    return type(version) is int and version == FORMAT_VERSION, f"Unsupported format_version {version!r} (supported: {FORMAT_VERSION})"


@name_model_check("known-experiment")
def experiment_check(raw: Mapping[str, Any]) -> Tuple[bool, str]:
    known = [e.value for e in Experiment]
    return raw["experiment"] in known, f"Unknown experiment {raw['experiment']!r} (known: {', '.join(known)})"


@name_model_check("known-algorithm")
def algorithm_check(raw: Mapping[str, Any]) -> Tuple[bool, str]:
    return raw["algorithm"] in ALGORITHMS, f"Unknown algorithm {raw['algorithm']!r}"


def _expected_shape(raw: Mapping[str, Any]) -> Tuple[int, int]:
    scenario = scenario_for(Experiment(raw["experiment"]))
    return scenario.num_states, scenario.num_actions


@name_model_check("payload-shape")
def payload_shape_check(raw: Mapping[str, Any]) -> Tuple[bool, str]:
    payload = raw["payload"]
    num_states, num_actions = _expected_shape(raw)
    if not isinstance(payload, dict):
        return False, "The payload must be a mapping"

    if raw["algorithm"] == "qlearning":
        shape = payload.get("shape")
        values = payload.get("values")
        if shape != [num_states, num_actions]:
            return False, f"Q-table shape {shape} does not match {raw['experiment']} ({num_states}x{num_actions})"
        if not isinstance(values, list) or len(values) != num_states * num_actions:
            return False, f"Expected {num_states * num_actions} Q-values"
        return True, ""

    sizes = payload.get("layer_sizes")
    weights = payload.get("weights")
    if not isinstance(sizes, list) or len(sizes) < 2 or sizes[0] != num_states or sizes[-1] != num_actions:
        return False, f"Layer sizes {sizes} do not match {raw['experiment']} ({num_states} inputs, {num_actions} outputs)"
    if not isinstance(weights, list) or len(weights) != 2 * (len(sizes) - 1):
        return False, f"Expected {2 * (len(sizes) - 1)} weight arrays"
    for i, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
        if not isinstance(weights[2 * i], list) or len(weights[2 * i]) != fan_in * fan_out:
            return False, f"Weight matrix {i} must hold {fan_in * fan_out} values"
        if not isinstance(weights[2 * i + 1], list) or len(weights[2 * i + 1]) != fan_out:
            return False, f"Bias vector {i} must hold {fan_out} values"
    return True, ""


FORMAT_CHECKS: Sequence[ModelCheck] = (
    required_keys_check,
    format_version_check,
    experiment_check,
    algorithm_check,
    payload_shape_check,
)


def create_experiment_check(expected: Experiment) -> ModelCheck:
    """
    Creates a check which only lets through models trained for the given experiment
    """

    @name_model_check("matching-experiment")
    def matching_experiment(raw: Mapping[str, Any]) -> Tuple[bool, str]:
        return raw["experiment"] == expected.value, \
            f"The model was trained for {raw['experiment']} but the scenario is {expected.value}"

    return matching_experiment


def run_model_checks(raw: Dict[str, Any], checks: Sequence[ModelCheck], source: str = "model") -> str:
    """
    Returns an empty string if all checks pass, otherwise an expressive error string for the first failure.
    """
    for i, check in enumerate(checks):
        result = check(raw)

        if isinstance(result, bool):
            success = result
            error_description = None
        else:
            success, error_description = result

        if success:
            continue

        if error_description:
            return f"The {source} is invalid due to check {i} with name \"{get_model_check_name(check)}\" " \
                   f"which failed with error-message \"{error_description}\""
        return f"The {source} is invalid due to check {i} with name \"{get_model_check_name(check)}\""
    return ""
