# General imports
from dataclasses import asdict, replace
from typing import Any, Dict, List, Optional, Sequence
import json
import os
import time

import numpy as np

# Relative imports
from .episode_log import write_curves, write_episode_results, write_returns, write_step_log
from .evaluation import evaluate_policy, mean_of_last, run_transfer
from .model_file import ModelFile, load_model, save_model
from .run_config import RunConfig, load_run_config
from .summary import Algorithm, RunSummary, TransferReport
from .svg_chart import write_line_chart
from .workers import make_executor
from ..agents.dqn import dqn_train
from ..agents.policies import DoNothingPolicy, RandomPolicy, greedy_policy
from ..agents.qlearning import TrainingResult, train_q
from ..core.config import ScenarioConfig
from ..core.errors import ConfigurationError
from ..env_simple.environment import SimpleUGVEnv
from ..env_simple.rollout import run_episode
from ..util.logging import get_logger
from ..util.seeding import make_rng

logger = get_logger(__name__)

TRAINABLE = (Algorithm.QLEARNING, Algorithm.DQN)


def _write_json(path: str, values: Dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8") as file:
        json.dump(values, file, sort_keys=True, indent=2)
        file.write("\n")


def _stem(path: str) -> str:
    root, ext = os.path.splitext(path)
    return root if ext == ".json" else path


def _claim_file(path: str, force: bool) -> None:
    if os.path.exists(path) and not force:
        raise ConfigurationError(f"The file '{path}' already exists; pass --force to overwrite it")
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)


def _claim_directory(path: str, force: bool) -> None:
    if os.path.isdir(path) and os.listdir(path) and not force:
        raise ConfigurationError(f"The output directory '{path}' is not empty; pass --force to overwrite its files")
    if os.path.exists(path) and not os.path.isdir(path):
        raise ConfigurationError(f"The output path '{path}' is not a directory")
    os.makedirs(path, exist_ok=True)


def _require_positive(name: str, value: int) -> None:
    if value < 1:
        raise ConfigurationError(f"{name} must be at least 1 but got {value}")


def train_algorithm(config: RunConfig, algorithm: Algorithm) -> TrainingResult:
    """
    Trains in the simple environment with the scenario seed as root of all randomness.
    """
    scenario = config.scenario
    rng = make_rng(scenario.seed)

    def env_factory() -> SimpleUGVEnv:
        return SimpleUGVEnv(scenario)

    if algorithm is Algorithm.QLEARNING:
        return train_q(env_factory, config.qlearning, rng)
    if algorithm is Algorithm.DQN:
        return dqn_train(env_factory, config.dqn, rng)
    raise ConfigurationError(f"{algorithm.value} cannot be trained")


def _training_section(config: RunConfig, algorithm: Algorithm, result: TrainingResult) -> Dict[str, Any]:
    params = config.qlearning if algorithm is Algorithm.QLEARNING else config.dqn
    return {
        "scenario": config.scenario.to_dict(),
        "hyperparameters": asdict(params),
        "episodes_completed": len(result.episode_returns),
        "final_mean_return": mean_of_last(result.episode_returns),
    }


def cmd_train(config_path: Optional[str],
              algorithm: str,
              out_model_path: str,
              seed: Optional[int] = None,
              episodes: Optional[int] = None,
              timesteps: Optional[int] = None,
              workers: Optional[int] = None,
              force: bool = False,
              trace: bool = False,
              ) -> RunSummary:
    """
    Trains a policy and writes the model file, the training return curve (<stem>.returns.csv) and the
    greedy evaluation summary (<stem>.summary.json). With trace the per-step log of the evaluation
    episodes goes to <stem>.steps.csv.
    """
    selected = Algorithm.from_cli_name(algorithm)
    if selected not in TRAINABLE:
        raise ConfigurationError(f"Only {', '.join(a.cli_name for a in TRAINABLE)} can be trained")
    config = load_run_config(config_path).with_overrides(seed=seed, episodes=episodes, timesteps=timesteps, workers=workers)
    _claim_file(out_model_path, force)
    stem = _stem(out_model_path)

    logger.info("training %s on %s (seed %d)", selected.value, config.scenario.experiment.value, config.scenario.seed)
    result = train_algorithm(config, selected)

    model_file = ModelFile(
        experiment=config.scenario.experiment,
        algorithm=selected.cli_name,
        model=result.model,
        training=_training_section(config, selected, result),
        metadata={"training_time_seconds": result.training_time_seconds, "created": time.strftime("%Y-%m-%dT%H:%M:%S")},
    )
    save_model(model_file, out_model_path)
    write_returns(stem + ".returns.csv", result.episode_returns, result.episode_lengths)

    with make_executor(config.evaluation.workers) as executor:
        evaluation = evaluate_policy(config.scenario, model_file.policy(), config.evaluation.episodes,
                                     config.scenario.seed, executor, record_steps=trace)
    if trace:
        write_step_log(stem + ".steps.csv", (record for r in evaluation for record in r.records))

    summary = RunSummary.from_results(evaluation, algorithm=selected, experiment=config.scenario.experiment,
                                      seed=config.scenario.seed, attack_prob=config.scenario.attack_prob,
                                      training_time_seconds=result.training_time_seconds)
    _write_json(stem + ".summary.json", summary.to_dict())
    logger.info("%s", summary.describe())
    return summary


def cmd_eval(model_path: Optional[str],
             config_path: Optional[str],
             episodes: Optional[int],
             seed: Optional[int],
             out_dir: str,
             algorithm: Optional[str] = None,
             workers: Optional[int] = None,
             force: bool = False,
             ) -> RunSummary:
    """
    Evaluates a trained model greedily, or the random baseline with algorithm "random". Writes
    eval_steps.csv, eval_returns.csv and summary.json to out_dir.
    """
    config = load_run_config(config_path).with_overrides(seed=seed, workers=workers)
    episodes = config.evaluation.episodes if episodes is None else episodes
    _require_positive("The number of evaluation episodes", episodes)
    scenario = config.scenario

    if algorithm is not None and Algorithm.from_cli_name(algorithm) is Algorithm.RANDOM:
        selected = Algorithm.RANDOM
        policy = RandomPolicy(scenario.scenario.num_actions, scenario.seed)
        training_time = 0.0
    else:
        if model_path is None:
            raise ConfigurationError("A model file is required unless --algorithm random is given")
        model_file = load_model(model_path, expected_experiment=scenario.experiment)
        selected = Algorithm.from_cli_name(model_file.algorithm)
        policy = model_file.policy()
        training_time = float(model_file.metadata.get("training_time_seconds", 0.0))

    _claim_directory(out_dir, force)
    with make_executor(config.evaluation.workers) as executor:
        results = evaluate_policy(scenario, policy, episodes, scenario.seed, executor, record_steps=True)

    write_step_log(os.path.join(out_dir, "eval_steps.csv"), (record for r in results for record in r.records))
    write_episode_results(os.path.join(out_dir, "eval_returns.csv"), results)
    summary = RunSummary.from_results(results, algorithm=selected, experiment=scenario.experiment, seed=scenario.seed,
                                      attack_prob=scenario.attack_prob, training_time_seconds=training_time)
    _write_json(os.path.join(out_dir, "summary.json"), summary.to_dict())
    logger.info("%s", summary.describe())
    return summary


def random_curve(scenario: ScenarioConfig, episodes: int, seed: int) -> List[float]:
    """
    Returns of the random baseline over consecutive episodes of one environment, like a training run.
    """
    env = SimpleUGVEnv(scenario)
    policy = RandomPolicy(scenario.scenario.num_actions, seed)
    return [run_episode(env, policy, episode=i, seed=seed if i == 0 else None).episode_return for i in range(episodes)]


def _mean_curve(curves: Sequence[Sequence[float]]) -> List[float]:
    length = min(len(c) for c in curves)
    return np.mean([list(c)[:length] for c in curves], axis=0).tolist() if length else []


def cmd_compare(config_path: Optional[str],
                seeds: Sequence[int],
                out_dir: str,
                include_dqn: bool = False,
                episodes: Optional[int] = None,
                force: bool = False,
                ) -> Dict[str, Any]:
    """
    Trains and compares the strategies: random choice, Q-learning with argmax and with epsilon-greedy
    action selection, optionally DQN. Curves are averaged over the seeds; writes returns.csv,
    returns.svg and summary.json.
    """
    if not seeds:
        raise ConfigurationError("At least one seed is required")
    base = load_run_config(config_path).with_overrides(episodes=episodes)
    _claim_directory(out_dir, force)

    strategies = ["random", "q_argmax", "q_epsilon_greedy"] + (["dqn"] if include_dqn else [])
    per_seed: Dict[str, List[List[float]]] = {name: [] for name in strategies}
    evaluations: Dict[str, List[float]] = {name: [] for name in strategies}

    for seed in seeds:
        config = base.with_overrides(seed=seed)
        scenario = config.scenario
        logger.info("comparing strategies with seed %d", seed)

        per_seed["random"].append(random_curve(scenario, config.qlearning.episodes, seed))
        random_results = evaluate_policy(scenario, RandomPolicy(scenario.scenario.num_actions, seed),
                                         config.evaluation.episodes, seed)
        evaluations["random"].append(float(np.mean([r.episode_return for r in random_results])))

        for name, strategy in (("q_argmax", "argmax"), ("q_epsilon_greedy", "epsilon-greedy")):
            variant = replace(config, qlearning=replace(config.qlearning, strategy=strategy))
            trained = train_algorithm(variant, Algorithm.QLEARNING)
            per_seed[name].append(trained.episode_returns)
            results = evaluate_policy(scenario, greedy_policy(trained.model), config.evaluation.episodes, seed)
            evaluations[name].append(float(np.mean([r.episode_return for r in results])))

        if include_dqn:
            trained = train_algorithm(config, Algorithm.DQN)
            per_seed["dqn"].append(trained.episode_returns)
            results = evaluate_policy(scenario, greedy_policy(trained.model), config.evaluation.episodes, seed)
            evaluations["dqn"].append(float(np.mean([r.episode_return for r in results])))

    curves = {name: _mean_curve(per_seed[name]) for name in strategies}
    write_curves(os.path.join(out_dir, "returns.csv"), curves)
    write_line_chart(os.path.join(out_dir, "returns.svg"), curves,
                     title=f"Total reward per episode ({base.scenario.experiment.value})",
                     window=base.evaluation.smoothing_window)

    report = {
        "experiment": base.scenario.experiment.value,
        "attack_prob": base.scenario.attack_prob,
        "seeds": list(seeds),
        "final_100_mean": {name: mean_of_last(curve) for name, curve in curves.items()},
        "evaluation_mean_reward": {name: float(np.mean(values)) for name, values in evaluations.items()},
    }
    _write_json(os.path.join(out_dir, "summary.json"), report)
    for name in strategies:
        logger.info("%s: final-100 mean %.2f, greedy evaluation mean %.2f",
                    name, report["final_100_mean"][name], report["evaluation_mean_reward"][name])
    return report


def cmd_transfer(model_path: Optional[str],
                 integrated_config_path: Optional[str],
                 missions: Optional[int],
                 seed: Optional[int],
                 out_dir: str,
                 algorithm: Optional[str] = None,
                 realtime: bool = False,
                 paced: bool = True,
                 workers: Optional[int] = None,
                 force: bool = False,
                 ) -> TransferReport:
    """
    Runs a policy trained in the simple environment in the integrated environment. Baselines: algorithm
    "random" or "donothing" instead of a model. Writes transfer.json and mission_<i>.jsonl transcripts.
    """
    config = load_run_config(integrated_config_path).with_overrides(seed=seed, workers=workers)
    missions = config.evaluation.missions if missions is None else missions
    _require_positive("The number of missions", missions)
    scenario = config.integrated
    model = scenario.scenario

    if algorithm == "donothing":
        policy = DoNothingPolicy()
    elif algorithm is not None and Algorithm.from_cli_name(algorithm) is Algorithm.RANDOM:
        policy = RandomPolicy(model.num_actions, scenario.seed)
    else:
        if model_path is None:
            raise ConfigurationError("A model file is required unless a baseline algorithm is given")
        policy = load_model(model_path, expected_experiment=scenario.experiment).policy()

    _claim_directory(out_dir, force)
    logger.info("running %d missions on %s at clock scale %s", missions, scenario.experiment.value,
                1.0 if realtime else scenario.clock_scale)
    with make_executor(config.evaluation.workers) as executor:
        outcomes = run_transfer(scenario, policy, missions, scenario.seed, executor, paced=paced, realtime=realtime)

    for i, (_, events) in enumerate(outcomes):
        with open(os.path.join(out_dir, f"mission_{i}.jsonl"), "w", encoding="utf-8") as file:
            for event in events:
                file.write(json.dumps(event, sort_keys=True) + "\n")

    report = TransferReport.from_results([result for result, _ in outcomes], experiment=scenario.experiment, seed=scenario.seed)
    values = report.to_dict()
    values["missions_detail"] = [result.to_dict() for result, _ in outcomes]
    _write_json(os.path.join(out_dir, "transfer.json"), values)
    logger.info("%s", report.describe())
    return report
