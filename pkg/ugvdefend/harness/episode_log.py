# General imports
from typing import Dict, Iterable, List, Sequence
import csv

# Relative imports
from ..env_simple.rollout import EpisodeResult, StepRecord

STEP_COLUMNS = ("episode", "step", "timestep", "obs_index", "action_id", "reward", "terminated", "truncated")
RETURN_COLUMNS = ("episode", "return", "timesteps")


def _format(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    return str(value)


def write_step_log(path: str, records: Iterable[StepRecord]) -> int:
    """
    Writes one row per environment step. Returns the number of rows.
    """
    rows = 0
    with open(path, "w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(STEP_COLUMNS)
        for record in records:
            writer.writerow([_format(getattr(record, column)) for column in STEP_COLUMNS])
            rows += 1
    return rows


def read_step_log(path: str) -> List[StepRecord]:
    with open(path, "r", encoding="utf-8", newline="") as file:
        reader = csv.DictReader(file)
        return [
            StepRecord(
                episode=int(row["episode"]),
                step=int(row["step"]),
                timestep=int(row["timestep"]),
                obs_index=int(row["obs_index"]),
                action_id=int(row["action_id"]),
                reward=float(row["reward"]),
                terminated=row["terminated"] == "1",
                truncated=row["truncated"] == "1",
            )
            for row in reader
        ]


def episode_returns_from_steps(records: Iterable[StepRecord]) -> Dict[int, float]:
    returns: Dict[int, float] = {}
    for record in records:
        returns[record.episode] = returns.get(record.episode, 0.0) + record.reward
    return returns


def write_returns(path: str, returns: Sequence[float], lengths: Sequence[int]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(RETURN_COLUMNS)
        for episode, (episode_return, timesteps) in enumerate(zip(returns, lengths)):
            writer.writerow([episode, _format(episode_return), timesteps])


def write_episode_results(path: str, results: Sequence[EpisodeResult]) -> None:
    write_returns(path, [r.episode_return for r in results], [r.timesteps for r in results])


def write_curves(path: str, curves: Dict[str, Sequence[float]]) -> None:
    """
    Writes several return curves side by side, one column per strategy. Shorter curves leave empty cells.
    """
    names = list(curves)
    length = max((len(c) for c in curves.values()), default=0)
    with open(path, "w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(["episode", *names])
        for episode in range(length):
            writer.writerow([episode, *(_format(curves[n][episode]) if episode < len(curves[n]) else "" for n in names)])
