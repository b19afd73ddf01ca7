# General imports
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

# Relative imports
from .environment import SimpleUGVEnv

Policy = Callable[[int], int]  # observation index -> action id


@dataclass(frozen=True)
class StepRecord:
    """
    One row of the per-step episode log.
    """
    episode: int
    step: int
    timestep: int
    obs_index: int
    action_id: int
    reward: float
    terminated: bool
    truncated: bool


@dataclass
class EpisodeResult:
    episode: int
    episode_return: float
    timesteps: int
    success: bool
    records: List[StepRecord] = field(default_factory=list)


def run_episode(env: SimpleUGVEnv,
                policy: Policy,
                *,
                episode: int = 0,
                seed: Optional[int] = None,
                options: Optional[Dict[str, Any]] = None,
                record_steps: bool = False,
                ) -> EpisodeResult:
    """
    Plays one episode with a fixed policy. `step` in the records counts the steps of this episode,
    `timestep` is the environment time at which the action was chosen.
    """
    obs, _ = env.reset(seed=seed, options=options)
    result = EpisodeResult(episode=episode, episode_return=0.0, timesteps=0, success=False)

    while True:
        action_id = int(policy(obs))
        timestep = env.state.t
        next_obs, reward, terminated, truncated, info = env.step(action_id)

        result.episode_return += reward
        result.timesteps += 1
        if record_steps:
            result.records.append(StepRecord(episode, result.timesteps - 1, timestep, obs, action_id, reward, terminated, truncated))

        obs = next_obs
        if terminated or truncated:
            result.success = bool(info["success"])
            return result
