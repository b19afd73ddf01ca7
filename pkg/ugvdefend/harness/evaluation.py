# General imports
from dataclasses import replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

# Relative imports
from .workers import EpisodeExecutor, LocalEpisodeExecutor
from ..core.config import ScenarioConfig
from ..env_integrated.clock import SimulatedClock, make_clock
from ..env_integrated.mission import IntegratedScenario, MissionResult, Policy, run_mission
from ..env_integrated.transcript import MissionTranscript
from ..env_simple.environment import SimpleUGVEnv
from ..env_simple.rollout import EpisodeResult, run_episode
from ..util.logging import get_logger
from ..util.seeding import spawn_seeds

logger = get_logger(__name__)


def _reseed(policy: Policy, seed: int) -> None:
    reseed = getattr(policy, "reseed", None)
    if reseed is not None:
        reseed(seed)


def evaluate_episode(config: ScenarioConfig, policy: Policy, episode: int, seed: int, record_steps: bool) -> EpisodeResult:
    """
    One evaluation episode in a fresh environment. Module level so worker processes can run it.
    """
    _reseed(policy, seed)
    return run_episode(SimpleUGVEnv(config), policy, episode=episode, seed=seed, record_steps=record_steps)


def evaluate_policy(config: ScenarioConfig,
                    policy: Policy,
                    episodes: int,
                    seed: int,
                    executor: Optional[EpisodeExecutor] = None,
                    record_steps: bool = False,
                    ) -> List[EpisodeResult]:
    """
    Episode i uses the i-th seed spawned from `seed`, so results do not depend on the executor.
    """
    executor = executor or LocalEpisodeExecutor()
    seeds = spawn_seeds(seed, episodes)
    results = executor.map(evaluate_episode, [(config, policy, i, s, record_steps) for i, s in enumerate(seeds)])
    logger.debug("evaluated %d episodes", len(results))
    return results


def run_transfer_mission(scenario: IntegratedScenario,
                         policy: Policy,
                         mission: int,
                         seed: int,
                         paced: bool,
                         realtime: bool,
                         ) -> Tuple[MissionResult, List[Dict[str, Any]]]:
    """
    One integrated mission with its own seed. Returns the result and the transcript events.
    """
    _reseed(policy, seed)
    clock = make_clock(scenario.clock_scale, realtime) if paced else SimulatedClock()
    transcript = MissionTranscript(record_ticks=scenario.record_ticks)
    result = run_mission(policy, replace(scenario, seed=seed), clock, transcript)
    logger.info("mission %d: %s after %.1f s, %d attacks, %d responses",
                mission, "success" if result.success else "failure", result.elapsed,
                result.attacks_injected, result.responses)
    return result, transcript.events


def run_transfer(scenario: IntegratedScenario,
                 policy: Policy,
                 missions: int,
                 seed: int,
                 executor: Optional[EpisodeExecutor] = None,
                 paced: bool = True,
                 realtime: bool = False,
                 ) -> List[Tuple[MissionResult, List[Dict[str, Any]]]]:
    executor = executor or LocalEpisodeExecutor()
    seeds = spawn_seeds(seed, missions)
    return executor.map(run_transfer_mission, [(scenario, policy, i, s, paced, realtime) for i, s in enumerate(seeds)])


def mean_of_last(values: Sequence[float], window: int = 100) -> float:
    tail = list(values)[-window:]
    return float(sum(tail) / len(tail)) if tail else float("nan")
