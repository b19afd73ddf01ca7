def linear_decay(episode: int, episodes: int, initial: float, final: float) -> float:
    """
    Linear per-episode decay from `initial` (first episode) to `final` (last episode).
    """
    if episodes <= 1:
        return initial
    fraction = min(max(episode, 0), episodes - 1) / (episodes - 1)
    return initial + (final - initial) * fraction


def dqn_epsilon(step: int, total_timesteps: int, exploration_fraction: float, initial: float, final: float) -> float:
    """
    Linear decay from `initial` to `final` over the first exploration_fraction of all timesteps, constant after.
    """
    decay_steps = exploration_fraction * total_timesteps
    if decay_steps <= 0:
        return final
    fraction = min(step / decay_steps, 1.0)
    return initial + (final - initial) * fraction
