# General imports
from abc import ABC, abstractmethod
import time

# Relative imports
from ..core.errors import ConfigurationError


class Clock(ABC):
    """
    Simulated mission time. Implementations only differ in how much wall time an advance takes, never
    in the simulated time they report.
    """

    def __init__(self) -> None:
        self._now = 0.0
        self._ticks = 0

    def now(self) -> float:
        return self._now

    def advance(self, dt: float) -> float:
        self._wait(dt)
        self._ticks += 1
        self._now = self._ticks * dt
        return self._now

    @abstractmethod
    def _wait(self, dt: float) -> None:
        ...


class SimulatedClock(Clock):
    """
    Advances instantly.
    """

    def _wait(self, dt: float) -> None:
        pass


class PacedClock(Clock):
    """
    Advances at clock_scale times real time, e.g. clock_scale=1 runs the mission in real time.
    """

    def __init__(self, clock_scale: float = 1.0) -> None:
        super().__init__()
        if clock_scale < 1.0:
            raise ConfigurationError(f"clock_scale must be at least 1 but got {clock_scale}")
        self._scale = clock_scale
        self._deadline = None

    def _wait(self, dt: float) -> None:
        now = time.monotonic()
        if self._deadline is None:
            self._deadline = now
        self._deadline += dt / self._scale
        if self._deadline > now:
            time.sleep(self._deadline - now)


def make_clock(clock_scale: float, realtime: bool = False) -> Clock:
    return PacedClock(1.0 if realtime else clock_scale)
