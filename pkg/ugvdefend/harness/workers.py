"""
Executors for independent episodes and missions. Results always come back in submission order, so the
worker count never changes what a run produces.
"""
# General imports
from abc import ABC, abstractmethod
from concurrent.futures import Future, ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, Optional

# Relative imports
from ..core.errors import ConfigurationError
from ..util.logging import get_logger

logger = get_logger(__name__)


def completed_future(result: Any = None, exception: Optional[BaseException] = None) -> Future:
    """
    Future which already holds the outcome of an inline call.
    """
    future: Future = Future()
    if exception is not None:
        future.set_exception(exception)
    else:
        future.set_result(result)
    return future


class EpisodeExecutor(ABC):
    """
    Runs independent episodes or missions. Tasks must be module-level functions with picklable
    arguments so that every executor can run them.
    """

    @abstractmethod
    def submit(self, task: Callable[..., Any], *args: Any, **kw_args: Any) -> Future:
        ...

    def map(self, task: Callable[..., Any], argument_tuples: Iterable[tuple]) -> List[Any]:
        futures = [self.submit(task, *args) for args in argument_tuples]
        return [future.result() for future in futures]

    def shutdown(self) -> None:
        ...

    def __enter__(self) -> "EpisodeExecutor":
        return self

    def __exit__(self, *exc_info: Any) -> None:
        self.shutdown()


class LocalEpisodeExecutor(EpisodeExecutor):
    def submit(self, task: Callable[..., Any], *args: Any, **kw_args: Any) -> Future:
        try:
            return completed_future(task(*args, **kw_args))
        except Exception as e:
            return completed_future(exception=e)


class ProcessEpisodeExecutor(EpisodeExecutor):
    def __init__(self, workers: int) -> None:
        super().__init__()
        self._executor = ProcessPoolExecutor(max_workers=workers)

    def submit(self, task: Callable[..., Any], *args: Any, **kw_args: Any) -> Future:
        return self._executor.submit(task, *args, **kw_args)

    def shutdown(self) -> None:
        self._executor.shutdown(wait=True)


def make_executor(workers: int) -> EpisodeExecutor:
    if workers < 1:
        raise ConfigurationError(f"The number of workers must be at least 1 but got {workers}")
    if workers == 1:
        return LocalEpisodeExecutor()
    logger.debug("using %d worker processes", workers)
    return ProcessEpisodeExecutor(workers)
