# General imports
from typing import Any, Dict, Iterable, List
import json

# Relative imports
from ..core.errors import DomainError

EVENT_TYPES = ("attack", "action", "control", "tick", "terminal")


class MissionTranscript:
    """
    Ordered event log of one mission, written as line-delimited JSON.
    """

    def __init__(self, record_ticks: bool = True) -> None:
        self._events: List[Dict[str, Any]] = []
        self._record_ticks = record_ticks

    def emit(self, timestamp: float, event: str, **payload: Any) -> None:
        if event not in EVENT_TYPES:
            raise DomainError(f"Unknown transcript event \"{event}\"")
        if event == "tick" and not self._record_ticks:
            return
        self._events.append({"time": round(timestamp, 6), "event": event, "payload": payload})

    @property
    def events(self) -> List[Dict[str, Any]]:
        return list(self._events)

    def of_type(self, event: str) -> List[Dict[str, Any]]:
        return [e for e in self._events if e["event"] == event]

    def lines(self) -> Iterable[str]:
        for event in self._events:
            yield json.dumps(event, sort_keys=True)

    def write(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as file:
            for line in self.lines():
                file.write(line + "\n")
