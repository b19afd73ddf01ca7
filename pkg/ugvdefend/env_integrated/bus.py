# General imports
from collections import deque
from typing import Any, Deque, Dict, List
import threading


class Subscription:
    """
    Receiving end of one subscriber on one topic. Messages are delivered in publish order.
    """

    def __init__(self, bus: "TopicBus", topic: str) -> None:
        self._bus = bus
        self._topic = topic
        self._inbox: Deque[Any] = deque()

    @property
    def topic(self) -> str:
        return self._topic

    def _deliver(self, message: Any) -> None:
        self._inbox.append(message)

    def pending(self) -> int:
        with self._bus._lock:
            return len(self._inbox)

    def receive(self) -> List[Any]:
        """
        Returns and removes all messages received since the last call, oldest first.
        """
        with self._bus._lock:
            messages = list(self._inbox)
            self._inbox.clear()
        return messages

    def latest(self, default: Any = None) -> Any:
        """
        Drains the inbox and returns only the newest message (or default if nothing arrived).
        """
        messages = self.receive()
        return messages[-1] if messages else default

    def close(self) -> None:
        self._bus.unsubscribe(self)


class TopicBus:
    """
    In-process publish/subscribe bus. Topics are created on first use; publishing appends the message to
    the topic log and delivers it to every current subscriber under one lock, so publishes are atomic and
    per-topic delivery order equals publish order.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._logs: Dict[str, List[Any]] = {}
        self._subscribers: Dict[str, List[Subscription]] = {}

    def publish(self, topic: str, message: Any) -> None:
        with self._lock:
            self._logs.setdefault(topic, []).append(message)
            for subscription in self._subscribers.get(topic, []):
                subscription._deliver(message)

    def subscribe(self, topic: str) -> Subscription:
        subscription = Subscription(self, topic)
        with self._lock:
            self._logs.setdefault(topic, [])
            self._subscribers.setdefault(topic, []).append(subscription)
        return subscription

    def unsubscribe(self, subscription: Subscription) -> None:
        with self._lock:
            subscribers = self._subscribers.get(subscription.topic, [])
            if subscription in subscribers:
                subscribers.remove(subscription)

    def topics(self) -> List[str]:
        with self._lock:
            return sorted(self._logs)

    def log(self, topic: str) -> List[Any]:
        with self._lock:
            return list(self._logs.get(topic, []))

    def subscriber_count(self, topic: str) -> int:
        with self._lock:
            return len(self._subscribers.get(topic, ()))


def publish(bus: TopicBus, topic: str, message: Any) -> None:
    bus.publish(topic, message)
