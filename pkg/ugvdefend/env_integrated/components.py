# General imports
from typing import List

# Relative imports
from .bus import Subscription, TopicBus
from .messages import CONTROL_TOPIC, ComponentMessage, ControlCommand, ControlMessage, component_topic
from ..core.components import ComponentStateVector


class ComponentBoard:
    """
    The vehicle's component model inside the integrated environment. Every change is published on the
    component's topic.
    """

    def __init__(self, bus: TopicBus, vector: ComponentStateVector) -> None:
        self._bus = bus
        self.vector = vector

    def topic(self, index: int) -> str:
        return component_topic(self.vector.specs[index].slug)

    def publish_state(self, index: int, timestamp: float) -> None:
        spec = self.vector.specs[index]
        self._bus.publish(self.topic(index), ComponentMessage(spec.name, self.vector[index], timestamp))

    def publish_all(self, timestamp: float) -> None:
        for i in range(len(self.vector)):
            self.publish_state(i, timestamp)

    def publish_control(self, timestamp: float) -> ControlMessage:
        """
        FollowTrajectory while every component is nominal, otherwise Stop.
        """
        command = ControlCommand.FOLLOW_TRAJECTORY if self.vector.is_nominal() else ControlCommand.STOP
        message = ControlMessage(command, timestamp)
        self._bus.publish(CONTROL_TOPIC, message)
        return message


class ComponentMonitor:
    """
    Agent-side view of the component states, refreshed by polling the component topics.
    """

    def __init__(self, bus: TopicBus, initial: ComponentStateVector) -> None:
        self._vector = initial
        self._subscriptions: List[Subscription] = [
            bus.subscribe(component_topic(spec.slug)) for spec in initial.specs
        ]

    def poll(self) -> ComponentStateVector:
        vector = self._vector
        for i, subscription in enumerate(self._subscriptions):
            message: ComponentMessage = subscription.latest()
            if message is not None:
                vector = vector.with_state(i, message.state)
        self._vector = vector
        return vector

    def close(self) -> None:
        for subscription in self._subscriptions:
            subscription.close()
