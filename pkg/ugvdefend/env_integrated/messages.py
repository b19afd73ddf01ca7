# General imports
from dataclasses import dataclass
from enum import Enum

# Relative imports
from ..core.components import ComponentState

CONTROL_TOPIC = "/ugv/control"
COMPONENT_TOPIC_PREFIX = "/ugv/components/"


def component_topic(slug: str) -> str:
    return COMPONENT_TOPIC_PREFIX + slug


class ControlCommand(Enum):
    STOP = "Stop"
    FOLLOW_TRAJECTORY = "FollowTrajectory"


@dataclass(frozen=True)
class ControlMessage:
    """
    Stop holds the vehicle until a new control message arrives.
    """
    command: ControlCommand
    timestamp: float


@dataclass(frozen=True)
class ComponentMessage:
    component: str
    state: ComponentState
    timestamp: float
