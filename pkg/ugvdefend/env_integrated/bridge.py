# General imports
from typing import Optional

# Relative imports
from .components import ComponentBoard
from .messages import ControlMessage
from ..core.actions import Action, apply_action


def bridge_action(action: Action, board: ComponentBoard, timestamp: float = 0.0) -> Optional[ControlMessage]:
    """
    Applies the agent's action to the component model and translates the result into a control message:
    FollowTrajectory if all components are nominal afterwards, Stop otherwise. Because the force brake is
    nominally OFF, turning it on stops the vehicle. Do nothing publishes nothing.
    """
    board.vector = apply_action(board.vector, action)
    if action.is_do_nothing:
        return None

    board.publish_state(action.component_index, timestamp)
    return board.publish_control(timestamp)
