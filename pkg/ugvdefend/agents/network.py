"""
Small fully connected Q-value approximator written against numpy: one-hot state input, two ReLU hidden
layers and a linear output with one value per action. Gradients are derived by hand.
"""
# General imports
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

# Relative imports
from ..core.errors import DomainError, NumericError


def relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


def relu_derivative(x: np.ndarray) -> np.ndarray:
    return (x > 0.0).astype(x.dtype)


@dataclass
class Approximator:
    """
    weights holds (W1, b1, W2, b2, W3, b3); W has shape (fan_in, fan_out) and inputs are row vectors.
    """
    layer_sizes: Tuple[int, ...]
    weights: List[np.ndarray]

    @classmethod
    def initialize(cls, num_states: int, num_actions: int, rng: np.random.Generator, hidden: Sequence[int] = (64, 64)) -> "Approximator":
        sizes = (num_states, *hidden, num_actions)
        weights: List[np.ndarray] = []
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
            limit = np.sqrt(6.0 / fan_in)  # He-uniform for ReLU layers
            weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
            weights.append(np.zeros(fan_out))
        return cls(tuple(sizes), weights)

    @classmethod
    def zeros(cls, num_states: int, num_actions: int, hidden: Sequence[int] = (64, 64)) -> "Approximator":
        sizes = (num_states, *hidden, num_actions)
        weights: List[np.ndarray] = []
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
            weights.append(np.zeros((fan_in, fan_out)))
            weights.append(np.zeros(fan_out))
        return cls(tuple(sizes), weights)

    @property
    def num_states(self) -> int:
        return self.layer_sizes[0]

    @property
    def num_actions(self) -> int:
        return self.layer_sizes[-1]

    def copy(self) -> "Approximator":
        return Approximator(self.layer_sizes, [w.copy() for w in self.weights])

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(w)) for w in self.weights)

    def forward_index(self, state_index: int) -> np.ndarray:
        """
        Q-values of one state. Equivalent to approx_forward on the one-hot vector of state_index.
        """
        W1, b1, W2, b2, W3, b3 = self.weights
        a1 = relu(W1[state_index] + b1)
        a2 = relu(a1 @ W2 + b2)
        return a2 @ W3 + b3

    def all_q_values(self) -> np.ndarray:
        return approx_forward(self, np.eye(self.num_states))


def one_hot(indices: np.ndarray, size: int) -> np.ndarray:
    indices = np.asarray(indices, dtype=np.int64)
    encoded = np.zeros((indices.shape[0], size))
    encoded[np.arange(indices.shape[0]), indices] = 1.0
    return encoded


def _forward_with_memory(approx: Approximator, x: np.ndarray):
    W1, b1, W2, b2, W3, b3 = approx.weights
    z1 = x @ W1 + b1
    a1 = relu(z1)
    z2 = a1 @ W2 + b2
    a2 = relu(z2)
    y = a2 @ W3 + b3
    return (x, z1, a1, z2, a2), y


def approx_forward(approx: Approximator, state_one_hot: np.ndarray) -> np.ndarray:
    """
    Q-values for one input vector (shape (num_states,)) or a batch (shape (batch, num_states)).
    """
    x = np.asarray(state_one_hot, dtype=np.float64)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.shape[1] != approx.num_states:
        raise DomainError(f"Expected inputs of length {approx.num_states} but got {x.shape[1]}")
    if not approx.is_finite():
        raise NumericError("The approximator holds non-finite weights")

    _, y = _forward_with_memory(approx, x)
    return y[0] if single else y


def loss_and_gradients(approx: Approximator, inputs: np.ndarray, actions: np.ndarray, targets: np.ndarray) -> Tuple[float, List[np.ndarray]]:
    """
    Mean squared error between Q(input, action) and target over the batch, and its gradient with respect
    to every weight array (same order as approx.weights).
    """
    x = np.asarray(inputs, dtype=np.float64)
    actions = np.asarray(actions, dtype=np.int64)
    targets = np.asarray(targets, dtype=np.float64)
    if not (x.shape[0] == actions.shape[0] == targets.shape[0]):
        raise DomainError("inputs, actions and targets must have the same batch size")

    batch = x.shape[0]
    rows = np.arange(batch)
    (x, z1, a1, z2, a2), y = _forward_with_memory(approx, x)
    _, _, W2, _, W3, _ = approx.weights

    diff = y[rows, actions] - targets
    loss = float(np.mean(diff ** 2))

    dy = np.zeros_like(y)
    dy[rows, actions] = 2.0 * diff / batch

    dW3 = a2.T @ dy
    db3 = dy.sum(axis=0)
    dz2 = (dy @ W3.T) * relu_derivative(z2)
    dW2 = a1.T @ dz2
    db2 = dz2.sum(axis=0)
    dz1 = (dz2 @ W2.T) * relu_derivative(z1)
    dW1 = x.T @ dz1
    db1 = dz1.sum(axis=0)

    return loss, [dW1, db1, dW2, db2, dW3, db3]


class SGD:
    def step(self, weights: List[np.ndarray], gradients: List[np.ndarray], learning_rate: float) -> None:
        for w, g in zip(weights, gradients):
            w -= learning_rate * g


class Adam:
    def __init__(self, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8) -> None:
        self._beta1 = beta1
        self._beta2 = beta2
        self._eps = eps
        self._m: Optional[List[np.ndarray]] = None
        self._v: Optional[List[np.ndarray]] = None
        self._t = 0

    def step(self, weights: List[np.ndarray], gradients: List[np.ndarray], learning_rate: float) -> None:
        if self._m is None:
            self._m = [np.zeros_like(w) for w in weights]
            self._v = [np.zeros_like(w) for w in weights]
        self._t += 1
        correction1 = 1.0 - self._beta1 ** self._t
        correction2 = 1.0 - self._beta2 ** self._t

        for w, g, m, v in zip(weights, gradients, self._m, self._v):
            m *= self._beta1
            m += (1.0 - self._beta1) * g
            v *= self._beta2
            v += (1.0 - self._beta2) * g * g
            w -= learning_rate * (m / correction1) / (np.sqrt(v / correction2) + self._eps)


def approx_gradient_step(approx: Approximator,
                         inputs: np.ndarray,
                         actions: np.ndarray,
                         targets: np.ndarray,
                         learning_rate: float,
                         optimizer: Optional[object] = None,
                         ) -> Tuple[Approximator, float]:
    """
    One optimisation step on the mean squared TD error; plain SGD unless an optimizer is given.
    Updates approx in place and returns it together with the loss before the step.
    """
    loss, gradients = loss_and_gradients(approx, inputs, actions, targets)
    if not np.isfinite(loss) or not all(np.all(np.isfinite(g)) for g in gradients):
        raise NumericError(f"Non-finite loss or gradient (loss={loss})")

    (optimizer or SGD()).step(approx.weights, gradients, learning_rate)
    return approx, loss
