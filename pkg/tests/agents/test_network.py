import unittest

import numpy as np

from ugvdefend.agents.network import (Adam, Approximator, approx_forward, approx_gradient_step, loss_and_gradients,
                                      one_hot)
from ugvdefend.core.errors import DomainError, NumericError


class TestApproximator(unittest.TestCase):
    def setUp(self) -> None:
        self.rng = np.random.default_rng(0)
        return super().setUp()

    def test_zero_weights(self):
        approx = Approximator.zeros(24, 7)
        self.assertTrue(np.all(approx_forward(approx, one_hot(np.arange(24), 24)) == 0.0))

    def test_output_shape(self):
        approx = Approximator.initialize(192, 10, self.rng)
        self.assertEqual(approx_forward(approx, one_hot([5], 192)[0]).shape, (10,))
        self.assertEqual(approx_forward(approx, np.eye(192)).shape, (192, 10))
        self.assertEqual(approx.all_q_values().shape, (192, 10))

    def test_forward_index_matches_forward(self):
        approx = Approximator.initialize(24, 7, self.rng)
        for state in range(24):
            np.testing.assert_allclose(approx.forward_index(state), approx_forward(approx, one_hot([state], 24)[0]))

    def test_deterministic(self):
        approx = Approximator.initialize(24, 7, self.rng)
        x = one_hot([3, 4], 24)
        self.assertTrue(np.array_equal(approx_forward(approx, x), approx_forward(approx, x)))

    def test_wrong_input_length(self):
        with self.assertRaises(DomainError):
            approx_forward(Approximator.zeros(24, 7), np.zeros(23))

    def test_non_finite_weights(self):
        approx = Approximator.zeros(24, 7)
        approx.weights[2][0, 0] = np.nan
        with self.assertRaises(NumericError):
            approx_forward(approx, np.eye(24))

    def test_copy_is_independent(self):
        approx = Approximator.initialize(24, 7, self.rng)
        clone = approx.copy()
        clone.weights[0][0, 0] += 1.0
        self.assertNotEqual(clone.weights[0][0, 0], approx.weights[0][0, 0])


class TestGradients(unittest.TestCase):
    def test_finite_differences(self):
        rng = np.random.default_rng(1)
        approx = Approximator.initialize(24, 7, rng, hidden=(16, 16))
        for layer in approx.weights[1::2]:
            layer += rng.normal(0.0, 0.1, size=layer.shape)  # non-zero biases

        inputs = one_hot(rng.integers(0, 24, size=16), 24)
        actions = rng.integers(0, 7, size=16)
        targets = rng.normal(0.0, 5.0, size=16)
        _, gradients = loss_and_gradients(approx, inputs, actions, targets)

        h = 1e-4
        for _ in range(100):
            layer = int(rng.integers(len(approx.weights)))
            index = tuple(int(rng.integers(n)) for n in approx.weights[layer].shape)
            original = approx.weights[layer][index]

            approx.weights[layer][index] = original + h
            plus, _ = loss_and_gradients(approx, inputs, actions, targets)
            approx.weights[layer][index] = original - h
            minus, _ = loss_and_gradients(approx, inputs, actions, targets)
            approx.weights[layer][index] = original

            numeric = (plus - minus) / (2 * h)
            analytic = gradients[layer][index]
            relative = abs(analytic - numeric) / max(abs(analytic) + abs(numeric), 1e-8)
            self.assertLessEqual(relative, 1e-3, f"layer {layer} index {index}: {analytic} vs {numeric}")

    def test_batch_size_mismatch(self):
        approx = Approximator.zeros(4, 2)
        with self.assertRaises(DomainError):
            loss_and_gradients(approx, np.eye(4), np.zeros(3, dtype=int), np.zeros(4))

    def test_gradient_step_reduces_loss(self):
        rng = np.random.default_rng(2)
        for optimizer in (None, Adam()):
            approx = Approximator.initialize(8, 3, rng, hidden=(16, 16))
            inputs = one_hot(np.arange(8), 8)
            actions = rng.integers(0, 3, size=8)
            targets = rng.normal(0.0, 1.0, size=8)

            _, first = approx_gradient_step(approx, inputs, actions, targets, 1e-2, optimizer)
            for _ in range(200):
                _, last = approx_gradient_step(approx, inputs, actions, targets, 1e-2, optimizer)
            self.assertLess(last, first)

    def test_zero_learning_rate(self):
        approx = Approximator.initialize(6, 2, np.random.default_rng(5), hidden=(4, 4))
        before = approx.copy()
        approx_gradient_step(approx, np.eye(6), np.zeros(6, dtype=int), np.ones(6), 0.0)
        for expected, actual in zip(before.weights, approx.weights):
            np.testing.assert_array_equal(expected, actual)

    def test_non_finite_loss(self):
        approx = Approximator.zeros(4, 2)
        with self.assertRaises(NumericError):
            approx_gradient_step(approx, np.eye(4), np.zeros(4, dtype=int), np.array([np.inf, 0.0, 0.0, 0.0]), 0.1)


if __name__ == '__main__':
    unittest.main()
