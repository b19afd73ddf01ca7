import json
import os
import tempfile
import unittest

import numpy as np

from ugvdefend.agents.network import Approximator
from ugvdefend.agents.qlearning import QTable
from ugvdefend.core.components import Experiment
from ugvdefend.core.errors import ConfigurationError, ModelFormatError
from ugvdefend.harness.model_checks import (
    FORMAT_CHECKS, create_experiment_check, get_model_check_name, name_model_check, run_model_checks,
)
from ugvdefend.harness.model_file import ModelFile, dumps_model, load_model, save_model


def q_model(experiment=Experiment.EXP1, seed=0):
    rng = np.random.default_rng(seed)
    shape = (24, 7) if experiment is Experiment.EXP1 else (192, 10)
    return ModelFile(experiment, "qlearning", QTable(rng.normal(size=shape) / 3.0), training={"seed": seed})


class TestModelChecks(unittest.TestCase):
    def test_valid_model_passes(self):
        self.assertEqual(run_model_checks(q_model().to_dict(), FORMAT_CHECKS), "")

    def test_error_string_names_failing_check(self):
        raw = q_model().to_dict()
        raw["format_version"] = 99
        error = run_model_checks(raw, FORMAT_CHECKS, "model file 'm.json'")
        self.assertIn("check 1", error)
        self.assertIn("\"format-version\"", error)
        self.assertIn("model file 'm.json'", error)

    def test_format_version_must_be_an_integer(self):
        for version in (True, 1.0, "1"):
            raw = q_model().to_dict()
            raw["format_version"] = version
            self.assertIn("\"format-version\"", run_model_checks(raw, FORMAT_CHECKS), repr(version))

    def test_missing_keys(self):
        error = run_model_checks({"experiment": "Exp1"}, FORMAT_CHECKS)
        self.assertIn("required-keys", error)
        self.assertIn("payload", error)

    def test_experiment_check(self):
        raw = q_model(Experiment.EXP2).to_dict()
        self.assertIn("matching-experiment", run_model_checks(raw, [create_experiment_check(Experiment.EXP1)]))

    def test_plain_bool_check_and_naming(self):
        def always_fails(raw):
            return False

        self.assertEqual(get_model_check_name(always_fails), "always_fails")
        named = name_model_check("never")(always_fails)
        self.assertEqual(get_model_check_name(named), "never")
        self.assertEqual(run_model_checks({}, [named]), "The model is invalid due to check 0 with name \"never\"")


class TestModelFile(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.tmp.name, "model.json")

    def tearDown(self):
        self.tmp.cleanup()

    def test_q_table_round_trip_is_exact(self):
        original = q_model()
        save_model(original, self.path)
        loaded = load_model(self.path, expected_experiment=Experiment.EXP1)
        np.testing.assert_array_equal(loaded.model.values, original.model.values)
        self.assertEqual(loaded.training, {"seed": 0})
        np.testing.assert_array_equal(loaded.policy().actions, original.policy().actions)
        self.assertFalse(os.path.exists(self.path + ".tmp"))

    def test_dqn_round_trip(self):
        approx = Approximator.initialize(192, 10, np.random.default_rng(1), hidden=(8, 8))
        save_model(ModelFile(Experiment.EXP2, "dqn", approx), self.path)
        loaded = load_model(self.path)
        self.assertEqual(loaded.model.layer_sizes, (192, 8, 8, 10))
        for expected, actual in zip(approx.weights, loaded.model.weights):
            np.testing.assert_array_equal(expected, actual)

    def test_dumps_is_stable(self):
        self.assertEqual(dumps_model(q_model()), dumps_model(q_model()))

    def test_truncated_file(self):
        text = dumps_model(q_model())
        with open(self.path, "w", encoding="utf-8") as file:
            file.write(text[: len(text) // 2])
        with self.assertRaises(ModelFormatError):
            load_model(self.path)

    def test_wrong_experiment(self):
        save_model(q_model(Experiment.EXP2), self.path)
        with self.assertRaises(ConfigurationError) as context:
            load_model(self.path, expected_experiment=Experiment.EXP1)
        self.assertNotIsInstance(context.exception, ModelFormatError)

    def test_unsupported_version(self):
        raw = q_model().to_dict()
        raw["format_version"] = 2
        with open(self.path, "w", encoding="utf-8") as file:
            json.dump(raw, file)
        with self.assertRaises(ModelFormatError):
            load_model(self.path)

    def test_wrong_shape(self):
        raw = q_model().to_dict()
        raw["payload"]["shape"] = [24, 6]
        with self.assertRaises(ModelFormatError):
            ModelFile.from_dict(raw)

    def test_non_finite_values(self):
        raw = q_model().to_dict()
        raw["payload"]["values"][3] = float("nan")
        with self.assertRaises(ModelFormatError):
            ModelFile.from_dict(raw)

    def test_missing_file(self):
        with self.assertRaises(ConfigurationError):
            load_model(os.path.join(self.tmp.name, "absent.json"))


if __name__ == '__main__':
    unittest.main()
