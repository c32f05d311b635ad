import os
import tempfile
import unittest
from fractions import Fraction

from trisub import Config, Configurable


class TestConfig(unittest.TestCase):
    def setUp(self):
        self.config = Config()

    def test_defaults(self):
        self.assertEqual(self.config.get("job.type"), "census")
        self.assertEqual(self.config.get("job.threads"), 1)
        self.assertEqual(self.config.get("cyclotomic.cap"), 7200)
        self.assertEqual(self.config.get_rational("marginal.large_threshold"), 135)
        self.assertEqual(
            self.config.get_rationals("theorem_check.samples"),
            [Fraction(1, 3), Fraction(2, 5), Fraction(1, 2)],
        )
        self.assertEqual(
            self.config.get_rational("theorem_check.small_angle"), Fraction(3, 2)
        )

    def test_missing_key(self):
        with self.assertRaises(KeyError):
            self.config.get("job.nonexistent")
        with self.assertRaises(KeyError):
            self.config.set("job.nonexistent", 1)
        with self.assertRaises(KeyError):
            self.config.set("nonexistent.key", 1)
        self.config.set("nonexistent.key", "2", create=True)
        self.assertEqual(self.config.get("nonexistent.key"), 2)

    def test_set_converts_strings(self):
        self.assertEqual(self.config.set("job.threads", "4"), 4)
        self.assertEqual(self.config.set("prefilter.tolerance", "1e-10"), 1e-10)
        self.assertIs(self.config.set("recursion.complete", "yes"), True)
        self.assertEqual(
            self.config.set("theorem_check.samples", "1/3, 1/2"), ["1/3", "1/2"]
        )
        self.assertEqual(self.config.set("prefilter.guard_band", 1), 1.0)

    def test_set_checks_types(self):
        with self.assertRaises(ValueError):
            self.config.set("job.threads", "many")
        with self.assertRaises(ValueError):
            self.config.set("job.threads", 1.5)
        with self.assertRaises(ValueError):
            self.config.set("recursion.complete", "perhaps")

    def test_overwrite(self):
        self.config.set("job.threads", 2, overwrite=Config.Overwrite.No)
        self.assertEqual(self.config.get("job.threads"), 1)
        with self.assertRaises(ValueError):
            self.config.set("job.threads", 2, overwrite=Config.Overwrite.Error)

    def test_rational_option(self):
        self.config.set("marginal.small_threshold", "1/2")
        self.assertEqual(
            self.config.get_rational("marginal.small_threshold"), Fraction(1, 2)
        )
        self.config.set("marginal.small_threshold", "half")
        with self.assertRaises(ValueError):
            self.config.get_rational("marginal.small_threshold")

    def test_checks(self):
        self.assertEqual(self.config.check("job.type", ["census", "oracle"]), "census")
        with self.assertRaises(ValueError):
            self.config.check("job.type", ["oracle"])
        self.config.set("job.threads", 0)
        with self.assertRaises(ValueError):
            self.config.check_range("job.threads", 1, 4096)

    def test_flatten(self):
        self.assertEqual(
            Config.flatten({"a": {"b": 1, "c": {"d": 2}}, "e": 3}),
            {"a.b": 1, "a.c.d": 2, "e": 3},
        )
        flat = Config.flatten(self.config.options)
        self.assertIn("census.files.summary", flat)
        self.assertEqual(flat["oracle.digits"], 50)

    def test_save_and_load(self):
        with tempfile.TemporaryDirectory() as folder:
            self.config.set("job.type", "oracle")
            self.config.set("oracle.integer_samples", 10)
            filename = os.path.join(folder, "config.yaml")
            self.config.save(filename)
            loaded = Config()
            loaded.load(filename)
        self.assertEqual(loaded.get("job.type"), "oracle")
        self.assertEqual(loaded.get("oracle.integer_samples"), 10)

    def test_folder_files(self):
        with tempfile.TemporaryDirectory() as folder:
            config = Config(os.path.join(folder, "run"))
            config.echo = False
            self.assertTrue(config.init_folder())
            self.assertFalse(config.init_folder())
            config.log("hello")
            config.trace(event="test", value=3)
            with open(config.logfile(), "r") as file:
                self.assertIn("hello", file.read())
            with open(config.tracefile(), "r") as file:
                self.assertIn("event: test", file.read())
            self.assertTrue(os.path.exists(os.path.join(folder, "run", "config.yaml")))


class TestConfigurable(unittest.TestCase):
    def test_options(self):
        c = Configurable(Config(), "oracle")
        self.assertEqual(c.get_option("digits"), 50)
        with self.assertRaises(KeyError):
            c.get_option("nonexistent")
        self.assertEqual(c.check_option("digits", [50]), 50)


if __name__ == "__main__":
    unittest.main()
