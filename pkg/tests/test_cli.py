import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest import mock

import yaml

from trisub.census import census, write_census
from trisub.cli import (
    EXIT_FALSE,
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    main,
)
from trisub.exact import make_triangle
from trisub.job import Trace


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestPureCommands(unittest.TestCase):
    def test_verify(self):
        code, out, _ = run("verify", "--tuple", "30,10,40,70,10,20")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.strip(), "EXACT-TRUE")
        code, out, _ = run("verify", "--tuple", "30,10,40,70,11,19")
        self.assertEqual(code, EXIT_FALSE)
        self.assertEqual(out.strip(), "EXACT-FALSE")

    def test_verify_oracle(self):
        code, out, _ = run("verify", "--tuple", "30,1/2,59,121/2,1/2,59/2", "--oracle")
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(lines[0], "EXACT-TRUE")
        self.assertTrue(lines[1].startswith("difference="))

    def test_invalid_input(self):
        code, out, err = run("verify", "--tuple", "30,10,40,70,10,21")
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(out, "")
        self.assertTrue(err.startswith("error: "))
        self.assertEqual(len(err.splitlines()), 1)
        code, _, _ = run("verify", "--tuple", "30,10,40,70,10")
        self.assertEqual(code, EXIT_USAGE)
        code, _, _ = run("verify", "--tuple", "30,10,40,70,10,2.5")
        self.assertEqual(code, EXIT_USAGE)

    def test_cap(self):
        code, _, err = run("verify", "--tuple", "1/7,1/11,30,419/7,659/11,30")
        self.assertEqual(code, EXIT_RESOURCE)
        self.assertIn("cap", err)

    def test_internal_error(self):
        with mock.patch(
            "trisub.cli.ceva_holds_exact", side_effect=AssertionError("boom")
        ):
            code, _, err = run("verify", "--tuple", "30,10,40,70,10,20")
        self.assertEqual(code, EXIT_INTERNAL)
        self.assertEqual(err.strip(), "error: internal: boom")

    def test_trivial(self):
        code, out, _ = run("trivial", "--triangle", "80,60,40")
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(len(lines), 3)
        self.assertIn("40,30,20,40,30,20 trivial-i", lines)
        self.assertIn("30,50,10,50,10,30 trivial-iii", lines)

    def test_trivial_rational(self):
        code, out, _ = run("trivial", "--triangle", "20,80,80", "--mode", "rat")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("trivial-ii p in (0,80): 10,p,80-p,10,80-p,p", out.splitlines())

    def test_families(self):
        code, out, _ = run("families", "--family", "2a", "--t", "10")
        self.assertEqual((code, out.strip()), (EXIT_OK, "30,10,40,70,10,20"))
        code, out, _ = run("families", "--triangle", "100,20,60")
        self.assertIn("family-2a t=10 30,10,40,70,10,20", out.splitlines())
        code, out, _ = run("families", "--bounds")
        self.assertIn(
            "all sup=135 (not attained) inf=0 (not attained)", out.splitlines()
        )
        code, _, _ = run("families", "--family", "2a")
        self.assertEqual(code, EXIT_USAGE)
        code, _, _ = run("families", "--family", "2a", "--t", "30")
        self.assertEqual(code, EXIT_USAGE)

    def test_classify(self):
        code, out, _ = run("classify", "--tuple", "30,10,40,70,10,20")
        self.assertEqual((code, out.strip()), (EXIT_OK, "family-2a t=10"))
        code, out, _ = run("classify", "--tuple", "10,30,50,10,30,50")
        self.assertEqual(out.strip(), "trivial-i")
        code, _, _ = run("classify", "--tuple", "30,10,40,70,11,19")
        self.assertEqual(code, EXIT_USAGE)

    def test_render(self):
        with tempfile.TemporaryDirectory() as folder:
            filename = os.path.join(folder, "out.svg")
            code, _, _ = run(
                "render", "--tuple", "30,10,40,70,10,20", "--out", filename
            )
            self.assertEqual(code, EXIT_OK)
            self.assertTrue(os.path.exists(filename))

    def test_counts_from_folder(self):
        report = census(
            triangles=[
                make_triangle(1, 1, 178),
                make_triangle(1, 2, 177),
                make_triangle(20, 60, 100),
            ]
        )
        with tempfile.TemporaryDirectory() as folder:
            write_census(report, folder)
            code, out, _ = run("counts", "--from", folder)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.strip(), "triangles=3 universe=1 none=1 rescued=0")


class TestJobCommands(unittest.TestCase):
    def test_recurse_to_stdout(self):
        code, out, _ = run("recurse", "--triangle", "1,1,178")
        self.assertEqual(code, EXIT_OK)
        tree = json.loads(out)
        self.assertEqual(tree["triangle"], [1, 1, 178])
        self.assertEqual(tree["status"], "bisector-only")
        self.assertEqual(tree["children"], [])

    def test_recurse_defaults_finish_within_budget(self):
        code, out, _ = run("recurse")
        self.assertEqual(code, EXIT_OK)
        tree = json.loads(out)
        self.assertEqual(tree["triangle"], [20, 60, 100])
        self.assertEqual(tree["status"], "has-nontrivial")

    def test_recurse_bad_triangle(self):
        with tempfile.TemporaryDirectory() as folder:
            code, _, err = run(
                "recurse", "--triangle", "1,2", "--out", os.path.join(folder, "run")
            )
        self.assertEqual(code, EXIT_USAGE)
        self.assertTrue(err.startswith("error: "))

    def test_recurse_to_folder(self):
        with tempfile.TemporaryDirectory() as folder:
            run_folder = os.path.join(folder, "run")
            code, _, _ = run(
                "recurse",
                "--triangle",
                "20,60,100",
                "--max-depth",
                "1",
                "--out",
                run_folder,
            )
            self.assertEqual(code, EXIT_OK)
            with open(os.path.join(run_folder, "tree.json"), "r") as file:
                tree = json.load(file)
            self.assertEqual(tree["status"], "has-nontrivial")
            self.assertTrue(os.path.exists(os.path.join(run_folder, "config.yaml")))

    def test_theorem_check(self):
        with tempfile.TemporaryDirectory() as folder:
            run_folder = os.path.join(folder, "run")
            code, _, _ = run(
                "theorem-check",
                "--family",
                "2a",
                "--samples",
                "1/2",
                "--out",
                run_folder,
            )
            self.assertEqual(code, EXIT_OK)
            with open(os.path.join(run_folder, "theorem_check.json"), "r") as file:
                reports = json.load(file)
        self.assertEqual(len(reports), 1)
        self.assertEqual(reports[0]["family"], "2a")
        self.assertEqual(
            sorted(s["t"] for s in reports[0]["samples"]),
            ["1/2", "1/2", "1/4", "1/4", "179/6", "179/6", "59/2", "59/2"],
        )

    def test_theorem_check_logs_skipped_candidates(self):
        with tempfile.TemporaryDirectory() as folder:
            run_folder = os.path.join(folder, "run")
            code, _, _ = run(
                "theorem-check",
                "--family",
                "2d",
                "--samples",
                "2/5",
                "--out",
                run_folder,
            )
            self.assertEqual(code, EXIT_OK)
            with open(os.path.join(run_folder, "trisub.log"), "r") as file:
                log = file.read()
            with open(os.path.join(run_folder, "theorem_check.json"), "r") as file:
                reports = json.load(file)
            trace = Trace(os.path.join(run_folder, "trace.yaml"))
            completed = trace.filter({"event": "theorem_check_completed"})
        self.assertIn("family 2d t=2/5: skipped", log)
        self.assertIn("family 2d t=73/5: skipped", log)
        self.assertEqual(
            sorted({s["t"] for s in reports[0]["samples"]}), ["1/10", "224/15"]
        )
        self.assertEqual(completed[0]["skipped_samples"], 2)

    def test_start_and_dump(self):
        with tempfile.TemporaryDirectory() as folder:
            filename = os.path.join(folder, "oracle.yaml")
            with open(filename, "w") as file:
                yaml.dump(
                    {
                        "job": {"type": "oracle"},
                        "oracle": {
                            "integer_samples": 5,
                            "rational_samples": 2,
                            "max_denominator": 4,
                        },
                        "random_seed": {"numpy": 1},
                    },
                    file,
                )
            run_folder = os.path.join(folder, "run")
            code, _, _ = run("start", filename, "--folder", run_folder)
            self.assertEqual(code, EXIT_OK)

            code, out, _ = run(
                "dump",
                "trace",
                run_folder,
                "--event",
                "oracle_completed",
                "--keys",
                "samples",
                "disagreements",
            )
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(out.splitlines(), ["samples,disagreements", "14,[]"])

            code, out, _ = run("dump", "config", run_folder, "--include", "oracle")
            self.assertEqual(code, EXIT_OK)
            options = yaml.safe_load(out)
            self.assertEqual(options["oracle"]["integer_samples"], 5)
            self.assertNotIn("job", options)


if __name__ == "__main__":
    unittest.main()
