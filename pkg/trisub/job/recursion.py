import json
import os
import time
from typing import List

from trisub import Config
from trisub.catalog import FamilyId
from trisub.exact import format_rational, make_triangle, parse_angles
from trisub.job import Job
from trisub.recursion import (
    MarginalCriteria,
    TheoremCheckReport,
    default_samples,
    explore,
    sample_candidates,
    summarize,
    theorem_check,
)


def criteria_from_config(config: Config) -> MarginalCriteria:
    return MarginalCriteria(
        config.get_rational("marginal.small_threshold"),
        config.get_rational("marginal.large_threshold"),
    )


def _write_json(config: Config, filename: str, obj) -> None:
    if not config.folder:
        return
    path = os.path.join(config.folder, filename)
    with open(path, "w", encoding="utf-8") as file:
        json.dump(obj, file, indent=1)
        file.write("\n")
    config.log("Wrote {}".format(path))


class ExploreJob(Job):
    """Explore the recursive subdivisions of `recursion.triangle`."""

    def __init__(self, config: Config, parent_job: Job = None):
        super().__init__(config, "recursion", parent_job)
        self.triangle = make_triangle(*parse_angles(self.get_option("triangle"), 3))
        self.strategy = self.check_option("strategy", ["avoid_bisector", "exhaustive"])
        self.child_model = self.check_option("child_model", ["cevian", "full", "both"])
        self.max_depth = self.config.check_range("recursion.max_depth", 0, 1000)
        self.max_nodes = self.config.check_range("recursion.max_nodes", 1, 10 ** 9)
        self._run_created_hooks()

    def run(self):
        self.config.log(
            "Exploring {} ({}, {} children, depth {})...".format(
                self.triangle, self.strategy, self.child_model, self.max_depth
            )
        )
        start = time.time()
        root = explore(
            self.triangle,
            self.strategy,
            self.max_depth,
            self.max_nodes,
            self.child_model,
            complete=self.get_option("complete"),
        )
        runtime = time.time() - start
        summary = summarize(root)
        self.config.log(
            "Explored {} nodes; leaves: {} bisector-only, {} unknown, "
            "{} truncated".format(
                summary["nodes"],
                summary["leaves_bisector_only"],
                summary["leaves_unknown"],
                summary["truncated"],
            )
        )
        _write_json(self.config, "tree.json", root.to_dict())
        self.trace(
            event="explore_completed",
            triangle=str(self.triangle),
            strategy=self.strategy,
            child_model=self.child_model,
            max_depth=self.max_depth,
            runtime=runtime,
            **summary,
        )
        return root


class TheoremCheckJob(Job):
    """Check that sampled family triangles reach marginal triangles quickly."""

    def __init__(self, config: Config, parent_job: Job = None):
        super().__init__(config, "theorem_check", parent_job)
        family = self.get_option("family")
        self.families = [FamilyId.parse(family)] if family else list(FamilyId)
        self.criteria = criteria_from_config(config)
        self.samples = config.get_rationals("theorem_check.samples")
        self.small_angle = config.get_rational("theorem_check.small_angle")
        self.child_model = self.check_option("child_model", ["cevian", "full", "both"])
        self.max_level = self.config.check_range("theorem_check.max_level", 1, 10)
        self._run_created_hooks()

    def run(self) -> List[TheoremCheckReport]:
        reports = []
        num_skipped = 0
        for f in self.families:
            samples = default_samples(f, self.samples, self.small_angle)
            candidates = sample_candidates(f, self.samples)
            skipped = [t for t in candidates if t not in samples]
            for t in skipped:
                self.config.log(
                    "family {} t={}: skipped, no image triangle with an angle "
                    "<= {}".format(
                        f.value, format_rational(t), format_rational(self.small_angle)
                    )
                )
            num_skipped += len(skipped)
            report = theorem_check(
                f,
                samples,
                self.criteria,
                self.child_model,
                self.max_level,
                self.small_angle,
            )
            for sample in report.samples:
                self.config.log(
                    "family {} t={} {}: {} nontrivial subdivision(s), {}".format(
                        f.value,
                        format_rational(sample.t),
                        sample.triangle,
                        len(sample.chains),
                        "marginal at level {}".format(sample.level)
                        if sample.success
                        else "FAILED",
                    )
                )
            reports.append(report)
        success = all(r.success for r in reports)
        _write_json(self.config, "theorem_check.json", [r.to_dict() for r in reports])
        self.trace(
            event="theorem_check_completed",
            families=[f.value for f in self.families],
            samples=sum(len(r.samples) for r in reports),
            skipped_samples=num_skipped,
            success=success,
        )
        return reports
