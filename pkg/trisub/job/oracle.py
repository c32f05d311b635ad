import time

import numpy as np

from trisub import Config
from trisub.exact import as_json
from trisub.job import Job
from trisub.oracle import OracleReport, oracle_check


class OracleJob(Job):
    """Compare the exact kernel with a high-precision evaluation on random tuples."""

    def __init__(self, config: Config, parent_job: Job = None):
        super().__init__(config, "oracle", parent_job)
        seed = self.config.get("random_seed.numpy")
        self.rng = np.random.default_rng(seed if seed > -1 else None)
        self._run_created_hooks()

    def run(self) -> OracleReport:
        start = time.time()
        report = oracle_check(
            self.get_option("integer_samples"),
            self.get_option("rational_samples"),
            self.rng,
            max_denominator=self.get_option("max_denominator"),
            digits=self.get_option("digits"),
            threshold=self.get_option("zero_threshold"),
            cap=self.config.get("cyclotomic.cap"),
        )
        runtime = time.time() - start
        self.config.log(
            "Checked {} tuples ({} solutions): {} disagreement(s)".format(
                report.samples, report.positives, len(report.disagreements)
            )
        )
        for t in report.disagreements:
            self.config.log("Oracle disagrees on {}".format(t))
        self.trace(
            event="oracle_completed",
            samples=report.samples,
            positives=report.positives,
            disagreements=[as_json(t) for t in report.disagreements],
            runtime=runtime,
        )
        return report
