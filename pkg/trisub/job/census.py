import time

from trisub import Config
from trisub.census import (
    ScanSettings,
    census,
    derived_sporadics,
    diff_headline,
    format_headline,
    sporadic_bound_violations,
    theorem1_check,
    write_census,
)
from trisub.exact import as_json
from trisub.job import Job


class CensusJob(Job):
    """Enumerate and classify the subdivisions of all Z-degree triangles.

    Triangles are scanned in a pool of `job.threads` worker processes (synchronously
    when 1). Output files do not depend on the number of workers.

    """

    def __init__(self, config: Config, parent_job: Job = None):
        super().__init__(config, "census", parent_job)
        self.threads = self.config.check_range("job.threads", 1, 4096)
        self.chunk_size = self.config.check_range("census.chunk_size", 1, 10000)
        self.trace_level = self.check_option("trace_level", ["summary", "triangle"])
        self.settings = ScanSettings(
            tolerance=self.config.get("prefilter.tolerance"),
            guard_band=self.config.get("prefilter.guard_band"),
            cap=self.config.get("cyclotomic.cap"),
        )
        if not 0 < self.settings.tolerance <= self.settings.guard_band:
            raise ValueError(
                "need 0 < prefilter.tolerance <= prefilter.guard_band, "
                "got {} and {}".format(
                    self.settings.tolerance, self.settings.guard_band
                )
            )
        self.files = self.get_option("files")
        self._run_created_hooks()

    def _trace_unit(self, record):
        self.trace(
            event="census_unit",
            triangle=as_json(record.triangle),
            labeled=len(record.solutions),
            canonical=len(record.canonical),
            trivial=record.count("trivial"),
            family=record.count("family"),
            sporadic=record.count("sporadic"),
        )

    def run(self):
        self.config.log(
            "Scanning Z-degree triangles using {} worker process(es)...".format(
                self.threads
            )
        )
        start = time.time()
        report = census(
            self.threads,
            self.settings,
            chunk_size=self.chunk_size,
            progress=self._trace_unit if self.trace_level == "triangle" else None,
        )
        runtime = time.time() - start

        counts = report.headline()
        self.config.log(format_headline(counts))
        for line in diff_headline(report):
            self.config.log("Headline differs from published value: " + line)

        sporadics = derived_sporadics(report)
        self.config.log(
            "Found {} sporadic solutions up to relabeling".format(len(sporadics))
        )
        for t, reason in sporadic_bound_violations(sporadics):
            self.config.log("Sporadic solution {} violates bound: {}".format(t, reason))
        discrepancies = theorem1_check(report)
        for d in discrepancies:
            self.config.log("Discrepancy {} at {}".format(d.kind, d.triangle))

        if self.config.folder:
            paths = write_census(report, self.config.folder, self.files)
            self.config.log("Wrote {}".format(", ".join(sorted(paths.values()))))

        self.trace(
            event="census_completed",
            runtime=runtime,
            threads=self.threads,
            candidates=report.stats.candidates,
            exact_checks=report.stats.exact_checks,
            guard_band_checks=report.stats.guard_band_checks,
            sporadics=len(sporadics),
            discrepancies=len(discrepancies),
            **counts,
        )
        self.config.log("Finished census in {:.1f}s".format(runtime))
        return report
