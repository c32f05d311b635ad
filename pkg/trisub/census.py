import concurrent.futures
import csv
import functools
import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

from trisub.catalog import (
    CLASS_LABELS,
    SPORADIC_MAX_ANGLE,
    SPORADIC_MIN_ANGLE,
    classify,
    family_matches,
    trivial_solutions,
)
from trisub.cyclotomic import (
    DEFAULT_CAP,
    DEFAULT_GUARD_BAND,
    DEFAULT_TOLERANCE,
    ceva_holds_exact,
    prefilter_grid,
)
from trisub.exact import (
    CevaTuple,
    Triangle,
    all_even,
    as_json,
    canonical_in_stabilizer,
    canonical_subdivision,
    from_json,
    is_acute,
    is_isosceles,
    is_z_degree,
    make_triangle,
    make_tuple,
    pairing_sums,
)

#: Headline numbers published for the Z-degree census.
PUBLISHED_COUNTS = {"triangles": 2700, "universe": 1496, "none": 1377, "rescued": 119}

CSV_HEADER = [
    "a",
    "b",
    "c",
    "n_trivial",
    "n_family",
    "n_sporadic",
    "n_total_labeled",
    "n_total_canonical",
]


@dataclass(frozen=True)
class ScanSettings:
    tolerance: float = DEFAULT_TOLERANCE
    guard_band: float = DEFAULT_GUARD_BAND
    cap: int = DEFAULT_CAP


@dataclass
class ScanStats:
    candidates: int = 0
    exact_checks: int = 0
    guard_band_checks: int = 0

    def add(self, other: "ScanStats"):
        self.candidates += other.candidates
        self.exact_checks += other.exact_checks
        self.guard_band_checks += other.guard_band_checks


@dataclass
class TriangleRecord:
    """All Z-degree subdivisions of one Z-degree triangle (in sorted vertex order)."""

    triangle: Triangle
    #: labeled solutions with class labels, lexicographic
    solutions: List[Tuple[CevaTuple, str]] = field(default_factory=list)
    #: one representative per orbit under the triangle's symmetries
    canonical: List[Tuple[CevaTuple, str]] = field(default_factory=list)
    stats: ScanStats = field(default_factory=ScanStats)

    def labeled_counts(self) -> Dict[str, int]:
        return _count(self.solutions)

    def canonical_counts(self) -> Dict[str, int]:
        return _count(self.canonical)

    def has_subdivision(self) -> bool:
        return len(self.solutions) > 0

    def count(self, kind: str, canonical: bool = False) -> int:
        """Number of solutions of kind "trivial", "family" or "sporadic"."""
        counts = self.canonical_counts() if canonical else self.labeled_counts()
        return sum(n for label, n in counts.items() if label.startswith(kind))


def _count(solutions: List[Tuple[CevaTuple, str]]) -> Dict[str, int]:
    counts = {label: 0 for label in CLASS_LABELS}
    for _, label in solutions:
        counts[label] += 1
    return counts


@dataclass
class Discrepancy:
    triangle: Triangle
    kind: str
    evidence: Dict[str, Any]


@dataclass
class CensusReport:
    records: List[TriangleRecord]
    stats: ScanStats = field(default_factory=ScanStats)

    def record(self, tri: Triangle) -> TriangleRecord:
        for record in self.records:
            if record.triangle == tri:
                return record
        raise KeyError("triangle {} not part of the census".format(tri))

    @property
    def total_triangles(self) -> int:
        return len(self.records)

    def universe(self) -> List[TriangleRecord]:
        return [r for r in self.records if in_universe(r.triangle)]

    def no_subdivision(self) -> List[TriangleRecord]:
        "Universe members without any Z-degree subdivision."
        return [r for r in self.universe() if not r.has_subdivision()]

    def rescued(self) -> List[TriangleRecord]:
        "Universe members that nevertheless admit a Z-degree subdivision."
        return [r for r in self.universe() if r.has_subdivision()]

    def headline(self) -> Dict[str, int]:
        return {
            "triangles": self.total_triangles,
            "universe": len(self.universe()),
            "none": len(self.no_subdivision()),
            "rescued": len(self.rescued()),
        }


# -- ENUMERATION -----------------------------------------------------------------------


def enumerate_triangles() -> List[Triangle]:
    """All Z-degree triangles up to similarity, in lexicographic order."""
    result = []
    for a in range(1, 61):
        for b in range(a, (180 - a) // 2 + 1):
            c = 180 - a - b
            result.append(make_triangle(a, b, c))
    return result


def in_universe(tri: Triangle) -> bool:
    """Non-isosceles, non-acute, with at least one odd angle."""
    return not is_isosceles(tri) and not is_acute(tri) and not all_even(tri)


def _integer_angles(tri: Triangle) -> Tuple[int, int, int]:
    if not is_z_degree(tri):
        raise ValueError("Z-degree triangle required, got {}".format(tri))
    return tuple(int(x) for x in tri.angles)  # type: ignore


def _scan(
    tri: Triangle, settings: ScanSettings
) -> Tuple[List[CevaTuple], ScanStats]:
    a, b, c = _integer_angles(tri)
    stats = ScanStats(candidates=max(a - 1, 0) * max(b - 1, 0) * max(c - 1, 0))
    result = []
    us, vs, ws, diffs = prefilter_grid(a, b, c, settings.guard_band)
    for u, v, w, diff in zip(us.tolist(), vs.tolist(), ws.tolist(), diffs.tolist()):
        t = make_tuple(u, v, w, a - u, b - v, c - w)
        exact = ceva_holds_exact(t, settings.cap)
        if diff > settings.tolerance:
            stats.guard_band_checks += 1
            if exact:
                raise AssertionError(
                    "prefilter would reject the exact solution {} "
                    "(difference {})".format(t, diff)
                )
            continue
        stats.exact_checks += 1
        if exact:
            result.append(t)
    return result, stats


def subdivisions_of(
    tri: Triangle, settings: ScanSettings = ScanSettings()
) -> List[CevaTuple]:
    """All labeled Z-degree subdivisions of a Z-degree triangle, lexicographic."""
    return _scan(tri, settings)[0]


def scan_triangle(
    tri: Triangle, settings: ScanSettings = ScanSettings()
) -> TriangleRecord:
    """Enumerate and classify all Z-degree subdivisions of `tri`."""
    subdivisions, stats = _scan(tri, settings)
    matches = family_matches(tri)
    record = TriangleRecord(triangle=tri, stats=stats)
    representatives = set()
    for t in subdivisions:
        label = classify(t, matches=matches, verify=False).label
        record.solutions.append((t, label))
        representatives.add(canonical_in_stabilizer(t))
    for t in sorted(representatives):
        record.canonical.append((t, classify(t, matches=matches, verify=False).label))
    return record


@functools.lru_cache(maxsize=4096)
def cached_record(a: int, b: int, c: int) -> TriangleRecord:
    """Census record of a single triangle with default settings (memoized)."""
    return scan_triangle(make_triangle(a, b, c))


def _census_unit(args: Tuple[int, int, int, ScanSettings]) -> TriangleRecord:
    a, b, c, settings = args
    return scan_triangle(make_triangle(a, b, c), settings)


def census(
    threads: int = 1,
    settings: ScanSettings = ScanSettings(),
    chunk_size: int = 16,
    triangles: Optional[List[Triangle]] = None,
    progress: Optional[Callable[[TriangleRecord], None]] = None,
) -> CensusReport:
    """Scan every Z-degree triangle; the result does not depend on `threads`.

    With more than one thread, triangles are distributed over a process pool and
    collected in submission order.

    """
    if triangles is None:
        triangles = enumerate_triangles()
    units = [tuple(int(x) for x in tri.angles) + (settings,) for tri in triangles]
    records: List[TriangleRecord] = []
    if threads <= 1:
        results = map(_census_unit, units)
        for record in results:
            records.append(record)
            if progress:
                progress(record)
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
            for record in pool.map(_census_unit, units, chunksize=chunk_size):
                records.append(record)
                if progress:
                    progress(record)
    report = CensusReport(records=records)
    for record in records:
        report.stats.add(record.stats)
    return report


# -- ANALYSIS --------------------------------------------------------------------------


def derived_sporadics(report: CensusReport) -> List[CevaTuple]:
    """All sporadic Z-degree solutions up to relabeling, sorted."""
    result = set()
    for record in report.records:
        for t, label in record.solutions:
            if label == "sporadic":
                result.add(canonical_subdivision(t))
    return sorted(result)


def sporadic_bound_violations(
    sporadics: List[CevaTuple],
) -> List[Tuple[CevaTuple, str]]:
    """Sporadic solutions whose triangle leaves the known sporadic angle range.

    At integer granularity the smallest angle must be at least 9 (the ceiling of
    180/21).

    """
    smallest_allowed = math.ceil(SPORADIC_MIN_ANGLE)
    result = []
    for t in sporadics:
        sums = pairing_sums(t)
        if max(sums) > SPORADIC_MAX_ANGLE:
            result.append((t, "largest angle {} > 150".format(max(sums))))
        if min(sums) < Fraction(smallest_allowed):
            result.append(
                (t, "smallest angle {} < {}".format(min(sums), smallest_allowed))
            )
    return result


def theorem1_check(report: CensusReport) -> List[Discrepancy]:
    """Compare census results with the trivial-solution criterion.

    The criterion predicts a Z-degree subdivision iff the triangle is isosceles, acute
    or has only even angles. Triangles outside the prediction that are rescued by
    family or sporadic solutions are not discrepancies; a trivial solution outside the
    prediction, or a predicted triangle without any solution, is.

    """
    result = []
    for record in report.records:
        tri = record.triangle
        predicates = {
            "isosceles": is_isosceles(tri),
            "acute": is_acute(tri),
            "all_even": all_even(tri),
        }
        predicted = any(predicates.values())
        n_trivial = record.count("trivial")
        if predicted and not record.has_subdivision():
            evidence = dict(predicates)
            evidence["trivial_solutions"] = len(trivial_solutions(tri).tuples)
            evidence["family_matches"] = len(family_matches(tri))
            evidence["subdivisions"] = 0
            result.append(Discrepancy(tri, "predicted-but-none", evidence))
        elif not predicted and n_trivial > 0:
            evidence = dict(predicates)
            evidence["trivial_solutions"] = n_trivial
            result.append(Discrepancy(tri, "unpredicted-trivial", evidence))
    return result


def diff_headline(
    report: CensusReport, expected: Dict[str, int] = PUBLISHED_COUNTS
) -> List[str]:
    """Human-readable list of headline numbers that differ from `expected`."""
    found = report.headline()
    return [
        "{}: expected {}, found {}".format(key, value, found[key])
        for key, value in expected.items()
        if found[key] != value
    ]


def format_headline(counts: Dict[str, int]) -> str:
    return (
        "triangles={triangles} universe={universe} none={none} "
        "rescued={rescued}".format(**counts)
    )


# -- FILES -----------------------------------------------------------------------------

DEFAULT_FILES = {
    "summary": "census.csv",
    "solutions": "solutions.jsonl",
    "no_subdivision": "no_subdivision.txt",
    "discrepancies": "discrepancies.jsonl",
}


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def write_census(
    report: CensusReport, folder: str, files: Dict[str, str] = DEFAULT_FILES
) -> Dict[str, str]:
    """Write the census files into `folder`; returns the paths written.

    Output depends only on the report, never on timing or thread count.

    """
    os.makedirs(folder, exist_ok=True)
    paths = {key: os.path.join(folder, name) for key, name in files.items()}

    with open(paths["summary"], "w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for record in report.records:
            writer.writerow(
                as_json(record.triangle)
                + [
                    record.count("trivial"),
                    record.count("family"),
                    record.count("sporadic"),
                    len(record.solutions),
                    len(record.canonical),
                ]
            )

    with open(paths["solutions"], "w", encoding="utf-8", newline="\n") as file:
        for record in report.records:
            for t, label in record.canonical:
                entry = {
                    "triangle": as_json(record.triangle),
                    "tuple": as_json(t),
                    "class": label,
                }
                file.write(_dumps(entry) + "\n")

    with open(paths["no_subdivision"], "w", encoding="utf-8", newline="\n") as file:
        for record in report.no_subdivision():
            file.write(" ".join(str(x) for x in as_json(record.triangle)) + "\n")

    with open(paths["discrepancies"], "w", encoding="utf-8", newline="\n") as file:
        for d in theorem1_check(report):
            entry = {"triangle": as_json(d.triangle), "kind": d.kind}
            entry["evidence"] = d.evidence
            file.write(_dumps(entry) + "\n")

    return paths


def read_solutions(filename: str) -> Iterator[Tuple[Triangle, CevaTuple, str]]:
    """Iterate over (triangle, tuple, class label) entries of a solutions file."""
    with open(filename, "r", encoding="utf-8") as file:
        for line in file:
            if not line.strip():
                continue
            entry = json.loads(line)
            yield (
                make_triangle(*from_json(entry["triangle"])),
                make_tuple(*from_json(entry["tuple"])),
                entry["class"],
            )


def read_summary(filename: str) -> List[Dict[str, int]]:
    "Rows of a census.csv file as dictionaries of integers."
    with open(filename, "r", encoding="utf-8", newline="") as file:
        return [{k: int(v) for k, v in row.items()} for row in csv.DictReader(file)]


@dataclass
class CensusFiles:
    """Contents of a census output folder."""

    summary: List[Dict[str, int]]
    solutions: List[Tuple[Triangle, CevaTuple, str]]
    no_subdivision: List[Triangle]
    discrepancies: List[Dict[str, Any]]

    def headline(self) -> Dict[str, int]:
        universe = [
            row
            for row in self.summary
            if in_universe(make_triangle(row["a"], row["b"], row["c"]))
        ]
        none = sum(1 for row in universe if row["n_total_labeled"] == 0)
        return {
            "triangles": len(self.summary),
            "universe": len(universe),
            "none": none,
            "rescued": len(universe) - none,
        }


def read_census(folder: str, files: Dict[str, str] = DEFAULT_FILES) -> CensusFiles:
    paths = {key: os.path.join(folder, name) for key, name in files.items()}
    no_subdivision = []
    with open(paths["no_subdivision"], "r", encoding="utf-8") as file:
        for line in file:
            if line.strip():
                no_subdivision.append(make_triangle(*(int(x) for x in line.split())))
    discrepancies = []
    with open(paths["discrepancies"], "r", encoding="utf-8") as file:
        for line in file:
            if line.strip():
                discrepancies.append(json.loads(line))
    return CensusFiles(
        summary=read_summary(paths["summary"]),
        solutions=list(read_solutions(paths["solutions"])),
        no_subdivision=no_subdivision,
        discrepancies=discrepancies,
    )
