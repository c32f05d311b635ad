import functools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from trisub.catalog import (
    FAMILY_SUP_ANGLE,
    SPORADIC_MAX_ANGLE,
    SPORADIC_MIN_ANGLE,
    TRIVIAL_LABEL_PREFIX,
    FamilyId,
    classify,
    family_matches,
    family_tuple,
    small_angle_regimes,
)
from trisub.census import cached_record
from trisub.exact import (
    STRAIGHT,
    CevaTuple,
    Triangle,
    as_json,
    equation_images,
    format_rational,
    is_acute,
    is_isosceles,
    is_z_degree,
    make_triangle,
    paired_triangle,
    to_rational,
)


class ThresholdError(ValueError):
    """Raised for marginal criteria outside 0 < small < large < 180."""


class BudgetExceededError(RuntimeError):
    """Raised when an exploration exceeds its node or depth budget."""


@dataclass(frozen=True)
class MarginalCriteria:
    """A triangle is marginal if its smallest angle is below `small_threshold` and its
    largest angle exceeds `large_threshold` (both strict)."""

    small_threshold: Fraction = Fraction(1)
    large_threshold: Fraction = FAMILY_SUP_ANGLE

    def __post_init__(self):
        small = to_rational(self.small_threshold)
        large = to_rational(self.large_threshold)
        if not 0 < small < large < STRAIGHT:
            raise ThresholdError(
                "marginal thresholds must satisfy 0 < {} < {} < 180".format(
                    format_rational(small), format_rational(large)
                )
            )
        object.__setattr__(self, "small_threshold", small)
        object.__setattr__(self, "large_threshold", large)


DEFAULT_CRITERIA = MarginalCriteria()


# -- CHILD TRIANGLES -------------------------------------------------------------------


class ChildModel(Enum):
    CEVIAN = "cevian"
    FULL = "full"
    BOTH = "both"


def children_cevian(t: CevaTuple) -> List[Triangle]:
    """The three triangles cut off by the cevians through P."""
    return [
        make_triangle(t.u, t.y, STRAIGHT - t.u - t.y),
        make_triangle(t.v, t.z, STRAIGHT - t.v - t.z),
        make_triangle(t.w, t.x, STRAIGHT - t.w - t.x),
    ]


def children_full(t: CevaTuple) -> List[Triangle]:
    """The six triangles between P, a vertex and an adjacent cevian foot."""
    u, v, w, x, y, z = t.entries
    return [
        make_triangle(u, x + w, v + y + z),
        make_triangle(y, u + x + w, v + z),
        make_triangle(v, y + u, w + z + x),
        make_triangle(z, v + y + u, w + x),
        make_triangle(w, z + v, u + x + y),
        make_triangle(x, w + z + v, u + y),
    ]


def children(t: CevaTuple, model: Union[ChildModel, str] = ChildModel.CEVIAN):
    model = ChildModel(model)
    if model == ChildModel.CEVIAN:
        return children_cevian(t)
    if model == ChildModel.FULL:
        return children_full(t)
    return children_cevian(t) + children_full(t)


def is_marginal(tri: Triangle, crit: MarginalCriteria = DEFAULT_CRITERIA) -> bool:
    return tri.smallest < crit.small_threshold and tri.largest > crit.large_threshold


# -- BOUNDS AND FINDER -----------------------------------------------------------------


class Certificate(Enum):
    CERTIFIED = "certified"
    NOT_CERTIFIED = "not-certified"


def only_bisector_certificate(tri: Triangle) -> Certificate:
    """Certify from angle bounds alone that `tri` only has the bisector subdivision.

    Family triangles have all angles below 135 and sporadic triangles have angles in
    [180/21, 150], so a large enough angle excludes both; isosceles and acute
    triangles carry further trivial solutions and are never certified.

    """
    excluded = tri.largest > SPORADIC_MAX_ANGLE or (
        tri.smallest < SPORADIC_MIN_ANGLE and tri.largest > FAMILY_SUP_ANGLE
    )
    if excluded and not is_isosceles(tri) and not is_acute(tri):
        return Certificate.CERTIFIED
    return Certificate.NOT_CERTIFIED


class FinderStatus(Enum):
    FOUND = "found"
    NONE = "none"
    UNKNOWN_SPORADIC_STATUS = "unknown-sporadic-status"


@dataclass(frozen=True)
class FinderResult:
    status: FinderStatus
    #: nontrivial subdivisions with their class labels, sorted
    subdivisions: Tuple[Tuple[CevaTuple, str], ...] = ()
    #: whether sporadic solutions are known not to exist beyond those listed
    sporadics_excluded: bool = True


def sporadics_excluded_by_bounds(tri: Triangle) -> bool:
    return tri.smallest < SPORADIC_MIN_ANGLE or tri.largest > SPORADIC_MAX_ANGLE


@functools.lru_cache(maxsize=65536)
def nontrivial_subdivision_finder(tri: Triangle) -> FinderResult:
    """All known nontrivial subdivisions of `tri` (in its sorted vertex order).

    Family members are found for every rational triangle. Sporadic solutions are
    looked up in the census for Z-degree triangles; for other triangles they can only
    be ruled out by the sporadic angle bounds.

    """
    matches = family_matches(tri)
    found: Dict[CevaTuple, str] = {}
    for match in matches:
        label = classify(match.subdivision, matches=matches, verify=False).label
        if not label.startswith(TRIVIAL_LABEL_PREFIX):
            found[match.subdivision] = label
    z_degree = is_z_degree(tri)
    if z_degree:
        record = cached_record(*(int(x) for x in tri.angles))
        for t, label in record.solutions:
            if not label.startswith(TRIVIAL_LABEL_PREFIX):
                found[t] = label
    excluded = z_degree or sporadics_excluded_by_bounds(tri)
    subdivisions = tuple(sorted(found.items()))
    if subdivisions:
        status = FinderStatus.FOUND
    elif excluded:
        status = FinderStatus.NONE
    else:
        status = FinderStatus.UNKNOWN_SPORADIC_STATUS
    return FinderResult(status, subdivisions, excluded)


# -- THEOREM CHECK ---------------------------------------------------------------------


@dataclass
class MarginalWitness:
    """Evidence that subdividing by `subdivision` leads to a marginal triangle.

    Either `marginal` lists marginal children of the subdivision itself, or `child`
    names a non-marginal child whose every nontrivial subdivision has a witness one
    level deeper (`next`).

    """

    subdivision: CevaTuple
    label: str
    level: int
    marginal: List[Triangle] = field(default_factory=list)
    child: Optional[Triangle] = None
    next: List["MarginalWitness"] = field(default_factory=list)

    def depth(self) -> int:
        "Level at which marginality is reached on every branch."
        if self.marginal:
            return self.level
        return max(w.depth() for w in self.next)

    def marginal_triangles(self) -> Iterator[Triangle]:
        yield from self.marginal
        for w in self.next:
            yield from w.marginal_triangles()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tuple": as_json(self.subdivision),
            "class": self.label,
            "level": self.level,
            "marginal": [as_json(m) for m in self.marginal],
            "child": as_json(self.child) if self.child is not None else None,
            "next": [w.to_dict() for w in self.next],
        }


def marginal_witness(
    t: CevaTuple,
    label: str = "",
    level: int = 1,
    crit: MarginalCriteria = DEFAULT_CRITERIA,
    model: Union[ChildModel, str] = ChildModel.BOTH,
    max_level: int = 2,
) -> Optional[MarginalWitness]:
    """Search a marginal descendant of subdivision `t` within `max_level` levels."""
    kids = children(t, model)
    marginal = [c for c in kids if is_marginal(c, crit)]
    if marginal:
        return MarginalWitness(t, label, level, marginal=sorted(set(marginal)))
    if level >= max_level:
        return None
    for child in sorted(set(kids)):
        result = nontrivial_subdivision_finder(child)
        if result.status != FinderStatus.FOUND:
            continue
        deeper = []
        for s, s_label in result.subdivisions:
            w = marginal_witness(s, s_label, level + 1, crit, model, max_level)
            if w is None:
                break
            deeper.append(w)
        else:
            return MarginalWitness(t, label, level, child=child, next=deeper)
    return None


@dataclass
class SampleReport:
    family: FamilyId
    t: Fraction
    triangle: Triangle
    finder_status: FinderStatus
    #: every nontrivial subdivision of the triangle and its witness (None on failure)
    chains: List[Tuple[CevaTuple, str, Optional[MarginalWitness]]]
    #: marginal triangles whose finder result was not None
    non_bisector_marginals: List[Triangle] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return (
            all(w is not None for _, _, w in self.chains)
            and not self.non_bisector_marginals
        )

    @property
    def level(self) -> int:
        "Deepest level needed to reach marginality, 0 if no chain succeeded."
        levels = [w.depth() for _, _, w in self.chains if w is not None]
        return max(levels) if levels else 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family.value,
            "t": format_rational(self.t),
            "triangle": as_json(self.triangle),
            "finder": self.finder_status.value,
            "success": self.success,
            "level": self.level,
            "chains": [
                {
                    "tuple": as_json(t),
                    "class": label,
                    "witness": w.to_dict() if w is not None else None,
                }
                for t, label, w in self.chains
            ],
            "non_bisector_marginals": [as_json(m) for m in self.non_bisector_marginals],
        }


@dataclass
class TheoremCheckReport:
    family: FamilyId
    model: ChildModel
    samples: List[SampleReport]

    @property
    def success(self) -> bool:
        return all(s.success for s in self.samples)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family.value,
            "child_model": self.model.value,
            "success": self.success,
            "samples": [s.to_dict() for s in self.samples],
        }


#: largest smallest-angle of an image triangle examined by `theorem_check`
DEFAULT_SMALL_ANGLE = Fraction(3, 2)


def small_image_triangles(
    f: FamilyId, t: Any, small_angle: Any = DEFAULT_SMALL_ANGLE
) -> List[Triangle]:
    """Distinct triangles subdivided by equation-group images of the family tuple at
    `t` whose smallest angle is at most `small_angle`, in sorted order."""
    limit = to_rational(small_angle)
    result = set()
    for _, image in equation_images(family_tuple(f, to_rational(t))):
        tri = paired_triangle(image)
        if tri.smallest <= limit:
            result.add(tri)
    return sorted(result)


def sample_candidates(
    f: FamilyId, values: Sequence[Any] = ("1/3", "2/5", "1/2")
) -> List[Fraction]:
    """Candidate parameters of `f` for each value v, in every small-angle regime.

    A regime contributes the parameter at distance v from its endpoint and the
    parameter at which its vanishing angle equals v. Candidates outside the open
    range of `f` are skipped.

    """
    result = set()
    for value in values:
        v = to_rational(value)
        for regime in small_angle_regimes(f):
            distance = v if regime.slope > 0 else -v
            for t in (regime.endpoint + distance, regime.parameter(v)):
                if f.in_range(t):
                    result.add(t)
    return sorted(result)


def default_samples(
    f: FamilyId,
    values: Sequence[Any] = ("1/3", "2/5", "1/2"),
    small_angle: Any = DEFAULT_SMALL_ANGLE,
) -> List[Fraction]:
    """The `sample_candidates` of `f` with an image triangle whose smallest angle is
    at most `small_angle`."""
    return [
        t
        for t in sample_candidates(f, values)
        if small_image_triangles(f, t, small_angle)
    ]


def theorem_check(
    f: FamilyId,
    samples: Sequence[Any],
    crit: MarginalCriteria = DEFAULT_CRITERIA,
    model: Union[ChildModel, str] = ChildModel.BOTH,
    max_level: int = 2,
    small_angle: Any = DEFAULT_SMALL_ANGLE,
) -> TheoremCheckReport:
    """Check that every nontrivial subdivision of the small-angle triangles of sampled
    family members reaches a marginal triangle within `max_level` levels.

    One `SampleReport` is produced per (t, triangle) pair.

    Raises:
        ValueError: if a sample has no image triangle with an angle of at most
            `small_angle`.
        FamilyRangeError: if a sample is outside the family's range.

    """
    model = ChildModel(model)
    reports = []
    for value in samples:
        t = to_rational(value)
        triangles = small_image_triangles(f, t, small_angle)
        if not triangles:
            raise ValueError(
                "sample t={} of family {} has no triangle with an angle <= {}".format(
                    format_rational(t),
                    f.value,
                    format_rational(to_rational(small_angle)),
                )
            )
        for tri in triangles:
            reports.append(_sample_report(f, t, tri, crit, model, max_level))
    return TheoremCheckReport(f, model, reports)


def _sample_report(f, t, tri, crit, model, max_level) -> SampleReport:
    result = nontrivial_subdivision_finder(tri)
    chains = []
    non_bisector = set()
    for s, label in result.subdivisions:
        w = marginal_witness(s, label, 1, crit, model, max_level)
        chains.append((s, label, w))
        if w is None:
            continue
        for m in w.marginal_triangles():
            if nontrivial_subdivision_finder(m).status != FinderStatus.NONE:
                non_bisector.add(m)
    return SampleReport(f, t, tri, result.status, chains, sorted(non_bisector))


# -- EXPLORATION -----------------------------------------------------------------------


class Strategy(Enum):
    AVOID_BISECTOR = "avoid_bisector"
    EXHAUSTIVE = "exhaustive"

    @staticmethod
    def parse(s: Union["Strategy", str]) -> "Strategy":
        if isinstance(s, Strategy):
            return s
        return Strategy(s.replace("-", "_").lower())


class NodeStatus(Enum):
    BISECTOR_ONLY = "bisector-only"
    HAS_NONTRIVIAL = "has-nontrivial"
    UNKNOWN = "unknown"


_STATUS_OF = {
    FinderStatus.FOUND: NodeStatus.HAS_NONTRIVIAL,
    FinderStatus.NONE: NodeStatus.BISECTOR_ONLY,
    FinderStatus.UNKNOWN_SPORADIC_STATUS: NodeStatus.UNKNOWN,
}


@dataclass
class SubdivisionNode:
    """A node of an exploration tree.

    A node without `applied` stands for a triangle; its children are one node per
    subdivision explored, each with the same triangle and `applied` set. The children
    of a node with `applied` are the child triangles of that subdivision.

    """

    triangle: Triangle
    status: NodeStatus
    applied: Optional[Tuple[CevaTuple, ChildModel]] = None
    label: Optional[str] = None
    children: List["SubdivisionNode"] = field(default_factory=list)
    #: true if expansion stopped at the depth limit
    truncated: bool = False

    def nodes(self) -> Iterator["SubdivisionNode"]:
        yield self
        for child in self.children:
            yield from child.nodes()

    def leaves(self) -> Iterator["SubdivisionNode"]:
        if not self.children:
            yield self
        for child in self.children:
            yield from child.leaves()

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            "triangle": as_json(self.triangle),
            "status": self.status.value,
        }
        if self.applied is not None:
            result["applied"] = {
                "tuple": as_json(self.applied[0]),
                "model": self.applied[1].value,
                "class": self.label,
            }
        if self.truncated:
            result["truncated"] = True
        result["children"] = [c.to_dict() for c in self.children]
        return result


class _Explorer:
    def __init__(self, strategy, model, max_depth, max_nodes, complete):
        self.strategy = strategy
        self.model = model
        self.max_depth = max_depth
        self.max_nodes = max_nodes
        self.complete = complete
        self.num_nodes = 0

    def _count(self):
        self.num_nodes += 1
        if self.num_nodes > self.max_nodes:
            raise BudgetExceededError(
                "exploration exceeded the budget of {} nodes".format(self.max_nodes)
            )

    def _subdivisions(self, tri: Triangle) -> List[Tuple[CevaTuple, str]]:
        if self.strategy == Strategy.EXHAUSTIVE:
            return cached_record(*(int(x) for x in tri.angles)).canonical
        return list(nontrivial_subdivision_finder(tri).subdivisions)

    def expand(self, tri: Triangle, depth: int) -> SubdivisionNode:
        self._count()
        status = _STATUS_OF[nontrivial_subdivision_finder(tri).status]
        node = SubdivisionNode(tri, status)
        avoid = self.strategy == Strategy.AVOID_BISECTOR
        if avoid and status != NodeStatus.HAS_NONTRIVIAL:
            return node
        subdivisions = self._subdivisions(tri)
        if not subdivisions:
            return node
        if depth >= self.max_depth:
            if self.complete:
                raise BudgetExceededError(
                    "exploration of {} needs more than {} levels".format(
                        tri, self.max_depth
                    )
                )
            node.truncated = True
            return node
        for t, label in subdivisions:
            self._count()
            branch = SubdivisionNode(tri, status, (t, self.model), label)
            branch.children = [
                self.expand(c, depth + 1) for c in children(t, self.model)
            ]
            node.children.append(branch)
        return node


def explore(
    tri: Triangle,
    strategy: Union[Strategy, str] = Strategy.AVOID_BISECTOR,
    max_depth: int = 3,
    max_nodes: int = 1000000,
    model: Union[ChildModel, str] = ChildModel.CEVIAN,
    complete: bool = False,
) -> SubdivisionNode:
    """Build the tree of recursive subdivisions of `tri` up to `max_depth` levels.

    `AVOID_BISECTOR` follows nontrivial subdivisions only and stops at triangles whose
    only subdivision is the bisector one. `EXHAUSTIVE` follows every census solution
    (up to the triangle's symmetries) and requires a Z-degree triangle.

    Raises:
        BudgetExceededError: if more than `max_nodes` nodes are created, or if
            `complete` is set and some node would need more than `max_depth` levels.

    """
    strategy = Strategy.parse(strategy)
    model = ChildModel(model)
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative, got {}".format(max_depth))
    if strategy == Strategy.EXHAUSTIVE and not is_z_degree(tri):
        raise ValueError("exhaustive exploration requires a Z-degree triangle")
    return _Explorer(strategy, model, max_depth, max_nodes, complete).expand(tri, 0)


def summarize(root: SubdivisionNode) -> Dict[str, int]:
    "Node and leaf counts of an exploration tree by status."
    result = {"nodes": 0, "truncated": 0}
    for status in NodeStatus:
        result["leaves_" + status.value.replace("-", "_")] = 0
    for node in root.nodes():
        result["nodes"] += 1
    for leaf in root.leaves():
        if leaf.truncated:
            result["truncated"] += 1
        result["leaves_" + leaf.status.value.replace("-", "_")] += 1
    return result
