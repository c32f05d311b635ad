from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from trisub.cyclotomic import DEFAULT_CAP, ceva_holds_exact
from trisub.exact import (
    EQUATION_GROUP,
    RIGHT,
    AngleTriple,
    CevaTuple,
    Permutation,
    apply,
    format_rational,
    is_z_degree,
    make_tuple,
    pairing_sums,
    to_rational,
    vertex_angles,
)


class FamilyRangeError(ValueError):
    """Raised when a family parameter lies outside its open range."""


class NotASolutionError(ValueError):
    """Raised when an operation requires a tuple satisfying the Ceva condition."""


# -- PARAMETRIC FAMILIES ---------------------------------------------------------------

#: Affine templates (constant, coefficient of t) in tuple order (u, v, w, x, y, z).
_TEMPLATES = {
    "2a": ((30, 0), (0, 1), (60, -2), (60, 1), (0, 1), (30, -1)),
    "2b": ((30, 0), (90, -3), (0, 1), (30, -1), (0, 2), (30, 1)),
    "2c": ((30, 0), (30, -2), (0, 2), (30, -2), (0, 1), (90, 1)),
    "2d": ((60, -4), (0, 1), (60, 1), (30, -2), (0, 3), (30, 1)),
}

_UPPER = {"2a": 30, "2b": 30, "2c": 15, "2d": 15}


class FamilyId(Enum):
    """The four one-parameter solution families, each valid for 0 < t < `upper`."""

    F2A = "2a"
    F2B = "2b"
    F2C = "2c"
    F2D = "2d"

    @property
    def template(self) -> Tuple[Tuple[int, int], ...]:
        return _TEMPLATES[self.value]

    @property
    def upper(self) -> Fraction:
        return Fraction(_UPPER[self.value])

    @property
    def label(self) -> str:
        return "family-" + self.value

    def in_range(self, t: Fraction) -> bool:
        return 0 < t < self.upper

    @staticmethod
    def parse(s: str) -> "FamilyId":
        key = s.lower()
        for prefix in ("family-", "f"):
            if key.startswith(prefix):
                key = key[len(prefix) :]
        try:
            return FamilyId(key)
        except ValueError:
            raise ValueError(
                "unknown family '{}'; expected one of 2a, 2b, 2c, 2d".format(s)
            )


def family_tuple(f: FamilyId, t) -> CevaTuple:
    """Instantiate family `f` at parameter `t` (degrees)."""
    t = to_rational(t)
    if not f.in_range(t):
        raise FamilyRangeError(
            "parameter t={} outside the open range (0, {}) of family {}".format(
                format_rational(t), format_rational(f.upper), f.value
            )
        )
    return make_tuple(*(const + coef * t for const, coef in f.template))


@dataclass(frozen=True)
class FamilyMatch:
    """`subdivision` is the equation-group `image` of family `family` at `t`."""

    family: FamilyId
    t: Fraction
    image: Permutation
    subdivision: CevaTuple

    @property
    def label(self) -> str:
        return self.family.label

    def reproduce(self) -> CevaTuple:
        return apply(self.image, family_tuple(self.family, self.t))


def _image_sums() -> List[Tuple[FamilyId, Permutation, Tuple[Tuple[int, int], ...]]]:
    # pairing sums of every equation-group image of every template, affine in t
    result = []
    for f in FamilyId:
        template = f.template
        for p in EQUATION_GROUP:
            entries = [template[i] for i in p]
            sums = tuple(
                (entries[j][0] + entries[j + 3][0], entries[j][1] + entries[j + 3][1])
                for j in range(3)
            )
            result.append((f, p, sums))
    return result


_IMAGE_SUMS = _image_sums()


def family_matches(tri: AngleTriple) -> List[FamilyMatch]:
    """All family subdivisions of the triangle with vertex angles `tri` (in order).

    For every family and every image of its template under the equation group, the
    pairing sums are affine in t; the first non-constant one determines t, which is
    then checked against the other two sums and the family's open range.

    """
    angles = vertex_angles(tri)
    result: List[FamilyMatch] = []
    seen = set()
    for f, p, sums in _IMAGE_SUMS:
        t = None
        for (const, coef), angle in zip(sums, angles):
            if coef != 0:
                t = (angle - const) / coef
                break
        if t is None or not f.in_range(t):
            continue
        if any(const + coef * t != angle for (const, coef), angle in zip(sums, angles)):
            continue
        subdivision = apply(p, family_tuple(f, t))
        if subdivision in seen:
            continue
        seen.add(subdivision)
        result.append(FamilyMatch(family=f, t=t, image=p, subdivision=subdivision))
    return result


@dataclass(frozen=True, order=True)
class SmallAngleRegime:
    """An angle of some image triangle of a family that tends to 0 at `endpoint`.

    The angle is ``slope * (t - endpoint)``.

    """

    endpoint: Fraction
    slope: Fraction

    def parameter(self, angle) -> Fraction:
        "The family parameter at which this angle equals `angle`."
        return self.endpoint + to_rational(angle) / self.slope


def small_angle_regimes(f: FamilyId) -> List[SmallAngleRegime]:
    """Distinct affine image-triangle angles of `f` vanishing at an end of its range."""
    result = set()
    for g, _, sums in _IMAGE_SUMS:
        if g != f:
            continue
        for const, coef in sums:
            for endpoint in (Fraction(0), f.upper):
                if coef != 0 and const + coef * endpoint == 0:
                    result.add(SmallAngleRegime(endpoint, Fraction(coef)))
    return sorted(result)


# -- TRIVIAL SOLUTIONS -----------------------------------------------------------------


class TrivialKind(Enum):
    BISECTOR = "trivial-i"
    ISOSCELES = "trivial-ii"
    ACUTE_CYCLE = "trivial-iii"


#: Common prefix of the trivial class labels.
TRIVIAL_LABEL_PREFIX = "trivial"


#: (x, y, z) = (t[s[0]], t[s[1]], t[s[2]]) for s in these permutations of (u, v, w),
#: listed in labeling priority.
_SIGMAS: List[Tuple[Tuple[int, int, int], TrivialKind]] = [
    ((0, 1, 2), TrivialKind.BISECTOR),
    ((0, 2, 1), TrivialKind.ISOSCELES),
    ((1, 0, 2), TrivialKind.ISOSCELES),
    ((2, 1, 0), TrivialKind.ISOSCELES),
    ((1, 2, 0), TrivialKind.ACUTE_CYCLE),
    ((2, 0, 1), TrivialKind.ACUTE_CYCLE),
]


@dataclass(frozen=True)
class TrivialClass:
    """A trivial solution: {x, y, z} is the permutation `sigma` of {u, v, w}."""

    kind: TrivialKind
    sigma: Tuple[int, int, int]

    @property
    def label(self) -> str:
        return self.kind.value


@dataclass(frozen=True)
class IsoscelesContinuum:
    """The one-parameter trivial solutions of an isosceles triangle.

    For the transposition `sigma` swapping positions i and j (fixing k), the entry
    ``uvw[i] = p`` is free in the open interval (0, `upper`), ``uvw[j] = upper - p``
    and ``uvw[k] = fixed``.

    """

    sigma: Tuple[int, int, int]
    free_index: int
    upper: Fraction
    fixed: Fraction

    def at(self, p) -> CevaTuple:
        p = to_rational(p)
        if not 0 < p < self.upper:
            raise FamilyRangeError(
                "parameter {} outside the open range (0, {})".format(
                    format_rational(p), format_rational(self.upper)
                )
            )
        i = self.free_index
        j = self.sigma[i]
        k = 3 - i - j
        uvw = [Fraction(0)] * 3
        uvw[i], uvw[j], uvw[k] = p, self.upper - p, self.fixed
        return make_tuple(*uvw, *(uvw[s] for s in self.sigma))


@dataclass
class TrivialSolutions:
    tuples: List[CevaTuple] = field(default_factory=list)
    continua: List[IsoscelesContinuum] = field(default_factory=list)


class TrivialMode(Enum):
    INTEGER = "int"
    RATIONAL = "rat"


def _build(uvw: Sequence[Fraction], sigma: Tuple[int, int, int]) -> CevaTuple:
    return make_tuple(*uvw, *(uvw[s] for s in sigma))


def trivial_solutions(
    tri: AngleTriple, mode: Union[TrivialMode, str] = TrivialMode.INTEGER
) -> TrivialSolutions:
    """Solve u + x = A, v + y = B, w + z = C with (x, y, z) a permutation of (u, v, w).

    In integer mode, returns every labeled Z-degree solution (sorted, without
    identifying mirror images). In rational mode, returns the bisector subdivision,
    the 3-cycle solutions of acute triangles, and a continuum descriptor for every
    pair of equal angles.

    """
    mode = TrivialMode(mode)
    angles = vertex_angles(tri)
    integer = mode == TrivialMode.INTEGER
    result = TrivialSolutions()
    found = set()

    def add(t: CevaTuple):
        if integer and not is_z_degree(t):
            return
        if t not in found:
            found.add(t)
            result.tuples.append(t)

    for sigma, kind in _SIGMAS:
        if kind == TrivialKind.BISECTOR:
            add(_build([a / 2 for a in angles], sigma))
        elif kind == TrivialKind.ACUTE_CYCLE:
            if max(angles) < RIGHT:
                # u + v + w = 90, so uvw[sigma^2(i)] = 90 - A_i
                add(_build([RIGHT - angles[sigma[k]] for k in range(3)], sigma))
        else:
            k = next(i for i in range(3) if sigma[i] == i)
            i = next(n for n in range(3) if n != k)
            j = sigma[i]
            if angles[i] != angles[j]:
                continue
            continuum = IsoscelesContinuum(
                sigma=sigma, free_index=i, upper=angles[i], fixed=angles[k] / 2
            )
            if integer:
                if angles[i].denominator != 1 or continuum.fixed.denominator != 1:
                    continue
                for p in range(1, angles[i].numerator):
                    add(continuum.at(p))
            else:
                result.continua.append(continuum)

    if integer:
        result.tuples.sort()
    return result


def trivial_class(t: CevaTuple) -> Optional[TrivialClass]:
    """Trivial class of `t`; `None` if (x, y, z) is no permutation of (u, v, w)."""
    uvw = (t.u, t.v, t.w)
    xyz = (t.x, t.y, t.z)
    for sigma, kind in _SIGMAS:
        if all(xyz[i] == uvw[sigma[i]] for i in range(3)):
            return TrivialClass(kind=kind, sigma=sigma)
    return None


# -- CLASSIFICATION --------------------------------------------------------------------


@dataclass(frozen=True)
class Sporadic:
    """A solution that is neither trivial nor a member of a family."""

    @property
    def label(self) -> str:
        return "sporadic"


Classification = Union[TrivialClass, FamilyMatch, Sporadic]

#: All class labels in file order.
CLASS_LABELS = [k.value for k in TrivialKind] + [f.label for f in FamilyId] + [
    "sporadic"
]


def classify(
    t: CevaTuple,
    matches: Optional[Sequence[FamilyMatch]] = None,
    verify: bool = True,
    cap: int = DEFAULT_CAP,
) -> Classification:
    """Classify a solution as trivial, family member or sporadic.

    `matches` may hold precomputed :func:`family_matches` of the tuple's triangle (in
    the tuple's vertex order); `verify` can be disabled for tuples already known to
    satisfy the Ceva condition.

    """
    if verify and not ceva_holds_exact(t, cap):
        raise NotASolutionError("{} does not satisfy the Ceva condition".format(t))
    trivial = trivial_class(t)
    if trivial is not None:
        return trivial
    if matches is None:
        matches = family_matches(pairing_sums(t))
    for match in matches:
        if match.subdivision == t:
            return match
    return Sporadic()


# -- ANGLE BOUNDS ----------------------------------------------------------------------


@dataclass(frozen=True)
class AngleBound:
    value: Fraction
    attained: bool
    #: image and vertex index of a pairing sum reaching the bound
    witness: Tuple[Permutation, int]


@dataclass(frozen=True)
class FamilyBounds:
    family: Optional[FamilyId]
    sup: AngleBound
    inf: AngleBound


def _tighter(current: Optional[AngleBound], candidate: AngleBound, upper: bool):
    if current is None:
        return candidate
    if upper:
        better = candidate.value > current.value
    else:
        better = candidate.value < current.value
    if better:
        return candidate
    if candidate.value == current.value and candidate.attained and not current.attained:
        return candidate
    return current


def family_angle_sup() -> Dict[str, FamilyBounds]:
    """Exact supremum and infimum of triangle angles produced by each family.

    Every pairing sum of every equation-group image is affine in t on the open range
    of its family, so its extremes are the endpoint values, attained only when the
    sum is constant. Keys are the family values and ``"all"``.

    """
    result: Dict[str, FamilyBounds] = {}
    overall_sup: Optional[AngleBound] = None
    overall_inf: Optional[AngleBound] = None
    for f in FamilyId:
        sup: Optional[AngleBound] = None
        inf: Optional[AngleBound] = None
        for g, p, sums in _IMAGE_SUMS:
            if g != f:
                continue
            for index, (const, coef) in enumerate(sums):
                ends = (Fraction(const), const + coef * f.upper)
                constant = coef == 0
                sup = _tighter(sup, AngleBound(max(ends), constant, (p, index)), True)
                inf = _tighter(inf, AngleBound(min(ends), constant, (p, index)), False)
        result[f.value] = FamilyBounds(family=f, sup=sup, inf=inf)
        overall_sup = _tighter(overall_sup, sup, True)
        overall_inf = _tighter(overall_inf, inf, False)
    result["all"] = FamilyBounds(family=None, sup=overall_sup, inf=overall_inf)
    return result


#: Largest angle of a triangle with a sporadic subdivision.
SPORADIC_MAX_ANGLE = Fraction(150)

#: Smallest angle of a triangle with a sporadic subdivision.
SPORADIC_MIN_ANGLE = Fraction(180, 21)

#: Supremum (not attained) of angles of triangles with a family subdivision.
FAMILY_SUP_ANGLE = Fraction(135)
