import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, List, Sequence, Tuple, Union

#: Exact scalar used for every angle; angles are measured in degrees.
Rational = Fraction

STRAIGHT = Fraction(180)
RIGHT = Fraction(90)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class InvalidAngleError(ValueError):
    """Raised when angles violate positivity, the angle sum, or integrality."""


# -- RATIONALS -------------------------------------------------------------------------


def parse_rational(s: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (decimal integers) into a `Fraction`."""
    match = _RATIONAL_RE.match(s)
    if not match:
        raise ValueError("malformed rational '{}'; expected p or p/q".format(s))
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValueError("malformed rational '{}': zero denominator".format(s))
    return Fraction(numerator, denominator)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return "{}/{}".format(q.numerator, q.denominator)


def to_rational(value: Any) -> Fraction:
    """Convert ints, strings and fractions to `Fraction`; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidAngleError("not an angle: {!r}".format(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InvalidAngleError(
        "angles must be exact (int, 'p/q' or Fraction), got {!r}".format(value)
    )


def parse_angles(s: str, n: int) -> Tuple[Fraction, ...]:
    "Parse a comma-separated list of exactly `n` rationals."
    parts = [p for p in s.split(",")]
    if len(parts) != n:
        raise ValueError(
            "expected {} comma-separated angles, found {} in '{}'".format(
                n, len(parts), s
            )
        )
    return tuple(parse_rational(p) for p in parts)


# -- TYPES -----------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Triangle:
    """A triangle given by its three angles in degrees, stored sorted (a <= b <= c).

    Two triangles are equal iff they are similar. Use :func:`make_triangle` to build a
    triangle from angles in arbitrary order.

    """

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        angles = self.angles
        if any(not isinstance(x, Fraction) for x in angles):
            raise InvalidAngleError("triangle angles must be Fractions")
        if any(x <= 0 for x in angles):
            raise InvalidAngleError(
                "non-positive angle in triangle {}".format(_fmt(angles))
            )
        if sum(angles) != STRAIGHT:
            raise InvalidAngleError(
                "triangle angles {} sum to {}, not 180".format(
                    _fmt(angles), format_rational(sum(angles))
                )
            )
        if not (self.a <= self.b <= self.c):
            raise InvalidAngleError(
                "triangle angles {} not in canonical order".format(_fmt(angles))
            )

    @property
    def angles(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    @property
    def smallest(self) -> Fraction:
        return self.a

    @property
    def largest(self) -> Fraction:
        return self.c

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.angles)

    def __str__(self):
        return "({})".format(_fmt(self.angles))


@dataclass(frozen=True, order=True)
class CevaTuple:
    """The six angles of a subdivision by an interior point P, in degrees.

    At vertex A the cevian AP splits the angle into u (towards B) and x (towards C),
    at B into v (towards C) and y (towards A), at C into w (towards A) and z (towards
    B). Hence A = u + x, B = v + y and C = w + z. Construction only validates
    positivity and the angle sum; whether the cevians concur is decided by
    :func:`trisub.cyclotomic.ceva_holds_exact`.

    """

    u: Fraction
    v: Fraction
    w: Fraction
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        entries = self.entries
        if any(not isinstance(e, Fraction) for e in entries):
            raise InvalidAngleError("subdivision angles must be Fractions")
        if any(e <= 0 for e in entries):
            raise InvalidAngleError(
                "non-positive angle in subdivision {}".format(_fmt(entries))
            )
        if sum(entries) != STRAIGHT:
            raise InvalidAngleError(
                "subdivision angles {} sum to {}, not 180".format(
                    _fmt(entries), format_rational(sum(entries))
                )
            )

    @property
    def entries(self) -> Tuple[Fraction, ...]:
        return (self.u, self.v, self.w, self.x, self.y, self.z)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __getitem__(self, index: int) -> Fraction:
        return self.entries[index]

    def __str__(self):
        return "({})".format(_fmt(self.entries))


AngleTriple = Union[Triangle, Sequence[Any]]


def _fmt(values) -> str:
    return ",".join(format_rational(Fraction(v)) for v in values)


def make_triangle(a, b, c) -> Triangle:
    """Return the validated triangle with angles `a`, `b`, `c` (any order)."""
    angles = sorted(to_rational(x) for x in (a, b, c))
    return Triangle(*angles)


def make_tuple(u, v, w, x, y, z) -> CevaTuple:
    """Return a validated subdivision tuple; the sine product is not checked."""
    return CevaTuple(*(to_rational(e) for e in (u, v, w, x, y, z)))


def vertex_angles(tri: AngleTriple) -> Tuple[Fraction, Fraction, Fraction]:
    """Return the angles (A, B, C) in the caller's vertex order.

    A :class:`Triangle` supplies its sorted order. Plain sequences are validated as
    triangles but keep their order, so that labeled results refer to the vertices as
    given.

    """
    if isinstance(tri, Triangle):
        return tri.angles
    angles = tuple(to_rational(x) for x in tri)
    if len(angles) != 3:
        raise InvalidAngleError("a triangle has three angles, got {}".format(angles))
    make_triangle(*angles)
    return angles  # type: ignore


def pairing_sums(t: CevaTuple) -> Tuple[Fraction, Fraction, Fraction]:
    "Vertex angles (u+x, v+y, w+z) in vertex order."
    return (t.u + t.x, t.v + t.y, t.w + t.z)


def paired_triangle(t: CevaTuple) -> Triangle:
    """The (sorted) triangle subdivided by `t`."""
    return make_triangle(*pairing_sums(t))


# -- SYMMETRIES ------------------------------------------------------------------------

#: A group element is a permutation of the six tuple positions; the image of t under
#: p is (t[p[0]], ..., t[p[5]]).
Permutation = Tuple[int, ...]

IDENTITY: Permutation = (0, 1, 2, 3, 4, 5)
ROTATION: Permutation = (1, 2, 0, 4, 5, 3)
REFLECTION: Permutation = (3, 5, 4, 0, 2, 1)


def compose(p: Permutation, q: Permutation) -> Permutation:
    "Permutation of applying `q` first and then `p`."
    return tuple(q[i] for i in p)


def _closure(generators: Sequence[Permutation]) -> List[Permutation]:
    elements = [IDENTITY]
    frontier = [IDENTITY]
    while frontier:
        new_frontier = []
        for element in frontier:
            for generator in generators:
                candidate = compose(generator, element)
                if candidate not in elements:
                    elements.append(candidate)
                    new_frontier.append(candidate)
        frontier = new_frontier
    return elements


def _equation_group() -> List[Permutation]:
    result = []
    for swap in (False, True):
        first, second = (3, 0) if swap else (0, 3)
        for sigma in itertools.permutations(range(3)):
            for pi in itertools.permutations(range(3)):
                result.append(
                    tuple(first + s for s in sigma) + tuple(second + p for p in pi)
                )
    return result


#: The 6 vertex relabelings of a subdivision.
SUBDIVISION_GROUP: List[Permutation] = _closure([ROTATION, REFLECTION])

#: The 72 position permutations preserving the Ceva equation and the angle sum.
EQUATION_GROUP: List[Permutation] = _equation_group()


def apply(p: Permutation, t: CevaTuple) -> CevaTuple:
    entries = t.entries
    return CevaTuple(*(entries[i] for i in p))


def vertex_permutation(p: Permutation) -> Tuple[int, int, int]:
    """Permutation of (A, B, C) induced by a subdivision-group element.

    Vertex i of the image is vertex ``vertex_permutation(p)[i]`` of the original.

    """
    return (p[0] % 3, p[1] % 3, p[2] % 3)


def subdivision_images(t: CevaTuple) -> List[Tuple[Permutation, CevaTuple]]:
    return [(p, apply(p, t)) for p in SUBDIVISION_GROUP]


def equation_images(t: CevaTuple) -> List[Tuple[Permutation, CevaTuple]]:
    return [(p, apply(p, t)) for p in EQUATION_GROUP]


def canonical_subdivision(t: CevaTuple) -> CevaTuple:
    """Lexicographically smallest tuple among the 6 vertex relabelings of `t`."""
    return min(image for _, image in subdivision_images(t))


def stabilizer(angles: Sequence[Fraction]) -> List[Permutation]:
    """Subdivision-group elements whose vertex relabeling fixes `angles`.

    For a scalene triangle this is the identity only, for an isosceles one it contains
    the reflection swapping the two equal angles, for the equilateral one all six.

    """
    result = []
    for p in SUBDIVISION_GROUP:
        perm = vertex_permutation(p)
        if all(angles[perm[i]] == angles[i] for i in range(3)):
            result.append(p)
    return result


def canonical_in_stabilizer(t: CevaTuple) -> CevaTuple:
    """Smallest image of `t` among relabelings that keep its vertex angles in place."""
    return min(apply(p, t) for p in stabilizer(pairing_sums(t)))


# -- PREDICATES ------------------------------------------------------------------------


def _values(obj: Union[Triangle, CevaTuple, Sequence[Any]]) -> Tuple[Fraction, ...]:
    if isinstance(obj, Triangle):
        return obj.angles
    if isinstance(obj, CevaTuple):
        return obj.entries
    return tuple(to_rational(v) for v in obj)


def is_z_degree(obj: Union[Triangle, CevaTuple, Sequence[Any]]) -> bool:
    "True iff every angle is an integer number of degrees."
    return all(v.denominator == 1 for v in _values(obj))


def is_isosceles(tri: AngleTriple) -> bool:
    a, b, c = vertex_angles(tri)
    return a == b or b == c or a == c


def is_acute(tri: AngleTriple) -> bool:
    return max(vertex_angles(tri)) < RIGHT


def all_even(tri: AngleTriple) -> bool:
    """True iff all angles are even integers; non-integer input is a usage error."""
    angles = vertex_angles(tri)
    if not is_z_degree(angles):
        raise InvalidAngleError(
            "evenness is only defined for Z-degree triangles, got {}".format(
                _fmt(angles)
            )
        )
    return all(a.numerator % 2 == 0 for a in angles)


# -- SERIALIZATION ---------------------------------------------------------------------


def as_json(obj: Union[Triangle, CevaTuple, Sequence[Fraction]]) -> List[Any]:
    """JSON form: integers stay numbers, other rationals become "p/q" strings."""
    return [
        v.numerator if v.denominator == 1 else format_rational(v) for v in _values(obj)
    ]


def from_json(values: Sequence[Any]) -> Tuple[Fraction, ...]:
    return tuple(to_rational(v) for v in values)

