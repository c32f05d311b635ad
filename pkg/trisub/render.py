import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
import svgwrite

from trisub.catalog import NotASolutionError
from trisub.cyclotomic import DEFAULT_CAP, ceva_holds_exact
from trisub.exact import CevaTuple, format_rational, pairing_sums

#: Smallest angle (degrees) that still gives a well-conditioned embedding.
MIN_ANGLE = 1e-6

#: Relative tolerance of the measured angles of an embedding.
ANGLE_TOLERANCE = 1e-9


class EmbeddingError(ValueError):
    """Raised when a subdivision cannot be embedded reliably in double precision."""


Point = np.ndarray


@dataclass(frozen=True)
class EmbeddedSubdivision:
    """Coordinates of a subdivision with A = (0, 0) and B = (1, 0).

    D, E and F are the feet of the cevians through P on BC, CA and AB.

    """

    tuple: CevaTuple
    A: Point
    B: Point
    C: Point
    P: Point
    D: Point
    E: Point
    F: Point

    def points(self) -> Dict[str, Point]:
        return {n: getattr(self, n) for n in "ABCPDEF"}

    def measured_angles(self) -> Tuple[float, ...]:
        """Angles (u, v, w, x, y, z) measured from the coordinates, in degrees."""
        A, B, C, P = self.A, self.B, self.C, self.P
        return (
            angle_at(A, B, P),
            angle_at(B, C, P),
            angle_at(C, A, P),
            angle_at(A, P, C),
            angle_at(B, P, A),
            angle_at(C, P, B),
        )

    def residual(self) -> float:
        """Largest relative deviation of a measured angle from its exact value."""
        return max(
            abs(m - float(e)) / float(e)
            for m, e in zip(self.measured_angles(), self.tuple.entries)
        )


def _cross(a: Point, b: Point) -> float:
    return float(a[0] * b[1] - a[1] * b[0])


def angle_at(vertex: Point, p: Point, q: Point) -> float:
    "Angle p-vertex-q in degrees."
    a = p - vertex
    b = q - vertex
    return math.degrees(math.atan2(abs(_cross(a, b)), float(np.dot(a, b))))


def _direction(degrees: float) -> Point:
    r = math.radians(degrees)
    return np.array([math.cos(r), math.sin(r)])


def _intersect(p: Point, d: Point, q: Point, e: Point) -> Point:
    # p + s d = q + r e
    matrix = np.column_stack([d, -e])
    if abs(np.linalg.det(matrix)) < 1e-15:
        raise EmbeddingError("nearly parallel lines in embedding")
    s, _ = np.linalg.solve(matrix, q - p)
    return p + s * d


def _inside(p: Point, a: Point, b: Point, c: Point) -> bool:
    signs = [_cross(b - a, p - a), _cross(c - b, p - b), _cross(a - c, p - c)]
    return all(s > 0 for s in signs)


def embed(
    t: CevaTuple, verify: bool = True, cap: int = DEFAULT_CAP
) -> EmbeddedSubdivision:
    """Place the subdivision `t` in the plane.

    Raises:
        NotASolutionError: if `verify` is set and `t` violates the Ceva condition.
        EmbeddingError: for angles below 1e-6 degrees or if the measured angles deviate
            from the tuple by more than the relative tolerance.

    """
    if min(t.entries) < MIN_ANGLE:
        raise EmbeddingError(
            "angle {} below {} degrees is ill-conditioned".format(
                format_rational(min(t.entries)), MIN_ANGLE
            )
        )
    if verify and not ceva_holds_exact(t, cap):
        raise NotASolutionError("{} does not satisfy the Ceva condition".format(t))
    a, b, c = (float(s) for s in pairing_sums(t))
    u, v, w, x, y, z = (float(e) for e in t.entries)
    rad = math.radians

    A = np.array([0.0, 0.0])
    B = np.array([1.0, 0.0])
    C = math.sin(rad(b)) / math.sin(rad(c)) * _direction(a)
    P = math.sin(rad(y)) / math.sin(rad(u + y)) * _direction(u)
    D = _intersect(A, P - A, B, C - B)
    E = _intersect(B, P - B, C, A - C)
    F = _intersect(C, P - C, A, B - A)
    result = EmbeddedSubdivision(t, A, B, C, P, D, E, F)

    if not _inside(P, A, B, C):
        raise EmbeddingError("interior point of {} not inside the triangle".format(t))
    residual = result.residual()
    if not residual < ANGLE_TOLERANCE:
        raise EmbeddingError(
            "embedding of {} has angle residual {:.3g}".format(t, residual)
        )
    return result


def render_svg(
    embedded: EmbeddedSubdivision,
    filename: Optional[str] = None,
    canvas: int = 1000,
    margin: float = 0.05,
    font_size: int = 22,
) -> svgwrite.Drawing:
    """Draw the triangle, its cevians, P and the exact angle labels.

    The drawing is saved if `filename` is given.

    """
    points = embedded.points()
    corners = np.array([embedded.A, embedded.B, embedded.C])
    low = corners.min(axis=0)
    extent = max(float((corners.max(axis=0) - low).max()), 1e-12)
    inner = canvas * (1 - 2 * margin)
    scale = inner / extent

    def xy(p: Point) -> Tuple[float, float]:
        # svg y axis points down
        q = (p - low) * scale
        return (
            round(canvas * margin + q[0], 4),
            round(canvas - canvas * margin - q[1], 4),
        )

    dwg = svgwrite.Drawing(
        filename or "subdivision.svg", size=(canvas, canvas), profile="full"
    )
    dwg.add(
        dwg.polygon(
            [xy(points[n]) for n in "ABC"],
            id="triangle",
            fill="none",
            stroke="black",
            stroke_width=2,
        )
    )
    cevians = dwg.add(dwg.g(id="cevians", stroke="steelblue", stroke_width=1.5))
    for vertex, foot in (("A", "D"), ("B", "E"), ("C", "F")):
        cevians.add(dwg.line(start=xy(points[vertex]), end=xy(points[foot])))
    dwg.add(dwg.circle(center=xy(embedded.P), r=4, id="P", fill="crimson"))

    # each label sits on the bisector of its partial angle
    t = embedded.tuple
    labels = dwg.add(
        dwg.g(id="labels", font_size=font_size, font_family="sans-serif", fill="black")
    )
    radius = 0.12 * inner
    placements = [
        ("A", "B", t.u),
        ("A", "C", t.x),
        ("B", "C", t.v),
        ("B", "A", t.y),
        ("C", "A", t.w),
        ("C", "B", t.z),
    ]
    for vertex, towards, value in placements:
        origin = np.array(xy(points[vertex]))
        side = np.array(xy(points[towards])) - origin
        cevian_end = np.array(xy(embedded.P)) - origin
        bisector = side / np.linalg.norm(side) + cevian_end / np.linalg.norm(cevian_end)
        norm = np.linalg.norm(bisector)
        if norm > 0:
            bisector = bisector / norm
        at = origin + radius * bisector
        labels.add(
            dwg.text(
                format_rational(value) + "°",
                insert=(round(float(at[0]), 4), round(float(at[1]), 4)),
                text_anchor="middle",
            )
        )
    if filename:
        dwg.save()
    return dwg
