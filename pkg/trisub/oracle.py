from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

import numpy as np

from trisub.cyclotomic import (
    DEFAULT_CAP,
    ceva_difference_mp,
    ceva_holds_exact,
    cyclotomic_level,
)
from trisub.exact import CevaTuple, make_tuple


def _random_tuple(rng: np.random.Generator, d: int) -> CevaTuple:
    # angles in units of 1/d degree; every vertex angle needs at least 2 units
    total = 180 * d
    a = int(rng.integers(2, total - 3))
    b = int(rng.integers(2, total - a - 1))
    c = total - a - b
    u, v, w = (int(rng.integers(1, n)) for n in (a, b, c))
    return make_tuple(
        *(Fraction(n, d) for n in (u, v, w, a - u, b - v, c - w))
    )


def random_integer_tuple(rng: np.random.Generator) -> CevaTuple:
    """A random valid tuple with integer angles."""
    return _random_tuple(rng, 1)


def random_rational_tuple(
    rng: np.random.Generator, max_denominator: int = 12
) -> CevaTuple:
    """A random valid tuple whose angles share a denominator of at most
    `max_denominator`."""
    return _random_tuple(rng, int(rng.integers(1, max_denominator + 1)))


@dataclass
class OracleReport:
    samples: int = 0
    #: samples that satisfy the Ceva condition
    positives: int = 0
    disagreements: List[CevaTuple] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return not self.disagreements


def agrees(t: CevaTuple, digits: int = 50, threshold: float = 1e-40, cap=DEFAULT_CAP):
    """Return (exact result, whether the high-precision evaluation agrees)."""
    exact = ceva_holds_exact(t, cap)
    return exact, exact == (ceva_difference_mp(t, digits) < threshold)


def oracle_check(
    integer_samples: int,
    rational_samples: int,
    rng: Optional[np.random.Generator] = None,
    max_denominator: int = 12,
    digits: int = 50,
    threshold: float = 1e-40,
    cap: int = DEFAULT_CAP,
) -> OracleReport:
    """Compare the exact Ceva check with a high-precision evaluation on random tuples.

    Random tuples almost never satisfy the condition, so every sample is accompanied
    by the bisector tuple of its triangle, which always does (unless it needs roots of
    unity beyond `cap`).

    """
    if rng is None:
        rng = np.random.default_rng()
    report = OracleReport()
    tuples = [random_integer_tuple(rng) for _ in range(integer_samples)]
    tuples += [
        random_rational_tuple(rng, max_denominator) for _ in range(rational_samples)
    ]
    for t in tuples:
        a, b, c = t.u + t.x, t.v + t.y, t.w + t.z
        bisector = make_tuple(a / 2, b / 2, c / 2, a / 2, b / 2, c / 2)
        for s in (t, bisector):
            if cyclotomic_level(s) > cap:
                continue
            exact, ok = agrees(s, digits, threshold, cap)
            report.samples += 1
            report.positives += int(exact)
            if not ok:
                report.disagreements.append(s)
    return report
