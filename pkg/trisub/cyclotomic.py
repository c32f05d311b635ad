import functools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from trisub.exact import STRAIGHT, CevaTuple

#: Largest root-of-unity order for which a context is built unless configured.
DEFAULT_CAP = 7200

#: Contexts with more table entries than this reduce by polynomial division.
MAX_TABLE_ENTRIES = 6_000_000

#: Default absolute tolerance of the floating-point prefilter.
DEFAULT_TOLERANCE = 1e-9

#: Floating-point differences up to this value are exact-checked as well.
DEFAULT_GUARD_BAND = 1e-6


class CyclotomicCapError(RuntimeError):
    """Raised when a computation needs a root-of-unity order above the cap."""


# -- INTEGER POLYNOMIALS ---------------------------------------------------------------


class IntPoly:
    """Polynomial with arbitrary-precision integer coefficients.

    ``coefficients[i]`` is the coefficient of x^i; trailing zeros are trimmed, so the
    zero polynomial has no coefficients and degree -1.

    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[int]):
        coeffs = [int(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients: Tuple[int, ...] = tuple(coeffs)

    @staticmethod
    def x_pow_minus_one(m: int) -> "IntPoly":
        "The polynomial x^m - 1."
        return IntPoly([-1] + [0] * (m - 1) + [1])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (n - len(self.coefficients))
        b = other.coefficients + (0,) * (n - len(other.coefficients))
        return IntPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coefficients)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero() or other.is_zero():
            return IntPoly([])
        result = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                result[i + j] += a * b
        return IntPoly(result)

    def substitute_power(self, k: int) -> "IntPoly":
        "The polynomial p(x^k)."
        result = [0] * (k * self.degree + 1) if not self.is_zero() else []
        for i, c in enumerate(self.coefficients):
            result[i * k] = c
        return IntPoly(result)

    def divmod(self, divisor: "IntPoly") -> Tuple["IntPoly", "IntPoly"]:
        """Exact long division by a polynomial with leading coefficient +1 or -1."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead = divisor.leading()
        if lead not in (1, -1):
            raise ValueError("divisor must have leading coefficient +1 or -1")
        remainder = list(self.coefficients)
        d = divisor.degree
        if len(remainder) - 1 < d:
            return IntPoly([]), IntPoly(remainder)
        quotient = [0] * (len(remainder) - d)
        terms = [(i, dc) for i, dc in enumerate(divisor.coefficients) if dc]
        for k in range(len(remainder) - 1, d - 1, -1):
            c = remainder[k] * lead
            if c == 0:
                continue
            quotient[k - d] = c
            for i, dc in terms:
                remainder[k - d + i] -= c * dc
        return IntPoly(quotient), IntPoly(remainder)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return "IntPoly({})".format(list(self.coefficients))


def _factorize(m: int) -> List[Tuple[int, int]]:
    factors = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            factors.append((p, k))
        p += 1
    if m > 1:
        factors.append((m, 1))
    return factors


def euler_phi(m: int) -> int:
    result = m
    for p, _ in _factorize(m):
        result = result // p * (p - 1)
    return result


def divisors(m: int) -> List[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


@functools.lru_cache(maxsize=None)
def _squarefree_cyclotomic(r: int) -> IntPoly:
    # divide x^r - 1 by all Phi_d for proper divisors d of r
    result = IntPoly.x_pow_minus_one(r)
    for d in divisors(r)[:-1]:
        result, remainder = result.divmod(_squarefree_cyclotomic_or_power(d))
        assert remainder.is_zero(), "Phi_{} does not divide x^{}-1".format(d, r)
    return result


def _squarefree_cyclotomic_or_power(d: int) -> IntPoly:
    radical = math.prod(p for p, _ in _factorize(d)) if d > 1 else 1
    return _squarefree_cyclotomic(radical).substitute_power(d // radical)


def cyclotomic_poly(m: int, cap: int = DEFAULT_CAP) -> IntPoly:
    """The m-th cyclotomic polynomial.

    For squarefree m, x^m - 1 is divided by Phi_d for all proper divisors d; otherwise
    Phi_m(x) = Phi_r(x^(m/r)) with r the radical of m.

    """
    if m < 1:
        raise ValueError("cyclotomic order must be positive, got {}".format(m))
    if m > cap:
        raise CyclotomicCapError(
            "cyclotomic order {} exceeds the configured cap {}".format(m, cap)
        )
    return _squarefree_cyclotomic_or_power(m)


# -- CONTEXTS AND ZERO TEST ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CycContext:
    """Everything needed to decide vanishing of integer sums of m-th roots of unity.

    Row k of `reduction_table` holds the coefficients of x^k mod Phi_m for k in
    [0, m); rows below phi(m) are unit vectors, so a sum is reduced by a single
    matrix product. For orders whose table would exceed `MAX_TABLE_ENTRIES` the
    table is `None` and sums are reduced by polynomial division instead.

    """

    m: int
    phi_m: IntPoly
    reduction_table: Optional[np.ndarray]

    @property
    def degree(self) -> int:
        return self.phi_m.degree

    def row(self, k: int) -> Tuple[int, ...]:
        "Coefficients of x^k mod Phi_m."
        if self.reduction_table is not None:
            return tuple(int(c) for c in self.reduction_table[k])
        _, remainder = IntPoly([0] * k + [1]).divmod(self.phi_m)
        coeffs = remainder.coefficients
        return coeffs + (0,) * (self.degree - len(coeffs))


def _build_reduction_rows(phi: IntPoly, m: int) -> List[List[int]]:
    d = phi.degree
    rows = []
    current: List[int] = []
    for k in range(m):
        if k < d:
            row = [0] * d
            row[k] = 1
            rows.append(row)
            continue
        if k == d:
            current = [-c for c in phi.coefficients[:d]]
        else:
            # multiply previous row by x and reduce the overflowing x^d term
            top = current[-1]
            current = [0] + current[:-1]
            if top:
                current = [c - top * pc for c, pc in zip(current, phi.coefficients)]
        rows.append(list(current))
    return rows


@functools.lru_cache(maxsize=None)
def _context(m: int) -> CycContext:
    phi = _squarefree_cyclotomic_or_power(m)
    if m * phi.degree > MAX_TABLE_ENTRIES:
        return CycContext(m=m, phi_m=phi, reduction_table=None)
    rows = _build_reduction_rows(phi, m)
    largest = max((abs(c) for row in rows for c in row), default=0)
    # weights are at most 16 in absolute value and at most 16 rows are combined
    dtype = np.int64 if largest * 256 < 2 ** 62 else object
    table = np.array(rows, dtype=dtype).reshape(m, phi.degree)
    table.flags.writeable = False
    return CycContext(m=m, phi_m=phi, reduction_table=table)


def get_context(m: int, cap: int = DEFAULT_CAP) -> CycContext:
    """Cached, immutable context for order `m`."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive, got {}".format(m))
    if m > cap:
        raise CyclotomicCapError(
            "cyclotomic order {} exceeds the configured cap {}".format(m, cap)
        )
    return _context(m)


@dataclass(frozen=True)
class SignedExponentSum:
    """The sum of sign * zeta^exponent over all terms, zeta a primitive m-th root."""

    m: int
    terms: Tuple[Tuple[int, int], ...]

    @staticmethod
    def create(terms: Iterable[Tuple[int, int]], m: int) -> "SignedExponentSum":
        reduced = []
        for sign, exponent in terms:
            if sign not in (1, -1):
                raise ValueError("term signs must be +1 or -1, got {}".format(sign))
            reduced.append((sign, exponent % m))
        return SignedExponentSum(m=m, terms=tuple(reduced))


def is_zero_sum_of_roots(s: SignedExponentSum, ctx: CycContext) -> bool:
    """Decide exactly whether the signed sum of m-th roots of unity vanishes."""
    if s.m != ctx.m:
        raise ValueError(
            "sum over {}-th roots checked in context of order {}".format(s.m, ctx.m)
        )
    counts = {}
    for sign, exponent in s.terms:
        counts[exponent] = counts.get(exponent, 0) + sign
    exponents = [e for e, c in counts.items() if c != 0]
    if not exponents:
        return True
    table = ctx.reduction_table
    if table is None:
        poly = [0] * ctx.m
        for e in exponents:
            poly[e] = counts[e]
        _, remainder = IntPoly(poly).divmod(ctx.phi_m)
        return remainder.is_zero()
    weights = np.array([counts[e] for e in exponents], dtype=table.dtype)
    reduced = weights @ table[exponents]
    return not np.any(reduced)


# -- CEVA CONDITION --------------------------------------------------------------------


def _half_turns(t: CevaTuple) -> Tuple[int, List[int]]:
    fractions = [e / STRAIGHT for e in t.entries]
    n = 1
    for q in fractions:
        n = n * q.denominator // math.gcd(n, q.denominator)
    return n, [int(q * n) for q in fractions]


def cyclotomic_level(t: CevaTuple) -> int:
    """Order m of the roots of unity in which the sines of `t` are expressed."""
    n, _ = _half_turns(t)
    return 2 * n


def _sine_product_terms(ks: Sequence[int]) -> List[Tuple[int, int]]:
    # prod_j (zeta^k_j - zeta^-k_j) expanded into 8 signed monomials
    terms = []
    for signs in ((1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)):
        for flip in (1, -1):
            e = [flip * s for s in signs]
            exponent = e[0] * ks[0] + e[1] * ks[1] + e[2] * ks[2]
            terms.append((e[0] * e[1] * e[2], exponent))
    return terms


def ceva_sum(t: CevaTuple, cap: int = DEFAULT_CAP) -> SignedExponentSum:
    """The 16-term root-of-unity sum that vanishes iff the Ceva condition holds.

    With every angle written as k/n half-turns, sin(angle) = (zeta^k - zeta^-k)/(2i)
    for zeta = exp(i pi / n), a primitive 2n-th root of unity. The common factor
    (2i)^-3 of both sine products cancels.

    """
    n, ks = _half_turns(t)
    m = 2 * n
    if m > cap:
        raise CyclotomicCapError(
            "subdivision {} needs {}-th roots of unity; cap is {}".format(t, m, cap)
        )
    lhs = _sine_product_terms(ks[0:3])
    rhs = _sine_product_terms(ks[3:6])
    return SignedExponentSum.create(lhs + [(-s, e) for s, e in rhs], m)


def ceva_holds_exact(t: CevaTuple, cap: int = DEFAULT_CAP) -> bool:
    """True iff sin u sin v sin w = sin x sin y sin z holds exactly for `t`."""
    s = ceva_sum(t, cap)
    return is_zero_sum_of_roots(s, get_context(s.m, cap))


class Prefilter(Enum):
    REJECTED_NONZERO = "rejected-nonzero"
    NEEDS_EXACT_CHECK = "needs-exact-check"


def ceva_difference(t: CevaTuple) -> float:
    "Double-precision |sin u sin v sin w - sin x sin y sin z|."
    s = [math.sin(math.radians(float(e))) for e in t.entries]
    return abs(s[0] * s[1] * s[2] - s[3] * s[4] * s[5])


def ceva_prefilter(t: CevaTuple, tol: float = DEFAULT_TOLERANCE) -> Prefilter:
    """Cheap floating-point rejection; never claims that the condition holds."""
    if ceva_difference(t) > tol:
        return Prefilter.REJECTED_NONZERO
    return Prefilter.NEEDS_EXACT_CHECK


def ceva_difference_mp(t: CevaTuple, dps: int = 50) -> mpmath.mpf:
    """|LHS - RHS| of the Ceva condition evaluated with `dps` decimal digits."""
    with mpmath.workdps(dps):
        sines = [
            mpmath.sin(mpmath.mpf(e.numerator) / e.denominator * mpmath.pi / 180)
            for e in t.entries
        ]
        return abs(sines[0] * sines[1] * sines[2] - sines[3] * sines[4] * sines[5])


# -- VECTORISED PREFILTER FOR Z-DEGREE TRIANGLES --------------------------------------


@functools.lru_cache(maxsize=None)
def sine_table() -> np.ndarray:
    """sin of 0, 1, ..., 180 degrees in double precision."""
    table = np.sin(np.deg2rad(np.arange(181, dtype=np.float64)))
    table.flags.writeable = False
    return table


def prefilter_grid(
    a: int, b: int, c: int, band: float = DEFAULT_GUARD_BAND
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Scan all integer (u, v, w) with x = a-u, y = b-v, z = c-w.

    Returns the arrays u, v, w of all candidates whose floating-point Ceva difference
    is at most `band`, in lexicographic order, together with those differences.

    """
    s = sine_table()
    u = np.arange(1, a)
    v = np.arange(1, b)
    w = np.arange(1, c)
    lhs = s[u][:, None, None] * s[v][None, :, None] * s[w][None, None, :]
    rhs = s[a - u][:, None, None] * s[b - v][None, :, None] * s[c - w][None, None, :]
    diff = np.abs(lhs - rhs)
    iu, iv, iw = np.nonzero(diff <= band)
    return u[iu], v[iv], w[iw], diff[iu, iv, iw]
