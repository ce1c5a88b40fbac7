"""Exact arithmetic core: rationals extended by a point at infinity,
2x2 integer matrices acting as Moebius transformations, and rational
interval enclosures.

Everything here is exact; no floating point enters any code path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ZeroDeterminant


class _Infinity:
    """The single point at infinity of the extended rationals.

    Also reused as the "infinite partial denominator / digit" sentinel:
    it compares greater than every rational and absorbs shifts by
    integers (INF + 1 == INF - 1 == INF), which is exactly the
    arithmetic the digit conventions need.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    # Order: greater than everything finite.
    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("cfrow-inf")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self

    def __neg__(self):
        raise ValueError("negative infinity is not a value here")


INF = _Infinity()

#: An extended rational is either a Fraction or INF.
ExtRational = object


def is_inf(v) -> bool:
    return v is INF


def ext(v) -> ExtRational:
    """Coerce an int/Fraction/INF into the extended-rational value space."""
    if v is INF:
        return INF
    return Fraction(v)


@dataclass(frozen=True)
class Mat2Z:
    """A 2x2 matrix with exact integer (or rational) entries.

    Used as a Moebius transformation; construction does not require a
    nonzero determinant, but `mobius` does.
    """

    a: object
    b: object
    c: object
    d: object

    def det(self):
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "Mat2Z") -> "Mat2Z":
        return Mat2Z(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __mul__(self, other):
        if isinstance(other, Mat2Z):
            return self @ other
        return Mat2Z(self.a * other, self.b * other, self.c * other, self.d * other)

    __rmul__ = __mul__

    def transpose(self) -> "Mat2Z":
        return Mat2Z(self.a, self.c, self.b, self.d)

    def adjugate(self) -> "Mat2Z":
        """Unscaled inverse: M @ M.adjugate() == det(M) * I.

        As a Moebius action the adjugate IS the inverse, since scalar
        multiples act identically.
        """
        return Mat2Z(self.d, -self.b, -self.c, self.a)

    def mobius(self, z: ExtRational) -> ExtRational:
        return mobius_apply(self, z)

    def column(self, j: int):
        if j == 0:
            return (self.a, self.c)
        return (self.b, self.d)

    def __repr__(self):
        return f"Mat2Z({self.a}, {self.b}, {self.c}, {self.d})"


IDENTITY = Mat2Z(1, 0, 0, 1)


def mobius_apply(m: Mat2Z, z: ExtRational) -> ExtRational:
    """Evaluate (az+b)/(cz+d) with the conventions c/0 = inf, c/inf = 0."""
    if m.det() == 0:
        raise ZeroDeterminant(f"{m} is singular")
    if z is INF:
        if m.c == 0:
            return INF
        return Fraction(m.a, m.c)
    z = Fraction(z)
    den = m.c * z + m.d
    num = m.a * z + m.b
    if den == 0:
        return INF
    return Fraction(num, den)


def mat_product(ms) -> Mat2Z:
    """Left-to-right product of a nonempty sequence of matrices."""
    ms = list(ms)
    if not ms:
        raise ValueError("empty matrix product")
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(v) -> "RationalInterval":
        v = Fraction(v)
        return RationalInterval(v, v)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, v) -> bool:
        return self.lo <= v <= self.hi

    def strictly_below(self, v) -> bool:
        return self.hi < v

    def strictly_above(self, v) -> bool:
        return self.lo > v

    def intersects(self, other: "RationalInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def refine_to(self, other: "RationalInterval") -> "RationalInterval":
        """Replace by a sub-interval; refinement must only shrink."""
        if other.lo < self.lo or other.hi > self.hi:
            raise ValueError("refinement must shrink the interval")
        return other

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"
