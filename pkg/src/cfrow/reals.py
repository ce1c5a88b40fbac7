"""Exact real inputs: rationals and real quadratic surds.

A surd (p + q*sqrt(d))/r supports field arithmetic, exact comparison and
exact floor, which is all the interval maps need.  Orbits of quadratic
irrationals stay inside one field Q(sqrt(d)), so every map iteration and
digit extraction below is exact.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .digits import DigitStream, LazyDigits, from_fraction
from .errors import OutOfDomain


def _square_free_split(d: int):
    """(s, d0) with d = s^2 d0 and d0 square-free up to trial-division
    bound (complete for any square factor below 10^5)."""
    s = 1
    f = 2
    while f * f <= min(d, 10**10):
        if f > 10**5:
            break
        ff = f * f
        while d % ff == 0:
            d //= ff
            s *= f
        f += 1 if f == 2 else 2
    return s, d


class Surd:
    """(p + q*sqrt(d)) / r with integers p, q, r (r > 0) and non-square d > 0."""

    __slots__ = ("p", "q", "r", "d")

    def __init__(self, p: int, q: int, r: int, d: int):
        if r == 0:
            raise ZeroDivisionError("surd with zero denominator")
        if d <= 0 or math.isqrt(d) ** 2 == d:
            raise ValueError(f"d={d} must be a positive non-square")
        if q:
            s, d = _square_free_split(d)
            q *= s
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(math.gcd(abs(p), abs(q)), r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        self.p, self.q, self.r, self.d = p, q, r, d

    @staticmethod
    def from_rational(v, d: int) -> "Surd":
        v = Fraction(v)
        return Surd(v.numerator, 0, v.denominator, d)

    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("irrational surd")
        return Fraction(self.p, self.r)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        pair = _common(self, other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return Surd(a.p * b.r + b.p * a.r, a.q * b.r + b.q * a.r, a.r * b.r, a.d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.p, -self.q, self.r, self.d)

    def __sub__(self, other):
        pair = _common(self, other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = _common(self, other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return Surd(a.p * b.p + a.q * b.q * a.d, a.p * b.q + a.q * b.p, a.r * b.r, a.d)

    __rmul__ = __mul__

    def inverse(self) -> "Surd":
        # r / (p + q sqrt(d)) = r (p - q sqrt(d)) / (p^2 - q^2 d)
        n = self.p * self.p - self.q * self.q * self.d
        if n == 0:
            raise ZeroDivisionError("inverse of zero surd")
        return Surd(self.r * self.p, -self.r * self.q, n, self.d)

    def __truediv__(self, other):
        pair = _common(self, other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- order -------------------------------------------------------------

    def sign(self) -> int:
        p, q = self.p, self.q  # r > 0
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return (q > 0) - (q < 0)
        if (p > 0) == (q > 0):
            return 1 if p > 0 else -1
        lhs, rhs = p * p, q * q * self.d
        if p > 0:  # q < 0: sign of p^2 - q^2 d
            return (lhs > rhs) - (lhs < rhs)
        return (rhs > lhs) - (rhs < lhs)

    def _cmp(self, other) -> int:
        pair = _common(self, other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return (a - b).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (Surd, int, Fraction)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.as_fraction())
        return hash((self.p, self.q, self.r, self.d))

    def floor(self) -> int:
        """Exact floor via integer square-root bounds (no floats)."""
        if self.q == 0:
            return self.p // self.r
        s = math.isqrt(self.q * self.q * self.d)  # s <= |q| sqrt(d) < s + 1
        num_lo = self.p + s if self.q > 0 else self.p - s - 1
        n = num_lo // self.r
        while self._cmp(n + 1) >= 0:
            n += 1
        while self._cmp(n) < 0:
            n -= 1
        return n

    def __float__(self):
        return (self.p + self.q * math.sqrt(self.d)) / self.r

    def __repr__(self):
        if self.q == 0:
            return f"{Fraction(self.p, self.r)}"
        return f"({self.p}+{self.q}*sqrt({self.d}))/{self.r}"


def _common(a: Surd, b):
    """Coerce operands into one quadratic field, or NotImplemented."""
    if isinstance(b, Surd):
        if a.d == b.d:
            return a, b
        if a.q == 0:
            return Surd(a.p, 0, a.r, b.d), b
        if b.q == 0:
            return a, Surd(b.p, 0, b.r, a.d)
        raise ValueError(f"mixed surd fields sqrt({a.d}) and sqrt({b.d})")
    if isinstance(b, (int, Fraction)):
        return a, Surd.from_rational(b, a.d)
    return NotImplemented


#: Exact real input: Fraction or Surd.
RealRep = object


def as_real(v) -> RealRep:
    if isinstance(v, Surd):
        return v.as_fraction() if v.is_rational() else v
    return Fraction(v)


def floor_of(x: RealRep) -> int:
    if isinstance(x, Surd):
        return x.floor()
    return math.floor(Fraction(x))


def is_rational(x: RealRep) -> bool:
    return not isinstance(x, Surd) or x.is_rational()


def golden_fraction() -> Surd:
    """g = (sqrt(5) - 1)/2, the fractional part of the golden ratio."""
    return Surd(-1, 1, 2, 5)


def rcf_digits(x: RealRep) -> DigitStream:
    """Canonical partial-quotient stream of x in [0, 1].

    Rational inputs terminate (INF padding); irrational quadratic inputs
    yield the eventually periodic expansion lazily and exactly.  The
    rational tie-break keeps the shorter form, e.g. 1/2 -> [0; 2].
    """
    if is_rational(x):
        xf = x.as_fraction() if isinstance(x, Surd) else Fraction(x)
        if not 0 <= xf <= 1:
            raise OutOfDomain(f"{xf} outside [0, 1]")
        return from_fraction(xf)
    if x < 0 or x > 1:
        raise OutOfDomain(f"{x} outside [0, 1]")

    def gen(cur: Surd):
        while True:
            y = cur.inverse()
            a = y.floor()
            yield a
            cur = y - a

    return LazyDigits(gen(x))


def fractional_part(x: RealRep) -> RealRep:
    return as_real(x - floor_of(x))


_SQRT_RE = re.compile(
    r"^\(?"
    r"(?:(?P<p>[+-]?\d+)(?=[+-]))?"
    r"(?P<sign>[+-])?(?:(?P<q>\d+)\*)?"
    r"sqrt\((?P<d>\d+)\)"
    r"(?P<tail>[+-]\d+)?"
    r"\)?(?:/(?P<r>\d+))?$"
)


def parse_real(text: str) -> RealRep:
    """Parse CLI-facing real syntax into an exact value.

    Accepted forms: "p/q", plain integers, "[0;a1,a2,...]", "sqrt(d)",
    "sqrt(d)-k", "(p+q*sqrt(d))/r", and the named constant "g" (alias
    "phi-frac") for (sqrt(5)-1)/2.
    """
    t = text.strip().replace(" ", "")
    if t in ("g", "phi-frac", "golden"):
        return golden_fraction()
    if t.startswith("[") and t.endswith("]"):
        body = t[1:-1]
        head, _, rest = body.partition(";")
        a0 = int(head)
        digits = [int(s) for s in rest.split(",") if s] if rest else []
        val = Fraction(0)
        for a in reversed(digits):
            val = Fraction(1, a + val)
        return a0 + val
    if "sqrt" in t:
        m = _SQRT_RE.match(t)
        if not m:
            raise OutOfDomain(f"cannot parse real {text!r}")
        d = int(m.group("d"))
        q = int(m.group("q") or 1)
        if m.group("sign") == "-":
            q = -q
        p = int(m.group("p") or 0)
        if m.group("tail"):
            p += int(m.group("tail"))
        r = int(m.group("r") or 1)
        return Surd(p, q, r, d)
    if "/" in t:
        num, den = t.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(t))
