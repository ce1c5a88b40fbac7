"""Planar natural extensions on the unit square.

Points carry the partial-quotient streams of both coordinates; the maps
act symbolically on digits (one O(1) edit per coordinate per step),
with optional exact coordinate values carried along for enclosure-free
arithmetic on quadratic inputs.

Slow map (first coordinate is the tent map):

    a1 > 1:  ([0;a1,a2,...], [0;b1,...])  ->  ([0;a1-1,a2,...], [0;1+b1,b2,...])
    a1 = 1:  ([0;1,a2,...],  [0;b1,...])  ->  ([0;a2,...],      [0;1,b1,b2,...])

Its invariant density is 1/(x + y - xy)^2 (infinite mass at the origin).
The fast (two-sided shift) map moves one whole partial quotient:
([0;a1,a2,...],[0;b1,...]) -> ([0;a2,...],[0;a1,b1,...]) with invariant
probability density 1/(log2 (1+xy)^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .digits import Cons, DigitStream
from .errors import OutOfDomain
from .exact import INF, RationalInterval
from .reals import RealRep, as_real, is_rational, rcf_digits


def _exact_fraction(v):
    """Fraction value of v when it is exactly rational, else None."""
    if v is None:
        return None
    if isinstance(v, Fraction):
        return v
    if is_rational(v):
        return v.as_fraction()
    return None


@dataclass(frozen=True)
class CellIndex:
    """z lies in V_a (x-strip) and H_b (y-strip); indices may be INF on
    the coordinate axes."""

    a: object
    b: object


class OmegaPoint:
    """A point of the square as a pair of digit streams.

    `x_val`/`y_val` are optional exact coordinate values (Fraction or
    Surd) kept in sync by the symbolic maps; enclosures fall back to the
    streams when absent.  The y-stream is whatever the symbolic dynamics
    produced and is deliberately NOT re-canonicalised: a trailing
    [...,1, inf] tail encodes a boundary point of the cell the orbit
    logic needs it to be in.
    """

    __slots__ = ("xd", "yd", "x_val", "y_val")

    def __init__(self, xd: DigitStream, yd: DigitStream, x_val=None, y_val=None):
        self.xd = xd
        self.yd = yd
        self.x_val = x_val
        self.y_val = y_val

    @staticmethod
    def from_values(x: RealRep, y: RealRep) -> "OmegaPoint":
        return OmegaPoint(rcf_digits(x), rcf_digits(as_real(y)), x, as_real(y))

    @staticmethod
    def from_streams(xd, yd) -> "OmegaPoint":
        return OmegaPoint(xd, yd)

    def cell(self) -> CellIndex:
        return CellIndex(self.xd.head(), self.yd.head())

    def x_enclosure(self, depth: int = 40) -> RationalInterval:
        v = _exact_fraction(self.x_val)
        return RationalInterval.point(v) if v is not None else self.xd.enclosure(depth)

    def y_enclosure(self, depth: int = 40) -> RationalInterval:
        v = _exact_fraction(self.y_val)
        return RationalInterval.point(v) if v is not None else self.yd.enclosure(depth)

    def __repr__(self):
        return f"OmegaPoint(x~{self.xd.prefix(4)}, y~{self.yd.prefix(4)})"


def ito_step(z: OmegaPoint) -> OmegaPoint:
    """One step of the slow planar map, symbolically."""
    a1 = z.xd.head()
    if a1 is INF:
        # x = 0 line: x fixed, y |-> y/(1+y), i.e. leading y-digit bumps
        yd = Cons(z.yd.head() + 1, z.yd.tail())
        y_val = None if z.y_val is None else as_real(z.y_val / (1 + z.y_val))
        return OmegaPoint(z.xd, yd, z.x_val, y_val)
    if a1 > 1:
        xd = Cons(a1 - 1, z.xd.tail())
        yd = Cons(z.yd.head() + 1, z.yd.tail())
        x_val = None if z.x_val is None else as_real(z.x_val / (1 - z.x_val))
        y_val = None if z.y_val is None else as_real(z.y_val / (1 + z.y_val))
        return OmegaPoint(xd, yd, x_val, y_val)
    xd = z.xd.tail()
    yd = Cons(1, z.yd)
    x_val = None if z.x_val is None else as_real((1 - z.x_val) / z.x_val)
    y_val = None if z.y_val is None else as_real(1 / (1 + z.y_val))
    return OmegaPoint(xd, yd, x_val, y_val)


def ito_backstep(z: OmegaPoint) -> OmegaPoint:
    """The inverse step; total on the symbolic representation."""
    b1 = z.yd.head()
    if b1 == 1:
        xd = Cons(1, z.xd)
        yd = z.yd.tail()
        x_val = None if z.x_val is None else as_real(1 / (1 + z.x_val))
        y_val = None if z.y_val is None else as_real(1 / z.y_val - 1)
        return OmegaPoint(xd, yd, x_val, y_val)
    if b1 is INF:
        # y = 0 line: x |-> x/(1+x) keeps y at 0
        a1 = z.xd.head()
        xd = Cons(a1 + 1, z.xd.tail()) if a1 is not INF else z.xd
        x_val = None if z.x_val is None else as_real(z.x_val / (1 + z.x_val))
        return OmegaPoint(xd, z.yd, x_val, z.y_val)
    xd = Cons(z.xd.head() + 1, z.xd.tail()) if z.xd.head() is not INF else z.xd
    yd = Cons(b1 - 1, z.yd.tail())
    x_val = None if z.x_val is None else as_real(z.x_val / (1 + z.x_val))
    y_val = None if z.y_val is None else as_real(z.y_val / (1 - z.y_val))
    return OmegaPoint(xd, yd, x_val, y_val)


def epsilon_of(z: OmegaPoint) -> int:
    """Branch digit the next slow step will use (1 iff x > 1/2)."""
    return 1 if z.xd.head() == 1 else 0


def ito_orbit(z: OmegaPoint, n: int):
    """[(z_0, cell_0), ..., (z_n, cell_n)] under the slow map."""
    out = [(z, z.cell())]
    cur = z
    for _ in range(n):
        cur = ito_step(cur)
        out.append((cur, cur.cell()))
    return out


def gauss_ne_step(w: OmegaPoint) -> OmegaPoint:
    """One step of the fast two-sided shift."""
    a1 = w.xd.head()
    if a1 is INF:
        return w
    xd = w.xd.tail()
    yd = Cons(a1, w.yd)
    x_val = None
    y_val = None
    if w.x_val is not None:
        x_val = as_real(1 / w.x_val - a1)
    if w.y_val is not None:
        y_val = as_real(1 / (a1 + w.y_val))
    return OmegaPoint(xd, yd, x_val, y_val)


def gauss_ne_orbit(w: OmegaPoint, n: int):
    out = [w]
    for _ in range(n):
        out.append(gauss_ne_step(out[-1]))
    return out


def mu_bar_density(x, y):
    """Invariant density of the slow planar map, exact on rationals."""
    x, y = Fraction(x), Fraction(y)
    d = x + y - x * y
    if d == 0:
        raise OutOfDomain("density singular at the origin")
    return 1 / d**2


def nu_g_density(x, y) -> float:
    """Invariant probability density of the fast map."""
    return 1.0 / (math.log(2) * float((1 + Fraction(x) * Fraction(y)) ** 2))


def orbit_csv_rows(z: OmegaPoint, n: int, depth: int = 40):
    """Rows (k, x_lo, x_hi, y_lo, y_hi, cell_a, cell_b) for k = 0..n-1."""
    rows = []
    cur = z
    for k in range(n):
        xe, ye = cur.x_enclosure(depth), cur.y_enclosure(depth)
        c = cur.cell()
        rows.append(
            (
                k,
                float(xe.lo),
                float(xe.hi),
                float(ye.lo),
                float(ye.hi),
                "inf" if c.a is INF else c.a,
                "inf" if c.b is INF else c.b,
            )
        )
        cur = ito_step(cur)
    return rows
