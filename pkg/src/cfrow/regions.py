"""Catalog of named regions.

Three families:

* digit cells: the horizontal strips H_b (top strip b = 1 selects
  convergent denominators q_n), vertical strips V_a, and rectangles
  V_{a-lam} n H_{lam+1};

* complements of singularisation areas, pulled back into the top strip
  through the fast-map isomorphism: a finite union of rational
  rectangles S inside the right half (x >= 1/2) with S disjoint from
  its fast-map image determines the region whose induced expansions
  skip exactly the orbit visits to S;

* the one-parameter regions realising the maps x |-> 1/|x| - floor(1/|x|+1-alpha):
  a point of the top strip belongs iff the number of backward top-strip
  steps needed to see an x-coordinate below alpha is odd, and for
  alpha <= 1/2 the part of that set with x >= alpha is additionally
  slid down-right through its full cell range.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .digits import Cons, DigitStream, from_digits
from .errors import (
    BackwardCapExceeded,
    InvalidSingularisationArea,
    OutOfDomain,
)
from .exact import INF
from .induced import CellRegion, OmegaRegion, RectRegion, Region
from .natural_ext import OmegaPoint
from .reals import RealRep, is_rational, rcf_digits


def region_omega() -> Region:
    return OmegaRegion()


def region_h1() -> Region:
    return CellRegion([(None, 1)], name="h1", altered=True)


def region_h(b: int) -> Region:
    if b < 1:
        raise ValueError("strip index must be >= 1")
    return CellRegion([(None, b)], name=f"h{b}", altered=(b == 1))


def region_v(a: int) -> Region:
    if a < 1:
        raise ValueError("strip index must be >= 1")
    return CellRegion([(a, None)], name=f"v{a}")


def region_cell(a: int, lam: int) -> Region:
    """V_{a-lam} n H_{lam+1}: index-a visits at slide offset lam."""
    if a < 1 or lam < 0 or lam >= a:
        raise ValueError("need a >= 1 and 0 <= lam < a")
    return CellRegion([(a - lam, lam + 1)], name=f"cell{a},{lam}", altered=(lam == 0 and a == 1))


# -- singularisation-area regions -----------------------------------------


class SingularisationArea:
    """Finite union of closed rational rectangles S with S in the right
    half strip and S disjoint from its fast-map image (checked exactly:
    the image of a rectangle under (x, y) |-> (1/x - 1, 1/(1+y)) is a
    rectangle with rational corners)."""

    def __init__(self, rects):
        self.rects = [
            (Fraction(x0), Fraction(x1), Fraction(y0), Fraction(y1))
            for (x0, x1, y0, y1) in rects
        ]
        for x0, x1, y0, y1 in self.rects:
            if x0 > x1 or y0 > y1:
                raise InvalidSingularisationArea("a", "degenerate rectangle")
            if x0 < Fraction(1, 2) or x1 > 1 or y0 < 0 or y1 > 1:
                raise InvalidSingularisationArea(
                    "a", f"rectangle [{x0},{x1}]x[{y0},{y1}] not within the right half"
                )
        # component rectangles must not overlap each other
        for i, (x0, x1, y0, y1) in enumerate(self.rects):
            for u0, u1, v0, v1 in self.rects[i + 1 :]:
                if max(x0, u0) < min(x1, u1) and max(y0, v0) < min(y1, v1):
                    raise InvalidSingularisationArea("a", "overlapping rectangles")
        # condition (b): S and its image have disjoint interiors
        for x0, x1, y0, y1 in self.rects:
            if x0 == x1 or y0 == y1:
                continue
            ix0, ix1 = 1 / x1 - 1, 1 / x0 - 1
            iy0, iy1 = Fraction(1, 1 + y1), Fraction(1, 1 + y0)
            for u0, u1, v0, v1 in self.rects:
                if max(ix0, u0) < min(ix1, u1) and max(iy0, v0) < min(iy1, v1):
                    raise InvalidSingularisationArea(
                        "b", "area overlaps its own image"
                    )

    def contains_value(self, x, y) -> bool:
        """Exact membership of a point with exact rational/quadratic coords."""
        for x0, x1, y0, y1 in self.rects:
            if x0 <= x <= x1 and y0 <= y <= y1:
                return True
        return False

    def gauss_image_rects(self):
        out = []
        for x0, x1, y0, y1 in self.rects:
            out.append((1 / x1 - 1, 1 / x0 - 1, Fraction(1, 1 + y1), Fraction(1, 1 + y0)))
        return out


class SExpansionRegion(Region):
    """Top-strip region whose induced expansions realise the
    singularisation of regular expansions over the area S.

    Membership of a top-strip point z: pull z back through one fast-map
    preimage of the strip isomorphism, i.e. test the point
    ([0;b2,a1,a2,...],[0;b3,b4,...]) against S, where (a_i) and (b_i)
    are z's digit streams.  Equivalently z is excluded iff that point
    lands in S.
    """

    unit_s = True
    altered = True

    def __init__(self, area: SingularisationArea, name="s-expansion", budget=400):
        self.area = area
        self.name = name
        self.budget = budget
        self.excluded = RectRegion(area.rects, name=name + "-S", budget=budget) if area.rects else None

    def contains(self, z: OmegaPoint) -> bool:
        if z.yd.head() != 1:
            return False
        if self.excluded is None:
            return True
        b2 = z.yd.tail().head()
        if b2 is INF:
            # pulled-back x-coordinate is 0, never inside the right half
            return True
        pulled = OmegaPoint.from_streams(Cons(b2, z.xd), z.yd.tail().tail())
        return not self.excluded.contains(pulled)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "altered": True,
            "area": [[str(v) for v in r] for r in self.area.rects],
        }


def build_s_expansion_region(area) -> Region:
    if not isinstance(area, SingularisationArea):
        area = SingularisationArea(area)
    return SExpansionRegion(area)


# -- alpha regions ----------------------------------------------------------


def _cf_list(x: Fraction):
    """Canonical partial quotients of a rational in [0, 1], as ints."""
    digits = []
    p, q = x.numerator, x.denominator
    while p:
        a, r = divmod(q, p)
        digits.append(a)
        p, q = r, p
    return digits


def _lt_alpha_lists(bs, j, xd, alist) -> bool:
    """Is [0; bs[j-1], ..., bs[0], xd...] < [0; alist...]?

    Alternating lexicographic order on canonical digit sequences; None
    plays the infinite digit.  Both sequences here terminate or differ
    within the rational one's length, so the loop always decides.
    """
    i = 0
    while True:
        if i < j:
            da = bs[j - 1 - i]
        elif i - j < len(xd):
            da = xd[i - j]
        else:
            da = None
        db = alist[i] if i < len(alist) else None
        if da == db:
            if da is None:
                return False  # equal values
            i += 1
            continue
        da_big = db is not None and (da is None or da > db)
        # 0-based even position = odd partial quotient: bigger digit, smaller value
        return da_big if i % 2 == 0 else not da_big


class AlphaRegion(Region):
    """Region inducing the map x |-> 1/|x| - floor(1/|x| + 1 - alpha).

    For a top-strip point with streams x = [0;a1,a2,...] and
    y = [0;1,b2,b3,...], the j-th backward top-strip preimage has
    x-coordinate [0;b_{j+1},...,b2,a1,a2,...]; membership asks for the
    parity of the least j making that value < alpha.  Points below the
    top strip belong iff sliding them back up-left lands in the part of
    the member set with x >= alpha (only possible when alpha <= 1/2).
    """

    unit_s = True
    altered = True

    def __init__(self, alpha: RealRep, back_cap: int = 2000, name=None):
        if not (0 < alpha <= 1):
            raise OutOfDomain(f"alpha = {alpha} outside (0, 1]")
        self.alpha = alpha
        self.alpha_digits = rcf_digits(alpha) if alpha != 1 else from_digits([1])
        if is_rational(alpha):
            av = alpha.as_fraction() if hasattr(alpha, "as_fraction") else Fraction(alpha)
            self.alpha_list = _cf_list(av)
        else:
            self.alpha_list = self.alpha_digits.prefix(300)
        self.back_cap = back_cap
        self.name = name or f"alpha:{alpha}"
        self.half = Fraction(1, 2)

    def _x_lt_alpha(self, bs, j, xd: DigitStream) -> bool:
        """Is the j-th pulled-back x-coordinate below alpha?

        Its digits are bs[j-1], ..., bs[0] followed by xd; both sides are
        canonical, so the alternating lexicographic walk is exact.
        """
        alist = self.alpha_list
        i = 0
        s = xd
        while True:
            if i < j:
                da = bs[j - 1 - i]
            else:
                da = s.head()
                if da is INF:
                    da = None
                else:
                    s = s.tail()
            db = alist[i] if i < len(alist) else None
            if da == db:
                if da is None:
                    return False
                i += 1
                if i > self.back_cap:
                    raise BackwardCapExceeded(
                        f"{self.name}: comparison against alpha undecided"
                    )
                continue
            da_big = db is not None and (da is None or da > db)
            return da_big if i % 2 == 0 else not da_big

    def _k_parity_odd(self, z: OmegaPoint) -> bool:
        """Parity of the least backward depth whose x-coordinate is < alpha."""
        ys = z.yd.tail()
        bs = []
        for j in range(1, self.back_cap + 1):
            b = ys.head()
            bs.append(b)
            if b is INF:
                # preimage x-coordinate is 0 < alpha
                return j % 2 == 1
            ys = ys.tail()
            if self._x_lt_alpha(bs, j, z.xd):
                return j % 2 == 1
        raise BackwardCapExceeded(
            f"parity search for {self.name} exceeded {self.back_cap} backward steps"
        )

    def contains(self, z: OmegaPoint) -> bool:
        b1 = z.yd.head()
        a1 = z.xd.head()
        if b1 == 1:
            return self._k_parity_odd(z)
        if b1 is INF or a1 is INF:
            return False
        if self.alpha > self.half:
            return False
        # slide the point back up-left to the top strip
        lam = b1 - 1
        w = OmegaPoint.from_streams(Cons(a1 + lam, z.xd.tail()), Cons(1, z.yd.tail()))
        # source cell must sit at or right of alpha
        if self._x_lt_alpha([], 0, w.xd):
            return False
        return self._k_parity_odd(w)

    # fast membership for exact rational points (Monte Carlo path);
    # same digit logic as contains(), specialised to int lists
    def contains_rational(self, x: Fraction, y: Fraction) -> bool:
        if x <= 0 or y <= 0:
            return False
        xd = _cf_list(x)
        yd = _cf_list(y)
        b1 = yd[0] if yd else None
        if b1 == 1:
            return self._k_parity_lists(yd[1:], xd)
        if b1 is None or not xd:
            return False
        if self.alpha > self.half:
            return False
        lam = b1 - 1
        wxd = [xd[0] + lam] + xd[1:]
        if _lt_alpha_lists([], 0, wxd, self.alpha_list):
            return False
        return self._k_parity_lists(yd[1:], wxd)

    def _k_parity_lists(self, bs, xd) -> bool:
        for j in range(1, len(bs) + 2):
            if j - 1 >= len(bs):
                return j % 2 == 1  # preimage hit the left edge: 0 < alpha
            if _lt_alpha_lists(bs, j, xd, self.alpha_list):
                return j % 2 == 1
        raise BackwardCapExceeded("unreachable for terminating digit lists")

    def describe(self) -> dict:
        return {"name": self.name, "altered": True, "alpha": str(self.alpha)}


def build_alpha_region(alpha: RealRep, back_cap: int = 2000) -> Region:
    return AlphaRegion(alpha, back_cap=back_cap)


# -- region spec parsing -----------------------------------------------------


def _parse_frac(s):
    from .reals import parse_real

    return parse_real(str(s))


def region_from_spec(spec) -> Region:
    """Region from the JSON spec or its shorthand string form.

    Shorthands: "omega", "h1", "h:2", "v:3", "cell:3,1", "alpha:1/2",
    or inline JSON like {"builder": "alpha", "params": {"alpha": "1/4"}}.
    """
    if isinstance(spec, Region):
        return spec
    if isinstance(spec, str):
        s = spec.strip()
        if s.startswith("{"):
            return region_from_spec(json.loads(s))
        if s == "omega":
            return region_omega()
        if s == "h1":
            return region_h1()
        if s.startswith("h:"):
            return region_h(int(s[2:]))
        if s.startswith("v:"):
            return region_v(int(s[2:]))
        if s.startswith("cell:"):
            a, lam = s[5:].split(",")
            return region_cell(int(a), int(lam))
        if s.startswith("alpha:"):
            return build_alpha_region(_parse_frac(s[6:]))
        raise ValueError(f"unknown region spec {spec!r}")
    obj = dict(spec)
    builder = obj.get("builder")
    params = obj.get("params", {})
    if builder == "h1":
        return region_h1()
    if builder == "h":
        return region_h(int(params["b"]))
    if builder == "v":
        return region_v(int(params["a"]))
    if builder == "cell":
        return region_cell(int(params["a"]), int(params["lam"]))
    if builder == "alpha":
        return build_alpha_region(_parse_frac(params["alpha"]))
    if builder == "s_expansion":
        rects = [
            (_parse_frac(r["x"][0]), _parse_frac(r["x"][1]), _parse_frac(r["y"][0]), _parse_frac(r["y"][1]))
            for r in params["rects"]
        ]
        return build_s_expansion_region(rects)
    if builder == "omega":
        return region_omega()
    if "cells" in obj and obj["cells"]:
        cells = [(c.get("a"), c.get("b")) for c in obj["cells"]]
        return CellRegion(cells, name="cells", altered=bool(obj.get("altered", False)))
    if "rects" in obj and obj["rects"]:
        rects = [
            (_parse_frac(r["x"][0]), _parse_frac(r["x"][1]), _parse_frac(r["y"][0]), _parse_frac(r["y"][1]))
            for r in obj["rects"]
        ]
        return RectRegion(rects)
    raise ValueError(f"unintelligible region spec: {spec!r}")
