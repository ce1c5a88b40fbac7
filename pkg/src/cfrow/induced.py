"""Induced transformations of the slow planar map over subregions.

A Region answers membership for symbolic points: unions of digit cells
answer exactly from leading digits, oracle regions answer through
enclosure refinement with a budget (three-valued internally; an
unresolved boundary raises).  The induced engine walks the slow map,
accumulates the branch-matrix product A_R between visits, and exposes
hitting times, induced steps, accumulated products and the three
integer digit maps built from consecutive matrices.

The boundary fix for orbits launched on the top edge is structural
here: points evolve symbolically, and the non-canonical tails the
symbolic map produces make digit-based membership agree with the
"adjusted" induced system on closures of the cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BackwardCapExceeded, BoundaryUndecidable, CapExceeded
from .exact import INF, IDENTITY, Mat2Z
from .natural_ext import OmegaPoint, epsilon_of, ito_backstep, ito_step
from .farey_maps import A0, A1


class Region:
    """Membership oracle over the unit square."""

    altered: bool = False      # uses the top-edge-adjusted induced map
    is_omega: bool = False
    unit_s: bool = False       # guarantees s_R(z) = 1 for z in R
    meets_y_zero: bool = False  # region intersects the y = 0 line
    name: str = "region"

    def contains(self, z: OmegaPoint) -> bool:
        raise NotImplementedError

    def describe(self) -> dict:
        return {"name": self.name, "altered": self.altered}


@dataclass(frozen=True)
class InducedRecord:
    """One induced step: return/hitting time N, the branch product
    A_R = A_eps1 ... A_epsN with entries ((u, t), (s, r)), and the
    landing point."""

    N: int
    A: Mat2Z
    z_next: OmegaPoint

    def __post_init__(self):
        u, s = self.A.a, self.A.c
        if not (s >= 1 and 0 <= u <= s):
            raise AssertionError(f"matrix entry bounds violated: u={u}, s={s}")

    @property
    def u(self):
        return self.A.a

    @property
    def t(self):
        return self.A.b

    @property
    def s(self):
        return self.A.c

    @property
    def r(self):
        return self.A.d


def hitting_time(region: Region, z: OmegaPoint, cap: int) -> int:
    """Least n >= 1 with the n-th image in the region."""
    return induced_step(region, z, cap).N


def induced_step(region: Region, z: OmegaPoint, cap: int) -> InducedRecord:
    """Advance to the next visit of the region, accumulating A_R.

    Works for z inside the region (return-time semantics) and outside
    it (hitting semantics) alike.
    """
    cur = z
    mat = IDENTITY
    for n in range(1, cap + 1):
        eps = epsilon_of(cur)
        mat = mat @ (A1 if eps else A0)
        cur = ito_step(cur)
        if region.contains(cur):
            return InducedRecord(n, mat, cur)
    raise CapExceeded(f"orbit did not enter {region.name} within {cap} steps")


def induced_records(region: Region, z: OmegaPoint, n: int, cap: int):
    """Records of the first n induced steps from z."""
    out = []
    cur = z
    for _ in range(n):
        rec = induced_step(region, cur, cap)
        out.append(rec)
        cur = rec.z_next
    return out


def induced_products(region: Region, z: OmegaPoint, n: int, cap: int):
    """[(N_k, A^R_[0,k])] for k = 0..n: cumulative times and products."""
    out = [(0, IDENTITY)]
    cur = z
    total = 0
    acc = IDENTITY
    for _ in range(n):
        rec = induced_step(region, cur, cap)
        total += rec.N
        acc = acc @ rec.A
        out.append((total, acc))
        cur = rec.z_next
    return out


def backward_induced_step(region: Region, z: OmegaPoint, cap: int):
    """Preimage under the induced map: (record, z_prev), or None when the
    backward orbit certifiably never visits the region (it is stuck on
    the y = 0 line and the region avoids it)."""
    cur = z
    mats = []
    for _ in range(cap):
        if cur.yd.head() is INF and not region.meets_y_zero:
            return None
        eps_into = 1 if cur.yd.head() == 1 else 0
        prev = ito_backstep(cur)
        mats.append(A1 if eps_into else A0)
        cur = prev
        if region.contains(cur):
            mat = IDENTITY
            for m in reversed(mats):
                mat = mat @ m
            return InducedRecord(len(mats), mat, z), cur
    raise BackwardCapExceeded(
        f"no backward visit of {region.name} within {cap} steps"
    )


def d_map(region: Region, z: OmegaPoint, cap: int) -> int:
    """s-entry of the matrix at the induced preimage; 1 when the
    preimage is unreachable (provably absent or beyond cap — the two
    cases are reported identically, by design)."""
    try:
        back = backward_induced_step(region, z, cap)
    except BackwardCapExceeded:
        return 1
    if back is None:
        return 1
    rec, _ = back
    return rec.s


def digit_maps(region: Region, z: OmegaPoint, cap: int):
    """(d_R, alpha_R, beta_R) at z.

    alpha_R(z) = -det(A_R(z)) d_R(z) s_R(next),
    beta_R(z)  =  s_R(z) u_R(next) + r_R(z) s_R(next),
    where `next` is the record one induced step past z's own.
    """
    rec0 = induced_step(region, z, cap)
    rec1 = induced_step(region, rec0.z_next, cap)
    d = d_map(region, z, cap)
    alpha = -rec0.A.det() * d * rec1.s
    beta = rec0.s * rec1.u + rec0.r * rec1.s
    return d, alpha, beta


class OmegaRegion(Region):
    is_omega = True
    meets_y_zero = True
    unit_s = True
    name = "omega"

    def contains(self, z: OmegaPoint) -> bool:
        return True


class CellRegion(Region):
    """Finite union of digit cells; conditions read the leading digits.

    Each member of `cells` is a pair (a, b) with None meaning
    unconstrained, so (None, 1) is the top strip and (2, None) a
    vertical strip.
    """

    def __init__(self, cells, name="cells", altered=False):
        self.cells = [tuple(c) for c in cells]
        self.name = name
        self.altered = altered
        self.unit_s = self.cells == [(None, 1)]

    def contains(self, z: OmegaPoint) -> bool:
        a, b = z.xd.head(), z.yd.head()
        if a is INF or b is INF:
            return False
        for ca, cb in self.cells:
            if (ca is None or ca == a) and (cb is None or cb == b):
                return True
        return False

    def describe(self) -> dict:
        return {"name": self.name, "altered": self.altered, "cells": self.cells}


class RectRegion(Region):
    """Finite union of closed rational rectangles, decided from
    coordinate enclosures with a refinement budget (In/Out stay stable
    under refinement; exhausting the budget raises)."""

    def __init__(self, rects, name="rects", budget: int = 400):
        self.rects = [
            (Fraction(x0), Fraction(x1), Fraction(y0), Fraction(y1))
            for (x0, x1, y0, y1) in rects
        ]
        for x0, x1, y0, y1 in self.rects:
            if x0 > x1 or y0 > y1:
                raise ValueError("degenerate rectangle")
        self.name = name
        self.budget = budget
        self.meets_y_zero = any(y0 == 0 for _, _, y0, _ in self.rects)

    def contains(self, z: OmegaPoint) -> bool:
        undecided = False
        for rect in self.rects:
            v = _point_in_rect(z, rect, self.budget)
            if v is True:
                return True
            if v is None:
                undecided = True
        if undecided:
            raise BoundaryUndecidable(f"{self.name}: point on a rectangle boundary")
        return False

    def describe(self) -> dict:
        return {
            "name": self.name,
            "rects": [[str(v) for v in r] for r in self.rects],
        }


def _interval_vs_range(iv, lo, hi):
    """True/False/None: is a value known to lie in [lo, hi]?"""
    if iv.lo >= lo and iv.hi <= hi:
        return True
    if iv.hi < lo or iv.lo > hi:
        return False
    return None


def _point_in_rect(z: OmegaPoint, rect, budget: int):
    x0, x1, y0, y1 = rect
    for depth in (8, 24, 80, budget):
        xe, ye = z.x_enclosure(depth), z.y_enclosure(depth)
        vx = _interval_vs_range(xe, x0, x1)
        vy = _interval_vs_range(ye, y0, y1)
        if vx is False or vy is False:
            return False
        if vx is True and vy is True:
            return True
    return None
