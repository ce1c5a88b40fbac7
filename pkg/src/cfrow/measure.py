"""Measure and entropy of induced regions.

The slow-map invariant density 1/(x+y-xy)^2 integrates in closed form
over rectangles:

    m([x0,x1]x[y0,y1]) = log( (y0+(1-y0)x1)(y1+(1-y1)x0)
                              / ((y0+(1-y0)x0)(y1+(1-y1)x1)) ),

so cell regions get exact values (and a quadrature path for
cross-checking); oracle regions get seeded Monte Carlo under the
restriction of the measure to a covering union of horizontal strips.
Entropy is pi^2 / (6 m(R)) by definition; orbit growth statistics are a
separate observable used to cross-check it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonIntegrable
from .induced import CellRegion, OmegaRegion, RectRegion, Region, induced_products
from .natural_ext import OmegaPoint
from .regions import AlphaRegion, SExpansionRegion


def rect_mass_exact(x0, x1, y0, y1) -> float:
    """Slow-map measure of a rectangle, as log of an exact rational."""
    x0, x1, y0, y1 = Fraction(x0), Fraction(x1), Fraction(y0), Fraction(y1)
    if x0 == x1 or y0 == y1:
        return 0.0
    if x0 == 0 and y0 == 0:
        raise NonIntegrable("rectangle touches the origin")
    num = (y0 + (1 - y0) * x1) * (y1 + (1 - y1) * x0)
    den = (y0 + (1 - y0) * x0) * (y1 + (1 - y1) * x1)
    return math.log(num / den)


def rect_mass_ratio(x0, x1, y0, y1) -> Fraction:
    """exp(mass) as an exact rational, for identities checked exactly."""
    x0, x1, y0, y1 = Fraction(x0), Fraction(x1), Fraction(y0), Fraction(y1)
    num = (y0 + (1 - y0) * x1) * (y1 + (1 - y1) * x0)
    den = (y0 + (1 - y0) * x0) * (y1 + (1 - y1) * x1)
    return num / den


def gauss_rect_mass(x0, x1, y0, y1) -> float:
    """Fast-map invariant probability of a rectangle."""
    x0, x1, y0, y1 = Fraction(x0), Fraction(x1), Fraction(y0), Fraction(y1)
    num = (1 + x1 * y1) * (1 + x0 * y0)
    den = (1 + x1 * y0) * (1 + x0 * y1)
    return math.log(num / den) / math.log(2)


def _cell_rects(region) -> list:
    rects = []
    for a, b in region.cells:
        if a is None and b is None:
            raise NonIntegrable("whole square is not a proper region")
        x0, x1 = (Fraction(1, a + 1), Fraction(1, a)) if a else (Fraction(0), Fraction(1))
        y0, y1 = (Fraction(1, b + 1), Fraction(1, b)) if b else (Fraction(0), Fraction(1))
        rects.append((x0, x1, y0, y1))
    return rects


@dataclass(frozen=True)
class MeasureEstimate:
    value: float
    error_bound: float
    method: str
    seed: int | None = None
    samples: int | None = None

    def as_dict(self):
        out = {"value": self.value, "error_bound": self.error_bound, "method": self.method}
        if self.seed is not None:
            out["seed"] = self.seed
            out["samples"] = self.samples
        return out


def _region_rects(region: Region):
    if isinstance(region, CellRegion):
        return _cell_rects(region)
    if isinstance(region, RectRegion):
        return list(region.rects)
    if isinstance(region, SExpansionRegion):
        # top strip minus the pre-images of the excluded rectangles
        return None
    return None


def _quadrature(rects, tol: float) -> MeasureEstimate:
    from scipy import integrate

    total = 0.0
    err = 0.0
    for x0, x1, y0, y1 in rects:
        v, e = integrate.dblquad(
            lambda y, x: 1.0 / (x + y - x * y) ** 2,
            float(x0),
            float(x1),
            float(y0),
            float(y1),
            epsabs=tol / max(len(rects), 1),
        )
        total += v
        err += e
    return MeasureEstimate(total, max(err, tol), "quadrature")


def _sexp_pre_rects(region: SExpansionRegion):
    """Pulled-back exclusion rectangles inside the top strip."""
    out = []
    for u0, u1, v0, v1 in region.area.gauss_image_rects():
        # y with 1/y - 1 in [v0, v1]
        out.append((u0, u1, Fraction(1, 1 + v1), Fraction(1, 1 + v0)))
    return out


def measure_of(region: Region, tol: float = 1e-9, method: str = "auto",
               seed: int | None = None, samples: int = 200_000) -> MeasureEstimate:
    """Slow-map measure of a region.

    Cell and rectangle regions support "exact" and "quadrature";
    singularisation regions are exact (strip mass minus pulled-back
    rectangles); the one-parameter regions use seeded Monte Carlo.
    """
    if isinstance(region, OmegaRegion):
        raise NonIntegrable("the full square has infinite mass")
    if isinstance(region, SExpansionRegion):
        total = rect_mass_exact(0, 1, Fraction(1, 2), 1)
        for r in _sexp_pre_rects(region):
            total -= rect_mass_exact(*r)
        return MeasureEstimate(total, 1e-15, "exact-integral")
    rects = _region_rects(region)
    if rects is not None:
        for x0, x1, y0, y1 in rects:
            if x0 == 0 and y0 == 0:
                raise NonIntegrable("region touches the origin")
        if not rects or all(x0 == x1 or y0 == y1 for x0, x1, y0, y1 in rects):
            raise NonIntegrable("region has zero area: not inducible")
        if method in ("auto", "exact", "exact-integral"):
            val = sum(rect_mass_exact(*r) for r in rects)
            return MeasureEstimate(val, 1e-15, "exact-integral")
        if method == "monte-carlo":
            return _rects_measure_mc(rects, seed if seed is not None else 0, samples)
        return _quadrature(rects, tol)
    if isinstance(region, AlphaRegion):
        return _alpha_measure_mc(region, seed if seed is not None else 0, samples)
    raise NonIntegrable(f"no measure path for region {region.name}")


def _strip_union_mass(y_min: Fraction) -> float:
    return rect_mass_exact(0, 1, y_min, 1)


def _sample_strip(rng: random.Random, y_min: Fraction):
    """One sample from the invariant measure restricted to y > y_min,
    by inverse CDF in x then in y, snapped to exact rationals."""
    y0 = float(y_min)
    u = rng.random()
    # x-marginal: (1-y0)/(y0 + (1-y0)x); CDF ~ log((y0+(1-y0)x)/y0)
    x = y0 * ((1.0 / y0) ** u - 1.0) / (1.0 - y0)
    v = rng.random()
    # conditional CDF on [y0, 1]: (1/(x+y0(1-x)) - 1/(x+y(1-x))) normalised
    a = x + y0 * (1 - x)
    inv_a = 1.0 / a
    inv_b = 1.0 / 1.0  # at y = 1 the denominator is x + (1-x) = 1
    t = inv_a + v * (inv_b - inv_a)
    y = (1.0 / t - x) / (1.0 - x) if x != 1.0 else 1.0
    fx = Fraction(x).limit_denominator(10**12)
    fy = Fraction(min(max(y, y0), 1.0)).limit_denominator(10**12)
    return fx, fy


def _rects_measure_mc(rects, seed: int, samples: int) -> MeasureEstimate:
    """Strip-restricted Monte Carlo for regions with y bounded away
    from 0 (cross-check path against the exact rectangle masses)."""
    y_min = min(Fraction(y0) for _, _, y0, _ in rects)
    if y_min == 0:
        raise NonIntegrable("Monte Carlo path needs y bounded away from 0")
    rng = random.Random(seed)
    w_mass = _strip_union_mass(y_min)
    hits = 0
    for _ in range(samples):
        fx, fy = _sample_strip(rng, y_min)
        if any(x0 <= fx <= x1 and y0 <= fy <= y1 for x0, x1, y0, y1 in rects):
            hits += 1
    p = hits / samples
    sigma = w_mass * math.sqrt(max(p * (1 - p), 1e-12) / samples)
    return MeasureEstimate(w_mass * p, 3 * sigma, "monte-carlo", seed=seed, samples=samples)


def _alpha_measure_mc(region: AlphaRegion, seed: int, samples: int) -> MeasureEstimate:
    # the region only reaches strips with index below 1/alpha
    alpha = region.alpha
    a_max = max(1, math.ceil(1 / float(alpha)) - 1)
    y_min = min(Fraction(1, 2), Fraction(1, a_max + 1))
    rng = random.Random(seed)
    w_mass = _strip_union_mass(y_min)
    hits = 0
    for _ in range(samples):
        fx, fy = _sample_strip(rng, y_min)
        if region.contains_rational(fx, fy):
            hits += 1
    p = hits / samples
    value = w_mass * p
    sigma = w_mass * math.sqrt(max(p * (1 - p), 1e-12) / samples)
    return MeasureEstimate(value, 3 * sigma, "monte-carlo", seed=seed, samples=samples)


def entropy_of(region: Region, tol: float = 1e-9, method: str = "auto",
               seed: int | None = None, samples: int = 200_000):
    """pi^2 / (6 m(R)); returns (entropy, MeasureEstimate)."""
    est = measure_of(region, tol=tol, method=method, seed=seed, samples=samples)
    return math.pi**2 / (6 * est.value), est


def log_of_big(n: int) -> float:
    """log of a positive integer too large for float conversion."""
    if n <= 0:
        raise ValueError("need a positive integer")
    bl = n.bit_length()
    if bl <= 900:
        return math.log(n)
    shift = bl - 64
    return math.log(n >> shift) + shift * math.log(2)


def empirical_denominator_growth(region: Region, z: OmegaPoint, n: int, cap: int = 10**6) -> float:
    """(1/n) log of the bottom-left entry of the n-th accumulated
    induced product: the orbit's denominator growth exponent."""
    prods = induced_products(region, z, n, cap)
    s_n = prods[-1][1].c
    return log_of_big(s_n) / n
