"""Contracted Farey expansions, by two independent routes.

Route 1 (the defining construction): contract the Farey expansion of x
with respect to the plan n_k = N_{k+1} - 1 read off the induced orbit.

Route 2 (the dynamical construction): read the digits straight from
consecutive induced-step matrices,

    (a_0, b_0)     = (s(z_0), u(z_0)),
    (a_1, b_1)     = (alpha_R(z_0)/d_R(z_0), beta_R(z_0)),
    (a_{k+1}, b_{k+1}) = (alpha_R(z_k), beta_R(z_k)),   k > 0.

The two must agree digit for digit; route 1 is kept as the oracle and
route 2 is the production path.  The convergents of either satisfy
(P_k, Q_k) = c_k (u_{k+1}, s_{k+1}) with c_k the product of the first k
s-entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .contraction import ContractionPlan, contract
from .errors import MismatchAt, OutOfDomain
from .exact import IDENTITY
from .farey_maps import farey_expansion
from .gcf import Gcf, convergents
from .induced import Region, d_map, induced_records
from .natural_ext import OmegaPoint
from .reals import is_rational


def _require_irrational(z: OmegaPoint):
    if z.x_val is not None and is_rational(z.x_val):
        raise OutOfDomain("contracted expansions need an irrational first coordinate")


def cfe_by_contraction(region: Region, z: OmegaPoint, n: int, cap: int) -> Gcf:
    """Route 1: formal contraction of the Farey expansion of x."""
    _require_irrational(z)
    recs = induced_records(region, z, n + 2, cap)
    times = []
    total = 0
    for r in recs:
        total += r.N
        times.append(total)
    plan = ContractionPlan([N - 1 for N in times])
    depth = times[-1] + 2
    farey = farey_expansion(z.xd, depth)
    contracted = contract(farey, plan)
    return Gcf(contracted.pairs(n + 1))


def cfe_direct(region: Region, z: OmegaPoint, n: int, cap: int) -> "CfeResult":
    """Route 2: digits from induced-step matrices; returns digits,
    convergents and the witnessing records."""
    _require_irrational(z)
    recs = induced_records(region, z, n + 1, cap)
    d0 = d_map(region, z, cap)
    pairs = [(recs[0].s, recs[0].u)]
    for k in range(n):
        det = recs[k].A.det()
        alpha = -det * d0 * recs[k + 1].s if k == 0 else -det * recs[k - 1].s * recs[k + 1].s
        beta = recs[k].s * recs[k + 1].u + recs[k].r * recs[k + 1].s
        if k == 0:
            q, rem = divmod(alpha, d0)
            if rem:
                raise MismatchAt(1, f"first partial numerator {alpha} not divisible by {d0}")
            alpha = q
        pairs.append((alpha, beta))
    digits = Gcf(pairs)
    return CfeResult(digits=digits, records=recs)


@dataclass
class CfeResult:
    digits: Gcf
    records: list

    def convergents(self):
        n = len(self.digits.pairs(10**9)) - 1
        return convergents(self.digits, n)[2:]

    def scalars(self):
        """c_k = prod_{j<k} s(z_j), k = 0..(digit count - 1)."""
        out = []
        c = 1
        for k in range(len(self.records)):
            out.append(c)
            c *= self.records[k].s
        return out


def cfe_convergents_report(res: CfeResult):
    """Verify (P_k, Q_k) = c_k (u_{k+1}, s_{k+1}) exactly, and the
    reduced-fraction equality; raises MismatchAt on failure."""
    cs = res.scalars()
    acc = IDENTITY
    prods = []
    for r in res.records:
        acc = acc @ r.A
        prods.append(acc)
    conv = res.convergents()
    checked = 0
    for k, (P, Q) in enumerate(conv):
        if k + 1 > len(prods) or k >= len(cs):
            break
        u, s = prods[k].a, prods[k].c
        if P != cs[k] * u or Q != cs[k] * s:
            raise MismatchAt(k, f"({P},{Q}) != {cs[k]}*({u},{s})")
        if Fraction(P, Q) != Fraction(u, s):
            raise MismatchAt(k, "reduced fractions differ")
        checked += 1
    return {"checked": checked, "ok": True}


def routes_agree(region: Region, z: OmegaPoint, n: int, cap: int) -> bool:
    """Executable agreement of the two constructions, digit for digit."""
    by_contraction = cfe_by_contraction(region, z, n, cap)
    direct = cfe_direct(region, z, n, cap)
    return by_contraction.pairs(n + 1) == direct.digits.pairs(n + 1)
