"""Contraction of generalised continued fractions.

Given a contractable expansion and a strictly increasing index sequence
(n_k), contraction produces a new expansion whose convergents are the
chosen subsequence of the original convergents, up to the scalar chain

    c_k = prod_{j=0}^{k-1} Q_[n_{j-1}+2, n_j],

so (P'_k, Q'_k) = c_k (P_{n_k}, Q_{n_k}) as exact integer pairs.
Contractability means Q_[m+1,n] != 0 for all 0 <= m <= n, which is
checked lazily exactly as deep as the requested output.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotContractable
from .gcf import Gcf, partial_det, partial_pq


@dataclass(frozen=True)
class ContractionPlan:
    """Strictly increasing indices n_0 < n_1 < ... with n_0 >= 0.

    Backed by a list or a replayable callable for lazy plans;
    `index(k)` honours the n_k = k convention for k < 0.
    """

    source: object

    def __post_init__(self):
        if not callable(self.source):
            seq = list(self.source)
            if not seq:
                raise ValueError("empty contraction plan")
            if seq[0] < 0 or any(b <= a for a, b in zip(seq, seq[1:])):
                raise ValueError(f"plan must be strictly increasing and >= 0: {seq}")
            object.__setattr__(self, "source", seq)

    def index(self, k: int) -> int:
        if k < 0:
            return k
        if callable(self.source):
            it = iter(self.source())
            val = None
            prev = -1
            for _ in range(k + 1):
                val = next(it)
                if val <= prev:
                    raise ValueError("plan must be strictly increasing")
                prev = val
            return val
        seq = self.source
        if k >= len(seq):
            raise IndexError(f"plan has only {len(seq)} indices")
        return seq[k]

    def known_length(self):
        return None if callable(self.source) else len(self.source)


def plan(indices) -> ContractionPlan:
    return ContractionPlan(indices)


def _q_or_raise(g: Gcf, m: int, n: int):
    q = partial_pq(g, m, n)[1]
    if q == 0:
        raise NotContractable(m, n)
    return q


def is_contractable(g: Gcf, depth: int) -> bool:
    """Check Q_[m+1,n] != 0 for all 0 <= m <= n <= depth.

    Uses Q_[m+1,n] = (Q_n P_{m-1} - P_n Q_{m-1}) / det B_[-1,m]; the
    verdict is depth-qualified (a tail violation is undetectable from
    any finite window).
    """
    last = depth
    while last >= 0 and not g.has_pair(last):
        last -= 1
    P = {-2: 0, -1: 1}
    Q = {-2: 1, -1: 0}
    for k in range(last + 1):
        a, b = g.pair(k)
        P[k] = b * P[k - 1] + a * P[k - 2]
        Q[k] = b * Q[k - 1] + a * Q[k - 2]
    for m in range(0, last + 1):
        for n in range(m, last + 1):
            # numerator of Q_[m+1,n]; the determinant factor never vanishes
            if Q[n] * P[m - 1] - P[n] * Q[m - 1] == 0:
                return False
    return True


def contract(g: Gcf, cplan) -> Gcf:
    """Contracted continued fraction of g with respect to the plan.

    Digit formula, for k >= -1 and n_k := k for k < 0:

        a'_{k+1} = -det(B_[n_{k-1}+2, n_k+1]) Q_[n_{k-2}+2, n_{k-1}] Q_[n_k+2, n_{k+1}]
        b'_{k+1} =  Q_[n_{k-1}+2, n_{k+1}]

    Raises NotContractable naming the vanishing block if g is not
    contractable deep enough.
    """
    if not isinstance(cplan, ContractionPlan):
        cplan = ContractionPlan(cplan)

    def gen():
        k = -1
        while True:
            try:
                n_km2 = cplan.index(k - 2)
                n_km1 = cplan.index(k - 1)
                n_k = cplan.index(k)
                n_kp1 = cplan.index(k + 1)
            except IndexError:
                return
            if not g.has_pair(n_kp1):
                return
            det = partial_det(g, n_km1 + 2, n_k + 1)
            # the two Q-factors of the partial numerator are blocks
            # [m+1, n] with m >= 0, which contractability keeps nonzero;
            # the partial denominator block may vanish legitimately
            q_back = _q_or_raise(g, n_km2 + 2, n_km1)
            q_fwd = _q_or_raise(g, n_k + 2, n_kp1)
            yield (-det * q_back * q_fwd, partial_pq(g, n_km1 + 2, n_kp1)[1])
            k += 1

    return Gcf(gen)


def seidel_scalars(g: Gcf, cplan, k_max: int):
    """The scalar chain c_k, k = 0..k_max, with c_k = 1 for k < 1."""
    if not isinstance(cplan, ContractionPlan):
        cplan = ContractionPlan(cplan)
    out = []
    c = 1
    for k in range(k_max + 1):
        if k >= 1:
            j = k - 1
            c = c * _q_or_raise(g, cplan.index(j - 1) + 2, cplan.index(j))
        out.append(c)
    return out


def seidel_check(g: Gcf, cplan, k_max: int) -> bool:
    """Exact Seidel identity (P'_k, Q'_k) = c_k (P_{n_k}, Q_{n_k})."""
    from .gcf import convergents

    if not isinstance(cplan, ContractionPlan):
        cplan = ContractionPlan(cplan)
    contracted = contract(g, cplan)
    n_top = cplan.index(k_max)
    orig = convergents(g, n_top)
    new = convergents(contracted, k_max)
    cs = seidel_scalars(g, cplan, k_max)
    for k in range(k_max + 1):
        Pn, Qn = orig[cplan.index(k) + 2]
        Pk, Qk = new[k + 2]
        if Pk != cs[k] * Pn or Qk != cs[k] * Qn:
            return False
    return True
