"""Generalised continued fractions.

A GCF is the formal expression [b0/a0; a1/b1, a2/b2, ...] with partial
numerators a_n != 0 and partial denominators b_n, together with the
implicit index -1 pair (1, 0).  Digits are exact (int or Fraction); a
partial denominator equal to INF truncates the expansion at the
preceding index.  Convergents P_n/Q_n follow

    P_{n+1} = b_{n+1} P_n + a_{n+1} P_{n-1},   (P_-2, P_-1) = (0, 1),
    Q_{n+1} = b_{n+1} Q_n + a_{n+1} Q_{n-1},   (Q_-2, Q_-1) = (1, 0),

and are not reduced automatically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AdjacentPositions,
    BadRange,
    IndexBeyondExpansion,
    NotSingularisable,
    SingularPrefix,
)
from .exact import INF, Mat2Z, mobius_apply


def _num(v):
    if v is INF:
        return INF
    f = Fraction(v)
    return int(f) if f.denominator == 1 else f


class Gcf:
    """Digit-pair sequence (a_n, b_n), n >= 0, finite or lazily generated.

    `source` is either a finite list of pairs or a zero-argument callable
    returning a fresh iterator of pairs, so lazy expansions can be
    replayed.  Pairs are memoised.
    """

    def __init__(self, source):
        if callable(source):
            self._factory = source
            self._buf = []
            self._it = None
            self._finite_len = None
        else:
            pairs = []
            truncated = False
            for a, b in source:
                a, b = _num(a), _num(b)
                if b is INF:
                    truncated = True
                    break
                pairs.append((a, b))
            self._factory = None
            self._buf = pairs
            self._it = None
            self._finite_len = len(pairs)
            if truncated:
                self._truncated_at = len(pairs) - 1
                return
        self._truncated_at = None  # index n0 such that b_{n0+1} is INF

    @staticmethod
    def from_pairs(pairs) -> "Gcf":
        return Gcf(list(pairs))

    @staticmethod
    def rcf(partial_quotients, b0=0) -> "Gcf":
        """Regular continued fraction [b0; a1, a2, ...]."""
        pairs = [(1, b0)] + [(1, a) for a in partial_quotients]
        return Gcf(pairs)

    def _fill(self, n: int) -> bool:
        """Ensure pair n is buffered; False if the expansion is shorter."""
        if self._truncated_at is not None and n > self._truncated_at:
            return False
        while len(self._buf) <= n:
            if self._factory is None:
                return False
            if self._it is None:
                self._it = iter(self._factory())
                for _ in range(len(self._buf)):
                    next(self._it)
            try:
                a, b = next(self._it)
            except StopIteration:
                self._factory = None
                self._finite_len = len(self._buf)
                return False
            a, b = _num(a), _num(b)
            if a == 0:
                raise ValueError(f"partial numerator 0 at index {len(self._buf)}")
            if b is INF:
                # b_{n+1} = INF truncates at index n
                self._truncated_at = len(self._buf) - 1
                self._finite_len = len(self._buf)
                return False
            self._buf.append((a, b))
        a, b = self._buf[n]
        if b is INF:
            t = n - 1 if self._truncated_at is None else min(self._truncated_at, n - 1)
            self._truncated_at = t
            return False
        return True

    def pair(self, n: int):
        if n == -1:
            return (1, 0)
        if n < -1 or not self._fill(n):
            raise IndexBeyondExpansion(f"no digit pair at index {n}")
        return self._buf[n]

    def has_pair(self, n: int) -> bool:
        if n == -1:
            return True
        return n >= 0 and self._fill(n)

    def length(self):
        """Number of digit pairs if finite, else None."""
        if self._factory is None and self._truncated_at is None:
            return self._finite_len
        if self._truncated_at is not None:
            return self._truncated_at + 1
        return None

    def pairs(self, n: int):
        """Pairs for indices 0..n-1 (at most; stops at truncation)."""
        out = []
        for k in range(n):
            if not self.has_pair(k):
                break
            out.append(self.pair(k))
        return out

    def b_matrix(self, n: int) -> Mat2Z:
        a, b = self.pair(n)
        return Mat2Z(0, a, 1, b)

    # -- serialization ----------------------------------------------------

    def to_json(self, n: int | None = None) -> str:
        if n is None:
            if self.length() is None:
                raise ValueError("cannot serialise an infinite expansion without n")
            n = self.length()
        ps = self.pairs(n)
        enc = lambda v: "inf" if v is INF else (str(v) if isinstance(v, Fraction) else v)
        return json.dumps(
            {"alpha": [enc(a) for a, _ in ps], "beta": [enc(b) for _, b in ps]},
            sort_keys=True,
        )

    @staticmethod
    def from_json(text: str) -> "Gcf":
        obj = json.loads(text)
        dec = lambda v: INF if v == "inf" else _num(Fraction(v) if isinstance(v, str) else v)
        pairs = list(zip(map(dec, obj["alpha"]), map(dec, obj["beta"])))
        return Gcf(pairs)


@dataclass(frozen=True)
class ConvergentPair:
    P: object
    Q: object

    def as_fraction(self):
        if self.Q == 0:
            return INF
        return Fraction(self.P, self.Q)

    def __iter__(self):
        return iter((self.P, self.Q))


def convergents(g: Gcf, n: int):
    """ConvergentPairs for k = -2..n."""
    out = [ConvergentPair(0, 1), ConvergentPair(1, 0)]
    for k in range(n + 1):
        if not g.has_pair(k):
            raise IndexBeyondExpansion(f"expansion ends before index {k}")
        a, b = g.pair(k)
        P = b * out[-1].P + a * out[-2].P
        Q = b * out[-1].Q + a * out[-2].Q
        out.append(ConvergentPair(_num(P), _num(Q)))
    return out


def convergent(g: Gcf, n: int) -> ConvergentPair:
    return convergents(g, n)[-1]


def partial_matrix(g: Gcf, m: int, n: int) -> Mat2Z:
    """B_m B_{m+1} ... B_n, for -1 <= m <= n within the expansion."""
    if m < -1 or n < m:
        raise BadRange(f"bad index range [{m}, {n}]")
    out = g.b_matrix(m) if m >= 0 else Mat2Z(0, 1, 1, 0)
    for k in range(m + 1, n + 1):
        out = out @ g.b_matrix(k)
    return out


def partial_pq(g: Gcf, m: int, n: int):
    """(P_[m,n], Q_[m,n]) as a total function on ranges.

    The empty range n = m - 1 returns (0, 1); this convention is load
    bearing for the contraction digit formulas.
    """
    if n < m - 1:
        raise BadRange(f"range [{m}, {n}] shorter than empty")
    if n == m - 1:
        return (0, 1)
    # local recurrence with seeds P_[m,m-1] = 0, P_[m,m] = a_m and Q likewise
    a, b = g.pair(m)
    P_prev, P_cur = 0, a
    Q_prev, Q_cur = 1, b
    for k in range(m + 1, n + 1):
        a, b = g.pair(k)
        P_prev, P_cur = P_cur, b * P_cur + a * P_prev
        Q_prev, Q_cur = Q_cur, b * Q_cur + a * Q_prev
    return (_num(P_cur), _num(Q_cur))


def partial_q(g: Gcf, m: int, n: int):
    return partial_pq(g, m, n)[1]


def partial_det(g: Gcf, m: int, n: int):
    """det B_[m,n] = (-1)^(n-m+1) a_m ... a_n; empty range gives 1."""
    if n < m - 1:
        raise BadRange(f"range [{m}, {n}] shorter than empty")
    out = 1
    for k in range(m, n + 1):
        out *= -g.pair(k)[0]
    return _num(out)


def evaluate_finite(g: Gcf, cap: int = 1_000_000):
    """Value of a finite (or INF-truncated) expansion in Q u {inf}."""
    n = -1
    while g.has_pair(n + 1):
        n += 1
        if n > cap:
            raise IndexBeyondExpansion("expansion is not finite")
    return mobius_apply(partial_matrix(g, -1, n), Fraction(0))


def digits_from_convergents(ps) -> Gcf:
    """Recover digit pairs from convergents (P_k, Q_k), k = 0..n.

    Inverts the recurrence via (a_{k+1}, b_{k+1}) = B_[-1,k]^{-1} (P_{k+1}, Q_{k+1}).
    """
    ps = [(p.P, p.Q) if isinstance(p, ConvergentPair) else tuple(p) for p in ps]
    pairs = []
    prev2, prev1 = (0, 1), (1, 0)  # (P_-2, Q_-2), (P_-1, Q_-1)
    for k, (P, Q) in enumerate(ps):
        # B_[-1,k-1] has columns (P_{k-2}, Q_{k-2}), (P_{k-1}, Q_{k-1})
        det = prev2[0] * prev1[1] - prev1[0] * prev2[1]
        if det == 0:
            raise SingularPrefix(f"singular prefix matrix before index {k}")
        a = Fraction(prev1[1] * P - prev1[0] * Q, det)
        b = Fraction(-prev2[1] * P + prev2[0] * Q, det)
        if a == 0:
            raise SingularPrefix(f"recovered zero partial numerator at index {k}")
        pairs.append((a, b))
        prev2, prev1 = prev1, (P, Q)
    return Gcf(pairs)


@dataclass(frozen=True)
class SrcfVerdict:
    kind: str           # "RCF" | "SRCF" | "Neither"
    reason: str = ""
    depth_checked: int = 0
    condition_iv: str = ""  # "", "holds", f"verified up to depth d"


def validate_srcf(g: Gcf, depth: int = 200) -> SrcfVerdict:
    """Classify a digit sequence as RCF / SRCF / Neither on a window.

    Checks a0 = 1, a_n = +-1, b_n a positive integer for n >= 1, and
    a_{n+1} + b_n >= 1.  The tail condition a_{n+1} + b_n >= 2
    infinitely often is only decidable on a window; for infinite input
    the verdict carries a depth-qualified report.
    """
    a0, _ = g.pair(0)
    if a0 != 1:
        return SrcfVerdict("Neither", f"alpha_0 = {a0} != 1", 0)
    finite = g.length()
    limit = finite if finite is not None else depth
    all_plus_one = True
    last_ge2 = -1
    n = 1
    while n < limit and g.has_pair(n):
        a, b = g.pair(n)
        if a not in (1, -1):
            return SrcfVerdict("Neither", f"|alpha_{n}| != 1 (got {a})", n)
        if a != 1:
            all_plus_one = False
        if not isinstance(b, int) or b <= 0:
            return SrcfVerdict("Neither", f"beta_{n} = {b} not a positive integer", n)
        if g.has_pair(n + 1):
            a_next = g.pair(n + 1)[0]
            if a_next + b < 1:
                return SrcfVerdict("Neither", f"alpha_{n+1} + beta_{n} < 1 at n = {n}", n)
            if a_next + b >= 2:
                last_ge2 = n
        n += 1
    if finite is not None:
        cond_iv = "holds"  # vacuous for finite expansions
    elif last_ge2 >= 0:
        cond_iv = f"verified up to depth {n}"
    else:
        return SrcfVerdict("Neither", "alpha_{n+1} + beta_n >= 2 never seen in window", n)
    kind = "RCF" if all_plus_one else "SRCF"
    return SrcfVerdict(kind, "", n, cond_iv)


def singularise(g: Gcf, positions) -> Gcf:
    """Singularise a SRCF at every index in `positions` simultaneously.

    At each requested n the pair rewrite removes the n-th convergent;
    it needs b_{n+1} = 1 and a_{n+2} = 1, and no two requested positions
    may be adjacent.  `positions` may be any (possibly infinite)
    collection supporting `in`, e.g. a set or a membership-view object.
    """
    pos = positions
    if isinstance(positions, (list, tuple)):
        pos = set(positions)
        for p in pos:
            if p + 1 in pos:
                raise AdjacentPositions(f"positions {p} and {p+1} both requested")

    def gen():
        j = 0
        while True:
            if j in pos:
                if j + 1 in pos:
                    raise AdjacentPositions(f"positions {j} and {j+1} both requested")
                if not g.has_pair(j + 2):
                    raise NotSingularisable(j, "expansion too short")
                a_j, b_j = g.pair(j)
                a_next, b_next = g.pair(j + 1)
                if b_next != 1 or g.pair(j + 2)[0] != 1:
                    raise NotSingularisable(
                        j, f"needs beta_{j+1} = 1 and alpha_{j+2} = 1"
                    )
                yield (a_j, b_j + a_next)
                neg = -a_next
                j += 2
                while j in pos:
                    if j + 1 in pos:
                        raise AdjacentPositions(f"positions {j} and {j+1} both requested")
                    a_j, b_j = g.pair(j)
                    a_next2, b_next2 = g.pair(j + 1)
                    if b_next2 != 1 or not g.has_pair(j + 2) or g.pair(j + 2)[0] != 1:
                        raise NotSingularisable(
                            j, f"needs beta_{j+1} = 1 and alpha_{j+2} = 1"
                        )
                    yield (neg, b_j + a_next2 + 1)
                    neg = -a_next2
                    j += 2
                if not g.has_pair(j):
                    return
                yield (neg, g.pair(j)[1] + 1)
                j += 1
            else:
                if not g.has_pair(j):
                    return
                yield g.pair(j)
                j += 1

    return Gcf(gen)


def classify_farey_index(rcf_digits, n: int):
    """Split n as a_1 + ... + a_j + lam with 0 <= lam < a_{j+1}.

    `rcf_digits` is a partial-quotient stream or list (a_1, a_2, ...);
    INF entries absorb every remaining n.
    """
    if n < 0:
        raise IndexBeyondExpansion("negative index")
    j = 0
    rest = n
    it = iter(rcf_digits)
    while True:
        try:
            a = next(it)
        except StopIteration:
            a = INF
        if a is INF or rest < a:
            return (j, rest)
        rest -= a
        j += 1
