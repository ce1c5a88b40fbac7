"""The slow and fast interval maps and their expansions.

The tent map on [0, 1] splits at 1/2 with branch matrices
A_0 = [[1,0],[1,1]] and A_1 = [[0,1],[1,1]]; its binary branch digits
eps_n factor through the partial quotients as
eps_1 eps_2 ... = 0^(a1-1) 1 0^(a2-1) 1 ....  The Gauss map is its jump
transformation past 1/2, and the one-parameter family

    x |-> 1/|x| - floor(1/|x| + 1 - alpha)      on [alpha-1, alpha)

interpolates the classical variants.  All evaluation is exact on
rational and quadratic-surd inputs.
"""

from __future__ import annotations

from fractions import Fraction

from .digits import DigitStream
from .errors import OutOfDomain, ZeroInput
from .exact import INF, IDENTITY, Mat2Z
from .gcf import Gcf, classify_farey_index
from .reals import RealRep, as_real, floor_of, rcf_digits

A0 = Mat2Z(1, 0, 1, 1)
A1 = Mat2Z(0, 1, 1, 1)


def a_matrix(eps: int) -> Mat2Z:
    return A1 if eps else A0


def _check_unit(x: RealRep):
    if x < 0 or x > 1:
        raise OutOfDomain(f"{x} outside [0, 1]")


def farey_step(x: RealRep):
    """One tent-map step: (eps, x') with eps = [x > 1/2]."""
    _check_unit(x)
    if x > Fraction(1, 2):
        return 1, as_real((1 - x) / x)
    if x == 0:
        return 0, Fraction(0)
    return 0, as_real(x / (1 - x))


def gauss_step(x: RealRep):
    """(a, x') with a = floor(1/x) (INF at 0) and x' = 1/x - a."""
    _check_unit(x)
    if x == 0:
        return INF, Fraction(0)
    inv = 1 / x
    a = floor_of(inv)
    return a, as_real(inv - a)


def alpha_step(alpha: RealRep, x: RealRep):
    """(sign, d, x') for the parameterised map on [alpha-1, alpha)."""
    if not (0 < alpha <= 1):
        raise OutOfDomain(f"alpha = {alpha} outside (0, 1]")
    if x < alpha - 1 or x >= alpha:
        raise OutOfDomain(f"{x} outside [alpha-1, alpha)")
    if x == 0:
        raise ZeroInput("orbit terminated at 0")
    sign = 1 if x > 0 else -1
    ax = x if sign > 0 else -x
    inv = 1 / ax
    d = floor_of(inv + 1 - alpha)
    return sign, d, as_real(inv - d)


def alpha_orbit_digits(alpha: RealRep, x: RealRep, n: int):
    """First n digit pairs (sign, d) of the alpha-expansion of x."""
    out = []
    cur = x
    for _ in range(n):
        sign, d, cur = alpha_step(alpha, cur)
        out.append((sign, d))
    return out


def epsilon_stream(x) -> "DigitStream":
    """Branch digits eps_1 eps_2 ... as a digit stream of 0/1.

    Accepts a RealRep or a partial-quotient stream.  A rational input
    ends at 0, which is a fixed point of the 0-branch, so the stream
    continues with zeros forever (never INF).
    """
    digits = x if isinstance(x, DigitStream) else rcf_digits(x)

    def gen():
        s = digits
        while True:
            a = s.head()
            if a is INF:
                while True:
                    yield 0
            for _ in range(a - 1):
                yield 0
            yield 1
            s = s.tail()

    from .digits import LazyDigits

    return LazyDigits(gen())


def farey_expansion(x, n: int) -> Gcf:
    """SRCF generated by the tent-map branch digits, n+1 digit pairs.

    Digits: a0 = 1, b0 = 1 - eps_1, and (a_k, b_k) = (2 eps_k - 1,
    2 - eps_{k+1}) for k >= 1.
    """
    eps = epsilon_stream(x)
    need = eps.prefix(n + 1)
    pairs = [(1, 1 - need[0])]
    for k in range(1, n + 1):
        pairs.append((2 * need[k - 1] - 1, 2 - need[k]))
    return Gcf(pairs)


def lehner_expansion(x, n: int) -> Gcf:
    """Expansion of x obtained from the [1, 2]-shift digits of x + 1.

    The digit pairs (b_k, e_{k+1}) = (2 - eps_{k+1}, 2 eps_{k+1} - 1)
    belong to x + 1; translating back (b0 lowered by one) gives exactly
    the Farey expansion of x, which is what is returned.
    """
    eps = epsilon_stream(x)
    es = eps.prefix(n + 1)
    pairs = [(1, (2 - es[0]) - 1)]
    for k in range(1, n + 1):
        pairs.append((2 * es[k - 1] - 1, 2 - es[k]))
    return Gcf(pairs)


def lehner_pairs(x, n: int):
    """The raw digit pairs (b_k, e_{k+1}), k = 0..n, of x + 1."""
    es = epsilon_stream(x).prefix(n + 2)
    return [(2 - es[k], 2 * es[k] - 1) for k in range(n + 1)]


def a_matrix_forward(x, n: int) -> Mat2Z:
    """A_[0,n] = A_eps1 ... A_epsn via the convergent/mediant closed form."""
    digits = x if isinstance(x, DigitStream) else rcf_digits(x)
    if n == 0:
        return IDENTITY
    j, lam = classify_farey_index(digits, n)
    p_prev, q_prev = 1, 0
    p, q = 0, 1  # (p_-1, q_-1), (p_0, q_0)
    s = digits
    for _ in range(j):
        a = s.head()
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        s = s.tail()
    return Mat2Z(lam * p + p_prev, p, lam * q + q_prev, q)


def a_matrix_forward_bruteforce(x, n: int) -> Mat2Z:
    """Literal product of branch matrices (test oracle)."""
    eps = epsilon_stream(x).prefix(n)
    out = IDENTITY
    for e in eps:
        out = out @ a_matrix(e)
    return out


def a_matrix_backward(x, n: int) -> Mat2Z:
    """A_[n,0] = A_epsn ... A_eps1, from the forward entries:
    [[r - t, t], [s + r - (u + t), u + t]].
    """
    f = a_matrix_forward(x, n)
    u, t, s, r = f.a, f.b, f.c, f.d
    return Mat2Z(r - t, t, s + r - (u + t), u + t)


def farey_convergents(x, n: int):
    """(u_k, s_k) for k = 0..n: left columns of A_[0,k].

    The sequence runs through every convergent and every mediant in
    order of appearance.
    """
    digits = x if isinstance(x, DigitStream) else rcf_digits(x)
    out = [(1, 0)]
    p_prev, q_prev = 1, 0
    p, q = 0, 1
    s = digits
    a = s.head()
    lam = 0
    for _ in range(n):
        lam += 1
        if a is not INF and lam >= a:
            # lam == a: mediant closes into the next convergent
            p_prev, p = p, a * p + p_prev
            q_prev, q = q, a * q + q_prev
            s = s.tail()
            a = s.head()
            lam = 0
        if lam == 0:
            out.append((p_prev, q_prev))
        else:
            out.append((lam * p + p_prev, lam * q + q_prev))
    return out


def rcf_expansion(x, n: int) -> Gcf:
    """Regular continued fraction of x in [0, 1] with n partial quotients."""
    digits = x if isinstance(x, DigitStream) else rcf_digits(x)
    pref = []
    s = digits
    for _ in range(n):
        h = s.head()
        if h is INF:
            break
        pref.append(h)
        s = s.tail()
    return Gcf.rcf(pref)


def gauss_jump_length(x: RealRep) -> int:
    """Number of tent-map steps the Gauss map compresses at x."""
    _check_unit(x)
    if x == 0:
        raise ZeroInput("no jump at the fixed point 0")
    return floor_of(1 / x)
