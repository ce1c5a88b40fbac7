import random
from fractions import Fraction

import pytest

from cfrow.reals import Surd

NON_SQUARES = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26]


def random_surd(rng: random.Random, d: int | None = None) -> Surd:
    """Random quadratic irrational in (0, 1)."""
    if d is None:
        d = rng.choice(NON_SQUARES)
    while True:
        p = rng.randint(-40, 40)
        q = rng.choice([i for i in range(-12, 13) if i])
        r = rng.randint(1, 40)
        x = Surd(p, q, r, d)
        x = x - x.floor()
        if 0 < x < 1:
            return x


def random_rich_surd(rng: random.Random, d: int | None = None, depth: int = 300,
                     min_big: int = 45) -> Surd:
    """Random quadratic irrational whose expansion has plenty of partial
    quotients >= 2 in its first `depth` digits (so vertical-strip orbits
    have enough visits)."""
    from cfrow.reals import rcf_digits

    while True:
        x = random_surd(rng, d)
        digs = rcf_digits(x).prefix(depth)
        if sum(1 for a in digs if a >= 2) >= min_big:
            return x


def random_surd_with_digit(rng: random.Random, digit: int, count: int = 15,
                           depth: int = 250) -> Surd:
    """Random quadratic irrational with at least `count` occurrences of
    the given partial quotient among its first `depth` digits."""
    from cfrow.reals import rcf_digits

    while True:
        x = random_surd(rng)
        digs = rcf_digits(x).prefix(depth)
        if sum(1 for a in digs if a == digit) >= count:
            return x


def surd_from_periodic_digits(digits) -> Surd:
    """The quadratic irrational with purely periodic expansion
    [0; digits, digits, ...]: the attracting fixed point of the digit
    block's matrix action."""
    import math

    a, b, c, d = 1, 0, 0, 1
    for q in digits:
        a, b, c, d = b, a + b * q, d, c + d * q
    # x = (a x + b)/(c x + d), positive root
    disc = (d - a) ** 2 + 4 * b * c
    assert math.isqrt(disc) ** 2 != disc, "digit block gave a rational point"
    x = Surd(a - d, 1, 2 * c, disc)
    assert 0 < x < 1
    return x


def random_periodic_surd(rng: random.Random, length=6, max_digit=4,
                         require=None) -> Surd:
    """Random purely periodic quadratic irrational, optionally forcing
    some digit values to appear in the period."""
    while True:
        digits = [rng.randint(1, max_digit) for _ in range(length)]
        if require is not None and not all(v in digits for v in require):
            continue
        return surd_from_periodic_digits(digits)


@pytest.fixture
def rng():
    return random.Random(20260810)
