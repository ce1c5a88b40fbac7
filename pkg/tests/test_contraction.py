import random

import pytest
from hypothesis import given, settings, strategies as st

from cfrow.contraction import (
    ContractionPlan,
    contract,
    is_contractable,
    seidel_check,
    seidel_scalars,
)
from cfrow.errors import NotContractable
from cfrow.farey_maps import farey_expansion
from cfrow.gcf import Gcf, convergents, partial_pq

from conftest import random_surd


def harmonic_gcf() -> Gcf:
    def gen():
        yield (1, 1)
        n = 1
        while True:
            yield (n, n + 1)
            n += 1

    return Gcf(gen)


def even_plan() -> ContractionPlan:
    def gen():
        k = 0
        while True:
            yield 2 * k
            k += 1

    return ContractionPlan(gen)


EXPECTED_EVEN_DIGITS = [
    (1, 1), (3, 8), (-30, 87), (-420, 275), (-1890, 623),
    (-5544, 1179), (-12870, 1991), (-25740, 3107),
]


def test_worked_even_contraction_digits():
    cc = contract(harmonic_gcf(), even_plan())
    assert cc.pairs(8) == EXPECTED_EVEN_DIGITS


def test_worked_scalars():
    cs = seidel_scalars(harmonic_gcf(), even_plan(), 5)
    assert cs == [1, 1, 3, 15, 105, 945]


def test_worked_scaled_convergent_pairs():
    g = harmonic_gcf()
    cc = contract(g, even_plan())
    orig = convergents(g, 10)[2:]
    new = convergents(cc, 5)[2:]
    cs = seidel_scalars(g, even_plan(), 5)
    for k in range(6):
        assert tuple(new[k]) == (cs[k] * orig[2 * k].P, cs[k] * orig[2 * k].Q)


def test_plan_validation():
    with pytest.raises(ValueError):
        ContractionPlan([3, 1])
    with pytest.raises(ValueError):
        ContractionPlan([-1, 2])
    p = ContractionPlan([0, 2, 5])
    assert p.index(-2) == -2 and p.index(1) == 2


def test_is_contractable():
    assert is_contractable(harmonic_gcf(), 20)
    assert is_contractable(Gcf.rcf([1] * 30), 25)
    # a partial denominator block that vanishes: b1 = 1, a1 = -1 gives
    # Q_[1,1] = 1 then Q_[1,2]... build one with Q_[2,2] = 0 impossible
    # (beta != 0 needed); use b2 = 1, a2 = -1 so Q_[2,3] = b3 - 1 at b3 = 1
    bad = Gcf([(1, 1), (1, 1), (-1, 1), (-1, 1)])
    assert not is_contractable(bad, 3)


def test_farey_expansions_contractable(rng):
    for _ in range(10):
        x = random_surd(rng)
        fe = farey_expansion(x, 32)
        assert is_contractable(fe, 30)


def test_identity_plan_is_digit_identity():
    g = harmonic_gcf()
    ident = contract(g, ContractionPlan(lambda: iter(range(10**9))))
    assert ident.pairs(8) == g.pairs(8)


def test_not_contractable_names_block():
    bad = Gcf([(1, 1), (1, 1), (-1, 1), (-1, 1)])
    with pytest.raises(NotContractable):
        contract(bad, ContractionPlan([0, 3])).pairs(2)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_seidel_property_random(data):
    length = data.draw(st.integers(6, 30))
    pairs = data.draw(
        st.lists(
            st.tuples(st.integers(1, 9), st.integers(1, 9)),
            min_size=length,
            max_size=length,
        )
    )
    g = Gcf(pairs)
    count = data.draw(st.integers(1, min(8, length - 1)))
    idxs = sorted(data.draw(st.permutations(range(length - 1)))[:count])
    assert seidel_check(g, ContractionPlan(idxs), count - 1)


def test_scalars_match_bruteforce_products(rng):
    for _ in range(30):
        length = rng.randint(8, 30)
        pairs = [(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(length)]
        g = Gcf(pairs)
        count = rng.randint(2, min(8, length - 1))
        idxs = sorted(rng.sample(range(length - 1), count))
        plan = ContractionPlan(idxs)
        cs = seidel_scalars(g, plan, count - 1)
        brute = [1]
        for j in range(count - 1):
            prev = idxs[j - 1] if j >= 1 else -1
            brute.append(brute[-1] * partial_pq(g, prev + 2, idxs[j])[1])
        assert cs == brute


def test_reduced_fraction_equality(rng):
    for _ in range(20):
        length = rng.randint(8, 25)
        pairs = [(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(length)]
        g = Gcf(pairs)
        count = rng.randint(2, min(6, length - 1))
        idxs = sorted(rng.sample(range(length - 1), count))
        cc = contract(g, ContractionPlan(idxs))
        orig = convergents(g, max(idxs))[2:]
        new = convergents(cc, count - 1)[2:]
        for k in range(count):
            a = new[k].as_fraction()
            b = orig[idxs[k]].as_fraction()
            assert a == b
