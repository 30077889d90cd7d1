import random

from hypothesis import given
from hypothesis import strategies as st

from joinperm.enumeration import (
    PAUSE,
    Enumeration,
    intersection,
    mapped,
    product_map,
    semidecide,
    union,
)


def test_semidecide_examples():
    E = Enumeration.from_items([3, 5])
    assert semidecide(E, 3, 1)
    assert not semidecide(E, 5, 1)
    assert semidecide(E, 5, 2)


def test_budget_zero_is_unknown():
    assert not Enumeration.from_items([1]).semidecide(1, 0)


@st.composite
def streams(draw):
    steps = draw(st.lists(st.one_of(st.none(), st.integers(0, 20)), max_size=40))
    return [PAUSE if s is None else s for s in steps]


@given(streams(), st.integers(0, 20), st.integers(0, 50), st.integers(0, 50))
def test_semidecide_monotone(steps, x, b1, b2):
    E = Enumeration(lambda i: steps[i] if i < len(steps) else PAUSE)
    lo, hi = sorted((b1, b2))
    if E.semidecide(x, lo):
        assert E.semidecide(x, hi)


@given(st.frozensets(st.integers(0, 1000), max_size=30))
def test_fairness_witness(S):
    E = Enumeration.from_items(sorted(S))
    assert all(E.semidecide(x, len(S)) for x in S)


@given(st.lists(st.frozensets(st.integers(0, 30), max_size=10), min_size=1, max_size=4))
def test_union_intersection_limits(sets):
    enums = [Enumeration.from_items(sorted(s)) for s in sets]
    assert union(*enums).limit() == frozenset().union(*sets)
    assert intersection(*enums).limit() == frozenset.intersection(*sets)


@given(st.frozensets(st.integers(0, 40), max_size=8), st.frozensets(st.integers(0, 40), max_size=8))
def test_product_limit(s1, s2):
    E = product_map(Enumeration.from_items(sorted(s1)), Enumeration.from_items(sorted(s2)),
                    lambda a, b: a | b)
    assert E.limit() == {a | b for a in s1 for b in s2}


def test_infinite_union_is_fair():
    ev = Enumeration.from_predicate(lambda n: n % 2 == 0)
    od = Enumeration.from_predicate(lambda n: n % 2 == 1)
    U = union(ev, od)
    assert all(U.semidecide(x, 2 * x + 2) for x in range(200))


def test_intersection_of_infinite_streams():
    ev = Enumeration.from_predicate(lambda n: n % 2 == 0)
    m3 = Enumeration.from_predicate(lambda n: n % 3 == 0)
    I = intersection(ev, m3)
    assert I.seen(5000) >= {0, 6, 12, 18, 24}
    assert all(x % 6 == 0 for x in I.seen(5000))


def test_step_is_deterministic():
    rng = random.Random(3)
    table = [rng.randrange(9) for _ in range(30)]
    E1 = mapped(Enumeration(lambda i: table[i % 30]), lambda x: x * x)
    E2 = mapped(Enumeration(lambda i: table[i % 30]), lambda x: x * x)
    assert [E1.step(i) for i in range(60)] == [E2.step(i) for i in reversed(range(60))][::-1]


def test_limit_requires_horizon():
    import pytest

    with pytest.raises(ValueError):
        Enumeration.naturals().limit()


def test_at_matches_step():
    e = Enumeration(lambda i: i * i if i % 3 else PAUSE)
    assert e.at(10**12 + 1) == (10**12 + 1) ** 2
    assert e._cache == []
    assert [e.at(i) for i in range(20)] == [e.step(i) for i in range(20)]
    assert Enumeration.from_items([1]).at(5) is PAUSE
