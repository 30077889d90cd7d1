import pytest
from hypothesis import given
from hypothesis import strategies as st

from joinperm.join import (
    Collection,
    const_witness,
    constant_range,
    criterion_check,
    diff_sets,
    jp_bruteforce,
    relevant_core,
    restrict,
    separates,
    sjp_bruteforce,
)
from joinperm.topology import FiniteTopology, open_separator

A12 = Collection([{1, 2}, {2, 3}])


def test_diff_sets_examples():
    assert diff_sets(A12, 0b01) == ({1}, {3})
    assert diff_sets(A12, 0b11) == ({1, 2, 3}, set())
    assert diff_sets(A12, 0b00) == (set(), {1, 2, 3})


def test_diff_sets_rejects_bad_mask():
    with pytest.raises(ValueError):
        diff_sets(A12, 4)


def test_const_witness_examples():
    assert const_witness(A12, 0b01, 7, 9).graph == {1: 7, 3: 9}
    assert const_witness(A12, 0b11, 7, 9).graph == {1: 7, 2: 7, 3: 7}
    assert const_witness(Collection([{1}, {2}]), 0b10, 0, 1).graph == {2: 0, 1: 1}
    with pytest.raises(ValueError):
        const_witness(A12, 1, 4, 4)


def test_criterion_examples():
    # unrestricted separators: any set disjoint from Q will do
    v = criterion_check([{1}, {3}], lambda P, Q: P if not P & Q else None)
    assert v.holds and separates(v.separators[1], {1}, {3})

    T = FiniteTopology.indiscrete(["a", "b"])
    v = criterion_check([{"a"}, {"b"}], lambda P, Q: open_separator(T, P, Q))
    assert not v.holds and 1 in v.failures

    v = criterion_check([{1, 2}], lambda P, Q: None)
    assert v.holds and v.failures == []


def test_relevant_core_examples():
    assert relevant_core([{"p", "q"}], lambda x: x == "p") == Collection([{"p"}])
    assert relevant_core(A12, lambda x: True) == A12
    assert relevant_core([set()], lambda x: True) == Collection([set()])


@st.composite
def collection_and_mask(draw):
    members = draw(st.lists(st.frozensets(st.integers(0, 9), max_size=6), min_size=1, max_size=4))
    K = draw(st.integers(0, (1 << len(members)) - 1))
    return Collection(members), K


@st.composite
def valid_separator(draw):
    A, K = draw(collection_and_mask())
    P, Q = diff_sets(A, K)
    extra = draw(st.frozensets(st.integers(0, 12), max_size=8))
    return A, K, P | (extra - Q)


@given(valid_separator())
def test_lemma_separator_inside_union(case):
    A, K, H = case
    assert A.ground & H <= A.union_of(K)


@given(valid_separator())
def test_lemma_points_with_all_their_members_in_K(case):
    A, K, H = case
    for x in A.ground:
        if A.containing(x) & ~K == 0:
            assert x in H


@given(collection_and_mask(), st.integers(0, 5), st.integers(6, 9))
def test_witness_is_constant_on_members(case, c1, c2):
    A, K = case
    w = const_witness(A, K, c1, c2)
    assert w.domain <= A.ground
    for m in A:
        assert len(set(w.restrict(m).values())) <= 1


def test_one_element_range_instance():
    A = [{0, 1}, {1, 2}]
    assert jp_bruteforce(A, constant_range, [0, 1]).verdict
    res = sjp_bruteforce(A, constant_range, [0, 1])
    assert not res.verdict
    f = res.counterexample
    assert all(constant_range(restrict(f, m)) for m in A) and not constant_range(f)


def test_brute_force_cap():
    from joinperm.errors import InstanceTooLarge

    with pytest.raises(InstanceTooLarge):
        sjp_bruteforce([set(range(20))], constant_range, [0, 1, 2], cap=1000)


@given(st.lists(st.frozensets(st.integers(0, 5), max_size=4), min_size=1, max_size=3),
       st.data())
def test_duplicating_a_member_keeps_the_verdicts(members, data):
    A = Collection(members)
    i = data.draw(st.integers(0, len(members) - 1))
    B = A.appended(members[i])
    oracle = lambda P, Q: P if len(P) <= 2 else None  # noqa: E731 - a restricted family
    assert criterion_check(A, oracle).holds == criterion_check(B, oracle).holds
    assert (sjp_bruteforce(A, constant_range, [0, 1]).verdict
            == sjp_bruteforce(B, constant_range, [0, 1]).verdict)
