import random

import pytest
from hypothesis import settings

from joinperm.enumeration import Enumeration
from joinperm.prf import PartialEvaluator

settings.register_profile("default", max_examples=1000, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(20261015)


def random_member(rng, N):
    """A random finite subset of range(N) or an arithmetic progression in it,
    as (set, enumeration)."""
    if rng.random() < 0.5:
        p = rng.uniform(0.1, 0.6)
        S = {x for x in range(N) if rng.random() < p}
        return S, Enumeration.from_items(sorted(S))
    a, d = rng.randrange(N), rng.randint(1, 7)
    S = set(range(a, N, d))
    return S, Enumeration.from_predicate(lambda n: n < N and n >= a and (n - a) % d == 0)


def random_glue_instance(rng, N=50, max_members=3, max_delay=8):
    """Members, pieces and the target map f for a consistent glue instance.

    Each piece extends f on its member and behaves arbitrarily (or diverges)
    everywhere else, so pieces may disagree off dom(f).
    """
    r = rng.randint(1, max_members)
    sets, enums = zip(*(random_member(rng, N) for _ in range(r)))
    ground = sorted(set().union(*sets))
    f = {x: rng.randrange(10) for x in ground if rng.random() < 0.7}
    pieces = []
    for S in sets:
        table = {x: rng.randrange(10) for x in range(N) if rng.random() < 0.5}
        table.update({x: f[x] for x in S if x in f})
        delays = {x: rng.randint(1, max_delay) for x in table}
        pieces.append(PartialEvaluator.from_table(table, delays))
    bound = r * N + max_delay + 1
    return list(sets), list(enums), pieces, f, bound
