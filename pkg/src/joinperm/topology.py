"""Finite topological spaces and the open-separator criterion.

A partial map between finite spaces is a plain dict.  The brute-force side of
:func:`theorem_tcont_check` enumerates every partial map on the union of the
collection, so keep instances small (see ``cap``).
"""

import random
from dataclasses import dataclass
from functools import reduce

from .join import (
    DEFAULT_CAP,
    as_collection,
    criterion_check,
    jp_bruteforce,
    sjp_bruteforce,
)


class FiniteTopology:
    def __init__(self, carrier, opens):
        self.carrier = frozenset(carrier)
        self.opens = tuple(dict.fromkeys(frozenset(o) for o in opens))

    def __repr__(self):
        return f"FiniteTopology({sorted(self.carrier, key=repr)}, {len(self.opens)} opens)"

    @classmethod
    def discrete(cls, carrier):
        carrier = list(carrier)
        subsets = [frozenset(x for i, x in enumerate(carrier) if m >> i & 1)
                   for m in range(1 << len(carrier))]
        return cls(carrier, subsets)

    @classmethod
    def indiscrete(cls, carrier):
        return cls(carrier, [frozenset(), frozenset(carrier)])

    @classmethod
    def sierpinski(cls, open_point, other_point):
        return cls([open_point, other_point],
                   [frozenset(), {open_point}, {open_point, other_point}])

    @classmethod
    def generated(cls, carrier, family):
        """Close ``family`` under pairwise union and intersection, adding the
        empty set and the carrier."""
        carrier = frozenset(carrier)
        opens = {frozenset(), carrier} | {frozenset(s) & carrier for s in family}
        while True:
            new = {a | b for a in opens for b in opens} | {a & b for a in opens for b in opens}
            if new <= opens:
                break
            opens |= new
        return cls(carrier, sorted(opens, key=lambda s: (len(s), sorted(s, key=repr))))

    def interior_union(self, avoid):
        """Union of all opens disjoint from ``avoid``."""
        avoid = frozenset(avoid)
        return reduce(frozenset.union, (o for o in self.opens if not o & avoid), frozenset())

    def is_nontrivial(self):
        return any(o and o != self.carrier for o in self.opens)


def is_topology(T):
    X, opens = frozenset(T.carrier), set(T.opens)
    if frozenset() not in opens or X not in opens:
        return False
    if any(not o <= X for o in opens):
        return False
    return all(a | b in opens and a & b in opens for a in opens for b in opens)


def is_continuous(f, TX, TY):
    """Every open preimage is the trace on dom(f) of an open set.

    The candidate open is the union of all opens whose trace on dom(f) lies
    inside the preimage; if any open works, this one does.
    """
    dom = frozenset(f)
    for V in TY.opens:
        pre = frozenset(x for x, y in f.items() if y in V)
        best = TX.interior_union(dom - pre)
        if dom & best != pre:
            return False
    return True


def open_separator(TX, P, Q):
    """The largest open set avoiding Q, if it contains P; else None."""
    H = TX.interior_union(Q)
    return H if frozenset(P) <= H else None


def continuity_class(TX, TY):
    return lambda f: is_continuous(f, TX, TY)


@dataclass
class TheoremCheck:
    criterion: bool
    bruteforce: bool
    converse_applicable: bool

    def consistent(self):
        if self.criterion and not self.bruteforce:
            return False
        if self.converse_applicable and self.bruteforce and not self.criterion:
            return False
        return True

    def as_dict(self):
        return {"criterion": self.criterion, "bruteforce": self.bruteforce,
                "converse_applicable": self.converse_applicable}


def continuity_criterion(A, TX, skip_trivial=True):
    return criterion_check(A, lambda P, Q: open_separator(TX, P, Q), skip_trivial)


def continuity_sjp(A, TX, TY, cap=DEFAULT_CAP):
    return sjp_bruteforce(A, continuity_class(TX, TY), sorted(TY.carrier, key=repr), cap)


def continuity_jp(A, TX, TY, cap=DEFAULT_CAP):
    return jp_bruteforce(A, continuity_class(TX, TY), sorted(TY.carrier, key=repr), cap)


def theorem_tcont_check(A, TX, TY, cap=DEFAULT_CAP):
    A = as_collection(A)
    return TheoremCheck(
        criterion=continuity_criterion(A, TX).holds,
        bruteforce=continuity_sjp(A, TX, TY, cap).verdict,
        converse_applicable=TY.is_nontrivial(),
    )


def random_topology(rng, carrier, n_generators=None):
    carrier = list(carrier)
    if n_generators is None:
        n_generators = rng.randint(0, len(carrier) + 1)
    family = [{x for x in carrier if rng.random() < 0.5} for _ in range(n_generators)]
    return FiniteTopology.generated(carrier, family)


def random_instance(rng=None, max_points=5, max_values=3, max_members=3, need_converse=None):
    """A random (A, TX, TY) triple.

    ``need_converse`` forces TY to have (True) or lack (False) an open set
    other than the empty set and the whole space.
    """
    rng = rng or random.Random()
    X = list(range(rng.randint(1, max_points)))
    TX = random_topology(rng, X)
    while True:
        Y = [f"y{i}" for i in range(rng.randint(1, max_values))]
        TY = random_topology(rng, Y)
        if need_converse is None or TY.is_nontrivial() == need_converse:
            break
        if need_converse is False:
            TY = FiniteTopology.indiscrete(Y)
            break
    A = [{x for x in X if rng.random() < 0.5} for _ in range(rng.randint(1, max_members))]
    return as_collection(A), TX, TY
