"""Collections, subcollection masks and the separator criterion skeleton.

Subcollections are index bitmasks over the member list, so duplicated members
are distinct indices.  Everything here works over explicit finite sets; the
model modules plug in their own separator oracles and class oracles.
"""

from dataclasses import dataclass, field
from itertools import combinations, product

from .errors import InstanceTooLarge

DEFAULT_CAP = 200_000


class Collection:
    """An indexed list of finite sets (duplicates allowed)."""

    def __init__(self, members, names=None):
        self.members = tuple(frozenset(m) for m in members)
        if names is not None and len(names) != len(self.members):
            raise ValueError("names and members differ in length")
        self.names = tuple(names) if names is not None else None

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def __eq__(self, other):
        return isinstance(other, Collection) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"Collection({[sorted(m, key=repr) for m in self.members]})"

    @property
    def full_mask(self):
        return (1 << len(self.members)) - 1

    def masks(self, skip_trivial=True):
        """Subcollection masks in ascending order."""
        full = self.full_mask
        for k in range(full + 1):
            if skip_trivial and (k == 0 or k == full):
                continue
            yield k

    def union_of(self, mask):
        out = set()
        for i, m in enumerate(self.members):
            if mask >> i & 1:
                out |= m
        return frozenset(out)

    @property
    def ground(self):
        return self.union_of(self.full_mask)

    def containing(self, x):
        """Mask of the members containing ``x``."""
        mask = 0
        for i, m in enumerate(self.members):
            if x in m:
                mask |= 1 << i
        return mask

    def appended(self, member):
        return Collection(self.members + (frozenset(member),))


def as_collection(A):
    return A if isinstance(A, Collection) else Collection(A)


def diff_sets(A, K):
    """The pair (P, Q) that a separator for mask K must split.

    P is the part of the union of K outside every other member, Q the part of
    the union of the other members outside every member of K.
    """
    A = as_collection(A)
    if K < 0 or K > A.full_mask:
        raise ValueError(f"mask {K} out of range for {len(A)} members")
    inside = A.union_of(K)
    outside = A.union_of(A.full_mask & ~K)
    return inside - outside, outside - inside


@dataclass(frozen=True)
class TwoValuedWitness:
    """The map sending P(K) to ``c1`` and Q(K) to ``c2``."""

    graph: dict
    c1: object
    c2: object

    @property
    def domain(self):
        return frozenset(self.graph)

    def restrict(self, member):
        return {x: y for x, y in self.graph.items() if x in member}


def const_witness(A, K, c1, c2):
    if c1 == c2:
        raise ValueError("the two witness values must differ")
    P, Q = diff_sets(A, K)
    graph = {x: c1 for x in P}
    graph.update({x: c2 for x in Q})
    return TwoValuedWitness(graph, c1, c2)


class SeparatorTable(dict):
    """Map from subcollection mask to its separator."""

    def failures(self, A, as_set=lambda h: h):
        """Masks whose stored separator does not split (P, Q)."""
        bad = []
        for K, H in sorted(self.items()):
            P, Q = diff_sets(A, K)
            H = frozenset(as_set(H))
            if not (P <= H and not (H & Q)):
                bad.append(K)
        return bad


def separates(H, P, Q):
    H = frozenset(H)
    return frozenset(P) <= H and not (H & frozenset(Q))


@dataclass
class Verdict:
    holds: bool
    separators: SeparatorTable = field(default_factory=SeparatorTable)
    failures: list = field(default_factory=list)


def criterion_check(A, sep_oracle, skip_trivial=True):
    """Ask ``sep_oracle(P, Q)`` for a separator at every subcollection mask.

    The oracle returns a separator or None.  Trivial masks (empty and full)
    are skipped by default since a separator always exists for them; when
    included they are still put to the oracle.
    """
    A = as_collection(A)
    table = SeparatorTable()
    failures = []
    for K in A.masks(skip_trivial):
        H = sep_oracle(*diff_sets(A, K))
        if H is None:
            failures.append(K)
        else:
            table[K] = H
    holds = not failures
    return Verdict(holds, table if holds else SeparatorTable(), failures)


def relevant_core(A, in_some_domain):
    """Shrink every member to the points some class member is defined at."""
    A = as_collection(A)
    return Collection([{x for x in m if in_some_domain(x)} for m in A],
                      names=A.names)


def restrict(f, member):
    return {x: y for x, y in f.items() if x in member}


@dataclass
class BruteForceVerdict:
    verdict: bool
    counterexample: dict = None
    checked: int = 0


def _candidates(points, values, total, cap):
    n, choices = len(points), len(values) + (0 if total else 1)
    count = choices ** n
    if count > cap:
        raise InstanceTooLarge(f"{count} candidate functions exceed the cap {cap}")
    sizes = [n] if total else range(n + 1)
    for size in sizes:
        for dom in combinations(points, size):
            for vals in product(values, repeat=size):
                yield dict(zip(dom, vals))


def _join_bruteforce(A, class_oracle, values, total, cap):
    A = as_collection(A)
    points = sorted(A.ground, key=repr)
    values = list(values)
    memo = {}

    def in_class(g):
        key = frozenset(g.items())
        if key not in memo:
            memo[key] = bool(class_oracle(g))
        return memo[key]

    checked = 0
    for f in _candidates(points, values, total, cap):
        checked += 1
        if all(in_class(restrict(f, m)) for m in A) and not in_class(f):
            return BruteForceVerdict(False, f, checked)
    return BruteForceVerdict(True, None, checked)


def sjp_bruteforce(A, class_oracle, values, cap=DEFAULT_CAP):
    """Exhaustive strong-join-permitting check over partial maps into ``values``.

    Candidates run by increasing domain size, so a returned counterexample has
    a minimal domain.
    """
    return _join_bruteforce(A, class_oracle, values, False, cap)


def jp_bruteforce(A, class_oracle, values, cap=DEFAULT_CAP):
    """As :func:`sjp_bruteforce` but only for maps defined on all of the union."""
    return _join_bruteforce(A, class_oracle, values, True, cap)


def constant_range(f):
    """Class of partial maps whose range has exactly one element."""
    return len(set(f.values())) == 1
