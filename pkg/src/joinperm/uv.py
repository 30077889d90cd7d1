"""Computability relative to a pair of indexed families (U, V).

A point is observed through its U-name, the set of indices k with x in U_k.
Finite intersections of U-members are addressed by codes m via D_m, and a
function is computable when an enumerable set W of pairs (m, l) turns every
name of x into a name of f(x).

The "desk model" keeps U and V finite, bounds codes m below 2**K and
indices l below L, and wraps every W and S in an enumeration with a horizon,
so all limits are exactly computable while the stream semantics stay intact.
"""

import random
from dataclasses import dataclass
from functools import lru_cache

from .coding import dset_decode, dset_subset, pair, unpair
from .enumeration import PAUSE, Enumeration, filtered, mapped, product_map, union
from .join import (
    DEFAULT_CAP,
    as_collection,
    criterion_check,
    diff_sets,
    sjp_bruteforce,
)
from .topology import TheoremCheck


class IndexedFamily:
    """A finite sequence of sets U_0, ..., U_{K-1}."""

    def __init__(self, members):
        self.members = tuple(frozenset(m) for m in members)

    def __len__(self):
        return len(self.members)

    def __getitem__(self, k):
        return self.members[k]

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        return isinstance(other, IndexedFamily) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"IndexedFamily({[sorted(m, key=repr) for m in self.members]})"

    @property
    def ground(self):
        return frozenset().union(*self.members)

    def inverse(self, x):
        return frozenset(k for k, m in enumerate(self.members) if x in m)

    def inverse_mask(self, x):
        mask = 0
        for k, m in enumerate(self.members):
            if x in m:
                mask |= 1 << k
        return mask


def as_family(U):
    return U if isinstance(U, IndexedFamily) else IndexedFamily(U)


def name_of(x, U):
    """The U-name of x, listing its indices in ascending order."""
    U = as_family(U)
    ks = sorted(U.inverse(x))
    if not ks:
        raise ValueError(f"{x!r} lies in no member of the family")
    return Enumeration.from_items(ks, label=f"name({x!r})")


def u_hat(U, m):
    """Intersection of the U_k with k in D_m; the whole ground set for m = 0."""
    U = as_family(U)
    if m >> len(U):
        raise ValueError(f"code {m} mentions an index beyond the {len(U)} members")
    return frozenset(x for x in U.ground if dset_subset(m, U.inverse_mask(x)))


def in_hat(U, x, m):
    """x lies in the m-th finite intersection (codes past K denote the empty set)."""
    return x in U.ground and dset_subset(m, U.inverse_mask(x))


class ApproxSystem:
    """An enumerable set W of pairs (m, l), stored as pair codes."""

    def __init__(self, enum):
        self.W = enum

    def __repr__(self):
        return f"ApproxSystem({self.W!r})"

    @classmethod
    def from_pairs(cls, pairs):
        codes = sorted(pair(m, l) for m, l in pairs)
        return cls(Enumeration.from_items(codes, label="W"))

    def pairs(self, budget=None):
        codes = self.W.limit() if budget is None else self.W.seen(budget)
        return {unpair(p) for p in codes}


def apply_approx(W, name, budget):
    """Indices l licensed by what W and the name have shown within ``budget``."""
    seen = 0
    for k in name.seen(budget):
        seen |= 1 << k
    return {l for m, l in W.pairs(budget) if dset_subset(m, seen)}


def approx_limit(W, inverse_mask):
    """The limit of :func:`apply_approx` for a point with the given U-index mask."""
    return {l for m, l in W.pairs() if dset_subset(m, inverse_mask)}


def check_approx(W, f, U, V, L=None):
    """W certifies f: f(x) in V_l iff some (m, l) in W has x in the m-th
    intersection, for every x in dom(f) and l < L."""
    U, V = as_family(U), as_family(V)
    L = len(V) if L is None else L
    pairs = W.pairs()
    for x, y in f.items():
        inv = U.inverse_mask(x)
        licensed = {l for m, l in pairs if dset_subset(m, inv)}
        for l in range(L):
            if (y in V[l]) != (l in licensed):
                return False
    return True


def const_approx(c, V, k_bound=0):
    """W = (codes below 2**k_bound) x V^{-1}(c); certifies every map into {c}."""
    V = as_family(V)
    ls = V.inverse(c)
    if not ls:
        raise ValueError(f"{c!r} lies in no member of V")
    return ApproxSystem.from_pairs((m, l) for m in range(1 << k_bound) for l in ls)


@dataclass
class EffUnion:
    """The union of the finite intersections coded by an enumerable set S."""

    S: Enumeration

    @classmethod
    def from_codes(cls, codes):
        return cls(Enumeration.from_items(sorted(codes), label="S"))

    @classmethod
    def empty(cls):
        return cls(Enumeration.empty())

    @classmethod
    def whole(cls):
        return cls.from_codes([0])

    def codes(self):
        return self.S.limit()

    def denoted(self, U):
        U = as_family(U)
        codes = self.codes()
        return frozenset(x for x in U.ground
                         if any(dset_subset(m, U.inverse_mask(x)) for m in codes))

    def semidecide(self, name, budget):
        """x is in the union, judged from a name of x and this budget."""
        seen = 0
        for k in name.seen(budget):
            seen |= 1 << k
        return any(dset_subset(m, seen) for m in self.S.prefix(budget))


def preimage_union(W, l):
    """S = {m | (m, l) in W}; W certifies f implies f^{-1}(V_l) = dom(f) & union."""
    sel = filtered(W.W, lambda p: unpair(p)[1] == l)
    return EffUnion(mapped(sel, lambda p: unpair(p)[0]))


def eff_union_union(E1, E2):
    return EffUnion(union(E1.S, E2.S))


def eff_union_intersect(E1, E2):
    # the m1-th and m2-th intersections meet in the (m1 | m2)-th one
    return EffUnion(product_map(E1.S, E2.S, lambda a, b: a | b))


def _prefix_pairs(W, s):
    return [unpair(p) for p in W.W.prefix(s)]


def _gated_W(W_list, gates, m_bound, l_bound):
    """Enumerate (mt, l) such that some gate (K, S) admits a code m in S with
    D_m inside D_mt, and every W_A with A in K has some (m, l) with D_m inside
    D_mt.

    Step pair(a, s) decides candidate a with every constituent read up to
    budget s, and emits only at the least such s.
    """
    bounded = m_bound is not None and l_bound is not None

    def holds(mt, l, s):
        if s <= 0:
            return False
        for K, S in gates:
            if not any(dset_subset(m, mt) for m in S.S.prefix(s)):
                continue
            if all(any(l2 == l and dset_subset(m, mt) for m, l2 in _prefix_pairs(W_list[i], s))
                   for i in range(len(W_list)) if K >> i & 1):
                return True
        return False

    def step(i):
        a, s = unpair(i)
        if bounded:
            if a >= m_bound * l_bound:
                return PAUSE
            mt, l = divmod(a, l_bound)
        else:
            mt, l = unpair(a)
        if holds(mt, l, s) and not holds(mt, l, s - 1):
            return pair(mt, l)
        return PAUSE

    horizon = None
    constituents = [W.W for W in W_list] + [S.S for _, S in gates]
    if bounded and all(e.horizon is not None for e in constituents):
        if m_bound * l_bound == 0:
            horizon = 0
        else:
            s_max = max([e.horizon for e in constituents], default=0)
            horizon = pair(m_bound * l_bound - 1, s_max) + 1
    return ApproxSystem(Enumeration(step, horizon=horizon, label="combined W"))


def combine_W(W_list, S_table, m_bound=None, l_bound=None):
    """Glue approximation systems of the pieces into one for the whole map.

    ``S_table`` maps masks to effective unions (the separators).  The empty
    mask defaults to the empty union and the full mask to the whole ground
    set.  With ``m_bound`` and ``l_bound`` the candidates are restricted to
    the desk model and the result has a horizon.
    """
    W_list = list(W_list)
    full = (1 << len(W_list)) - 1
    gates = []
    for K in range(full + 1):
        if K in S_table:
            S = S_table[K]
        elif K == 0:
            S = EffUnion.empty()
        elif K == full:
            S = EffUnion.whole()
        else:
            raise ValueError(f"no separator for mask {K}")
        gates.append((K, S))
    return _gated_W(W_list, gates, m_bound, l_bound)


def simple_combine_W(W_list, member_unions, m_bound=None, l_bound=None):
    """The single-member variant for collections of effective unions:
    (mt, l) enters when some member is seen to contain the point and its own
    W licenses l."""
    gates = [(1 << i, E) for i, E in enumerate(member_unions)]
    return _gated_W(list(W_list), gates, m_bound, l_bound)


def separators_from_eff_unions(members):
    """H_K is the union of the selected members."""
    members = list(members)
    table = {}
    for K in range(1, 1 << len(members)):
        table[K] = EffUnion(union(*(E.S for i, E in enumerate(members) if K >> i & 1)))
    return table


def complement_separators_uv(E_list, include_empty=True):
    """Separators for the collection of complements (within the ground set)
    of the effective unions in ``E_list``."""
    E_list = list(E_list)
    full = (1 << len(E_list)) - 1
    table = {}
    for K in range(0 if include_empty else 1, full + 1):
        if K == full:
            table[K] = EffUnion.whole()
            continue
        table[K] = _intersect_all([E for j, E in enumerate(E_list) if not K >> j & 1])
    return table


def _intersect_all(Es):
    # balanced, so a point needs a pairing index of moderate depth
    if len(Es) == 1:
        return Es[0]
    h = len(Es) // 2
    return eff_union_intersect(_intersect_all(Es[:h]), _intersect_all(Es[h:]))


class DeskModel:
    """Bitmask tables for a finite (U, V) pair, used by the brute-force oracle."""

    def __init__(self, U, V):
        self.U, self.V = as_family(U), as_family(V)
        self.points = sorted(self.U.ground, key=repr)
        self.index = {x: i for i, x in enumerate(self.points)}
        K = len(self.U)
        inv = [self.U.inverse_mask(x) for x in self.points]
        self.hats = []
        for m in range(1 << K):
            mask = 0
            for i, im in enumerate(inv):
                if dset_subset(m, im):
                    mask |= 1 << i
            self.hats.append(mask)
        self.values = self.V.ground

    def point_mask(self, xs):
        mask = 0
        for x in xs:
            mask |= 1 << self.index[x]
        return mask

    def preimage_cover(self, dom, pre):
        """Union of all finite intersections whose trace on dom lies in pre."""
        T = 0
        for h in self.hats:
            if dom & h & ~pre == 0:
                T |= h
        return T

    def computable(self, f):
        if any(x not in self.index for x in f) or any(y not in self.values for y in f.values()):
            return False
        dom = self.point_mask(f)
        for Vl in self.V:
            pre = self.point_mask(x for x, y in f.items() if y in Vl)
            if dom & self.preimage_cover(dom, pre) != pre:
                return False
        return True

    def approx_for(self, f):
        """The W assembled from the maximal covers, one per index l."""
        dom = self.point_mask(f)
        pairs = []
        for l, Vl in enumerate(self.V):
            pre = self.point_mask(x for x, y in f.items() if y in Vl)
            pairs += [(m, l) for m, h in enumerate(self.hats) if dom & h & ~pre == 0]
        return ApproxSystem.from_pairs(pairs)


@lru_cache(maxsize=256)
def desk_model(U, V):
    return DeskModel(U, V)


def uv_computable_bruteforce(f, U, V):
    """Decide (U, V)-computability of a finite partial map in the desk model.

    For every l, the preimage of V_l must be the trace on dom(f) of the union
    of all finite intersections whose trace stays inside that preimage.
    """
    return desk_model(as_family(U), as_family(V)).computable(f)


def uv_class(U, V):
    model = desk_model(as_family(U), as_family(V))
    return model.computable


def eff_union_separator(U, P, Q):
    """The maximal effective union avoiding Q, if it covers P; else None."""
    U = as_family(U)
    Q = frozenset(Q)
    codes = [m for m in range(1 << len(U)) if not (u_hat(U, m) & Q)]
    H = frozenset().union(*(u_hat(U, m) for m in codes)) if codes else frozenset()
    return EffUnion.from_codes(codes) if frozenset(P) <= H else None


def uv_criterion(A, U, skip_trivial=True):
    return criterion_check(A, lambda P, Q: eff_union_separator(U, P, Q), skip_trivial)


def uv_sjp(A, U, V, cap=DEFAULT_CAP):
    V = as_family(V)
    return sjp_bruteforce(A, uv_class(U, V), sorted(V.ground, key=repr), cap)


def converse_applicable(V):
    V = as_family(V)
    return any(V1 and (V2 - V1) for V1 in V for V2 in V)


def theorem_tcomp_check(A, U, V, cap=DEFAULT_CAP):
    A = as_collection(A)
    return TheoremCheck(
        criterion=uv_criterion(A, U).holds,
        bruteforce=uv_sjp(A, U, V, cap).verdict,
        converse_applicable=converse_applicable(V),
    )


def separator_table_valid(A, table, U):
    """Every stored effective union splits its mask's (P, Q)."""
    A = as_collection(A)
    for K, H in table.items():
        P, Q = diff_sets(A, K)
        D = H.denoted(U)
        if not (P <= D and not (D & Q)):
            return False
    return True


def random_desk_model(rng=None, max_points=6, max_u=3, max_values=3, max_members=3,
                      need_converse=True):
    rng = rng or random.Random()
    points = list(range(rng.randint(1, max_points)))
    while True:
        U = IndexedFamily([{x for x in points if rng.random() < 0.55}
                           for _ in range(rng.randint(1, max_u))])
        if U.ground:
            break
    values = [f"v{i}" for i in range(rng.randint(1, max_values))]
    while True:
        V = IndexedFamily([{y for y in values if rng.random() < 0.5}
                           for _ in range(rng.randint(1, max_values))])
        if V.ground and (not need_converse or converse_applicable(V)):
            break
        if need_converse and len(values) == 1:
            values.append(f"v{len(values)}")
    ground = sorted(U.ground)
    A = as_collection([{x for x in ground if rng.random() < 0.5}
                       for _ in range(rng.randint(1, max_members))])
    return A, U, V
