"""Deterministic, fair enumerations standing for recursively enumerable sets.

An :class:`Enumeration` is a pure map from step indices to items, where a step
may also *pause* (emit nothing).  Pauses keep composite enumerations total per
step, so unions, intersections and products can be dovetailed without ever
blocking on a factor that has gone quiet.

An enumeration may declare a *horizon*: an index from which on every step
pauses.  Finite sets get one for free, and the combinators propagate it, which
lets desk-scale models compute limits exactly.
"""

from .coding import pair, unpair


class _Pause:
    __slots__ = ()

    def __repr__(self):
        return "PAUSE"

    def __reduce__(self):
        return "PAUSE"


PAUSE = _Pause()


class Enumeration:
    """A stream ``step(0), step(1), ...`` of items or :data:`PAUSE`.

    ``step_fn`` must be a pure function of the index.  Results are memoized, so
    repeated membership queries against a growing budget cost amortized O(1).
    """

    def __init__(self, step_fn, horizon=None, label=None):
        self._step_fn = step_fn
        self.horizon = horizon
        self.label = label
        self._cache = []
        self._first = {}

    def __repr__(self):
        name = self.label or "Enumeration"
        return f"<{name} horizon={self.horizon}>"

    # constructors

    @classmethod
    def from_items(cls, items, label=None):
        """Enumerate an explicit finite collection in the given order."""
        items = tuple(dict.fromkeys(items))
        n = len(items)
        return cls(lambda i: items[i] if i < n else PAUSE, horizon=n,
                   label=label or "finite")

    @classmethod
    def empty(cls):
        return cls(lambda i: PAUSE, horizon=0, label="empty")

    @classmethod
    def from_predicate(cls, pred, label=None):
        """Enumerate ``{i | pred(i)}`` for a decidable predicate on naturals."""
        return cls(lambda i: i if pred(i) else PAUSE, label=label)

    @classmethod
    def naturals(cls):
        return cls(lambda i: i, label="naturals")

    # observation

    def step(self, i):
        if i < 0:
            raise ValueError("negative step index")
        if self.horizon is not None and i >= self.horizon:
            return PAUSE
        cache = self._cache
        while len(cache) <= i:
            j = len(cache)
            item = self._step_fn(j)
            cache.append(item)
            if item is not PAUSE and item not in self._first:
                self._first[item] = j
        return cache[i]

    def at(self, i):
        """Step i computed directly, without filling the cache up to it."""
        if self.horizon is not None and i >= self.horizon:
            return PAUSE
        if i < len(self._cache):
            return self._cache[i]
        return self._step_fn(i)

    def _advance(self, budget):
        if self.horizon is not None:
            budget = min(budget, self.horizon)
        if budget > 0:
            self.step(budget - 1)
        return budget

    def semidecide(self, x, budget):
        """True iff ``x`` is emitted by one of the first ``budget`` steps.

        False means "unknown", never "not a member".
        """
        self._advance(budget)
        j = self._first.get(x)
        return j is not None and j < budget

    def first_index(self, x, budget):
        """Step index of the first emission of ``x`` below ``budget``, or None."""
        self._advance(budget)
        j = self._first.get(x)
        return j if j is not None and j < budget else None

    def prefix(self, budget):
        """Items emitted below ``budget`` in emission order (with repeats)."""
        budget = self._advance(budget)
        return [x for x in self._cache[:budget] if x is not PAUSE]

    def seen(self, budget):
        return set(self.prefix(budget))

    @property
    def is_finite(self):
        return self.horizon is not None

    def limit(self):
        """The whole enumerated set; requires a horizon."""
        if self.horizon is None:
            raise ValueError(f"{self!r} has no horizon; its limit is not computable")
        return frozenset(self.prefix(self.horizon))


def semidecide(enum, x, budget):
    return enum.semidecide(x, budget)


def union(*enums):
    """Dovetailed union: step i reads factor ``i % r`` at step ``i // r``."""
    enums = tuple(enums)
    r = len(enums)
    if r == 0:
        return Enumeration.empty()
    if r == 1:
        return enums[0]
    horizon = None
    if all(e.horizon is not None for e in enums):
        horizon = r * max(e.horizon for e in enums)
    return Enumeration(lambda i: enums[i % r].step(i // r), horizon=horizon,
                       label="union")


def intersection(*enums):
    """Dovetailed intersection of one or more enumerations.

    Step ``pair(j, s)`` emits the j-th item of the first factor exactly when
    ``s`` is the least budget at which every other factor has emitted it too.
    Each confirmed item is therefore emitted once per occurrence in the first
    factor, which keeps the horizon finite for finite factors.
    """
    enums = tuple(enums)
    if not enums:
        raise ValueError("intersection of no enumerations is not defined")
    if len(enums) == 1:
        return enums[0]
    head, rest = enums[0], enums[1:]

    def confirmed(x, s):
        return all(e.semidecide(x, s) for e in rest)

    def step(i):
        j, s = unpair(i)
        x = head.step(j)
        if x is PAUSE or not confirmed(x, s) or (s > 0 and confirmed(x, s - 1)):
            return PAUSE
        return x

    horizon = None
    if all(e.horizon is not None for e in enums):
        if head.horizon == 0:
            horizon = 0
        else:
            horizon = pair(head.horizon - 1, max(e.horizon for e in rest)) + 1
    return Enumeration(step, horizon=horizon, label="intersection")


def product_map(e1, e2, fn):
    """Enumerate ``fn(a, b)`` for every emitted ``a`` of e1 and ``b`` of e2."""

    def step(i):
        a, b = unpair(i)
        x, y = e1.step(a), e2.step(b)
        if x is PAUSE or y is PAUSE:
            return PAUSE
        return fn(x, y)

    horizon = None
    if e1.horizon is not None and e2.horizon is not None:
        if e1.horizon == 0 or e2.horizon == 0:
            horizon = 0
        else:
            horizon = pair(e1.horizon - 1, e2.horizon - 1) + 1
    return Enumeration(step, horizon=horizon, label="product")


def mapped(enum, fn):
    def step(i):
        x = enum.step(i)
        return PAUSE if x is PAUSE else fn(x)

    return Enumeration(step, horizon=enum.horizon, label="mapped")


def filtered(enum, pred):
    def step(i):
        x = enum.step(i)
        return x if x is not PAUSE and pred(x) else PAUSE

    return Enumeration(step, horizon=enum.horizon, label="filtered")
