"""Gluing step-budgeted partial functions over tuples of naturals.

Members of a collection, and the separators between them, are enumerations of
tuple codes (see :func:`joinperm.coding.encode_tuple`).  ``glue_eval`` searches
stages in order and returns the first value licensed by some separator, which
makes the uniformizing selection deterministic.
"""

from dataclasses import dataclass

from .coding import encode_tuple
from .enumeration import Enumeration, intersection, union
from .join import SeparatorTable


class PartialEvaluator:
    """A partial function evaluated under a step budget.

    ``fn(x, budget)`` returns the value, or None when the computation has not
    halted within ``budget`` steps.  It must be determinate: once a value is
    returned, every larger budget returns the same value.
    """

    def __init__(self, fn, label=None):
        self._fn = fn
        self.label = label

    def __call__(self, x, budget):
        return self._fn(_as_tuple(x), budget)

    def __repr__(self):
        return f"<PartialEvaluator {self.label or ''}>"

    @classmethod
    def total(cls, fn, cost=lambda x: 1):
        """Halts on every input after ``cost(x)`` steps."""

        def run(x, budget):
            return fn(*x) if budget >= cost(x) else None

        return cls(run, label=getattr(fn, "__name__", None))

    @classmethod
    def from_table(cls, table, delays=None, default_delay=1):
        """Defined exactly on the keys of ``table``; diverges elsewhere."""
        table = {_as_tuple(k): v for k, v in table.items()}
        delays = {_as_tuple(k): d for k, d in (delays or {}).items()}

        def run(x, budget):
            if x in table and budget >= delays.get(x, default_delay):
                return table[x]
            return None

        return cls(run, label="table")

    @classmethod
    def constant(cls, c):
        return cls.total(lambda *x: c)


def _as_tuple(x):
    return (x,) if isinstance(x, int) else tuple(x)


@dataclass
class GlueInstance:
    arity: int
    pieces: list
    separators: SeparatorTable

    def __post_init__(self):
        full = (1 << len(self.pieces)) - 1
        missing = [K for K in range(1, full) if K not in self.separators]
        if missing:
            raise ValueError(f"no separator for masks {missing}")


def whole_space():
    return Enumeration.naturals()


def glue_eval(G, x, budget):
    """Value of the glued function at ``x`` or None if not found within budget.

    None means "not yet known"; it never certifies that x is outside the
    domain.
    """
    x = _as_tuple(x)
    if len(x) != G.arity:
        raise ValueError(f"expected a {G.arity}-tuple, got {x}")
    code = encode_tuple(x)
    r = len(G.pieces)
    full = (1 << r) - 1
    ground = G.separators.get(full) or whole_space()
    for stage in range(1, budget + 1):
        for K in range(1, full + 1):
            H = ground if K == full else G.separators[K]
            if not H.semidecide(code, stage):
                continue
            y = _common_value(G.pieces, K, x, stage)
            if y is not None:
                return y
    return None


def _common_value(pieces, K, x, stage):
    y = None
    for i, phi in enumerate(pieces):
        if not K >> i & 1:
            continue
        v = phi(x, stage)
        if v is None or (y is not None and v != y):
            return None
        y = v
    return y


def separators_from_re(members):
    """H_K is the union of the members selected by K."""
    members = list(members)
    table = SeparatorTable()
    for K in range(1, 1 << len(members)):
        table[K] = union(*(e for i, e in enumerate(members) if K >> i & 1))
    return table


def separators_from_complements(E, include_empty=False, ground=None):
    """Separators for the collection of complements of the enumerations ``E``.

    For a mask K other than the full one, H_K is the intersection of the E_j
    whose complement is not selected by K.  The full mask gets ``ground``.
    """
    E = list(E)
    full = (1 << len(E)) - 1
    table = SeparatorTable()
    for K in range(0 if include_empty else 1, full + 1):
        if K == full:
            table[K] = ground if ground is not None else whole_space()
        else:
            table[K] = intersection(*(e for j, e in enumerate(E) if not K >> j & 1))
    return table


def simple_glue_eval(pieces, x, budget):
    """Glue for collections of enumerable members: the first member seen to
    contain ``x`` whose piece halts decides the value."""
    x = _as_tuple(x)
    code = encode_tuple(x)
    for stage in range(1, budget + 1):
        for member, phi in pieces:
            if member.semidecide(code, stage):
                y = phi(x, stage)
                if y is not None:
                    return y
    return None
