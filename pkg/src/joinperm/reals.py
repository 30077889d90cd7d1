"""Exact-real demonstrations over rational open intervals.

Both the input and output families are the rational open intervals, so a
real number is given by a *name*: an enumeration of interval codes covering
exactly the intervals that contain it.  All arithmetic is on
:class:`fractions.Fraction`; the series evaluation works on dyadic
fixed-point integers with directed rounding, so every enclosure is rigorous.
"""

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .coding import iter_bits, pair, unpair
from .enumeration import PAUSE, Enumeration
from .errors import BudgetExhausted
from .uv import EffUnion, complement_separators_uv, eff_union_union

MIDDLE_BOUND = Fraction(19, 10)  # a: middle piece is (-a, a)
OUTER_BOUND = Fraction(3, 5)  # b: outer pieces are (b, inf) and (-inf, -b)
DEFAULT_BUDGET = 50_000


class Interval(NamedTuple):
    lo: Fraction
    hi: Fraction

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def contains(self, x):
        """Open-interval membership."""
        return self.lo < x < self.hi

    def strictly_contains(self, other):
        return self.lo < other.lo and other.hi < self.hi

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def as_strings(self):
        return [fmt_rational(self.lo), fmt_rational(self.hi)]


def parse_rational(s):
    return Fraction(s)


def fmt_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# interval codes


def _zig(n):
    return 2 * n if n >= 0 else -2 * n - 1


def _unzig(z):
    return z // 2 if z % 2 == 0 else -(z + 1) // 2


def rat_encode(q):
    q = Fraction(q)
    return pair(_zig(q.numerator), q.denominator - 1)


def rat_decode(c):
    a, b = unpair(c)
    return Fraction(_unzig(a), b + 1)


def _pos_encode(d):
    return pair(d.numerator - 1, d.denominator - 1)


def _pos_decode(c):
    a, b = unpair(c)
    return Fraction(a + 1, b + 1)


def interval_encode(p, q):
    """Canonical code of the open interval (p, q), p < q."""
    p, q = Fraction(p), Fraction(q)
    if not p < q:
        raise ValueError(f"empty interval ({p}, {q})")
    return pair(rat_encode(p), _pos_encode(q - p))


def interval_decode(code):
    """Every natural denotes an interval; unreduced codes repeat canonical ones."""
    a, b = unpair(code)
    p = rat_decode(a)
    return Interval(p, p + _pos_decode(b))


# names


def rat_name(x):
    """A name of the rational x.

    Even steps emit the shrinking neighbourhoods (x - 2**-j, x + 2**-j); odd
    steps scan all codes in ascending order and emit those whose interval
    contains x.  The scan makes the name complete, the neighbourhoods make it
    converge fast.
    """
    x = Fraction(x)

    def step(i):
        j, odd = divmod(i, 2)
        if not odd:
            r = Fraction(1, 1 << j)
            return interval_encode(x - r, x + r)
        return j if interval_decode(j).contains(x) else PAUSE

    return Enumeration(step, label=f"name({fmt_rational(x)})")


def name_intervals(name, budget):
    return [interval_decode(c) for c in name.prefix(budget)]


def eval_to_precision(name, eps, budget_cap=DEFAULT_BUDGET):
    """First emitted interval of width at most ``eps``."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    best = None
    for i in range(budget_cap):
        c = name.step(i)
        if c is PAUSE:
            continue
        I = interval_decode(c)
        if I.width <= eps:
            return I
        if best is None or I.width < best.width:
            best = I
    err = BudgetExhausted(f"no interval of width <= {fmt_rational(eps)} within {budget_cap} steps")
    err.narrowest = best
    raise err


# arctan


def _bits_for(tol):
    """Least t with 2**-t <= tol."""
    t = 0
    while Fraction(1, 1 << t) > tol:
        t += 1
    return t


def _atan_dyadic(a, prec, tol):
    """Integer bounds, in units of 2**-prec, on arctan(a / 2**prec).

    Requires |a| < 2**prec.  Terms are added until the next one is at most
    tol/4; that term also bounds the alternating tail.
    """
    if a < 0:
        lo, hi = _atan_dyadic(-a, prec, tol)
        return -hi, -lo
    if a == 0:
        return 0, 0
    if a >= 1 << prec:
        raise ValueError("series argument must lie in (-1, 1)")
    tn, td = tol.numerator, tol.denominator
    lo = hi = 0
    power = a  # a**(2n+1)
    a2 = a * a
    n = 0
    while True:
        k = 2 * n + 1
        scale = 1 << (prec * (k - 1))  # term in units: power / (scale * k)
        den = scale * k
        # stop once term <= tol/4, i.e. power * 4 * td <= tn * 2**(prec*k) * k
        if power * 4 * td <= tn * (scale << prec) * k:
            tail = -(-power // den)
            return lo - tail, hi + tail
        down, up = power // den, -(-power // den)
        if n % 2 == 0:
            lo, hi = lo + down, hi + up
        else:
            lo, hi = lo - up, hi - down
        power *= a2
        n += 1


def _series_prec(tol):
    tb = _bits_for(tol)
    return tb + 6 + (8 * tb + 64).bit_length()


def atan_series_bounds(y, tol):
    """Rigorous (lo, hi) around arctan(y) for a rational |y| < 1, each within
    tol/2 of the true value."""
    y, tol = Fraction(y), Fraction(tol)
    prec = _series_prec(tol)
    scaled = y * (1 << prec)
    a_down = scaled.numerator // scaled.denominator
    a_up = -(-scaled.numerator // scaled.denominator)
    unit = Fraction(1, 1 << prec)
    lo, _ = _atan_dyadic(a_down, prec, tol)
    _, hi = _atan_dyadic(a_up, prec, tol)
    return lo * unit, hi * unit


@lru_cache(maxsize=64)
def _half_pi_bits(bits):
    tol = Fraction(1, 1 << bits)
    lo5, hi5 = atan_series_bounds(Fraction(1, 5), tol)
    lo239, hi239 = atan_series_bounds(Fraction(1, 239), tol)
    # pi/2 = 8 atan(1/5) - 2 atan(1/239)
    return 8 * lo5 - 2 * hi239, 8 * hi5 - 2 * lo239


def half_pi_enclosure(tol):
    """Interval around pi/2 of width at most ``tol`` (Machin's formula)."""
    lo, hi = _half_pi_bits(_bits_for(Fraction(tol)) + 5)
    return Interval(lo, hi)


def _atan_middle_point(x, tol):
    """Bounds within tol of arctan(x) for |x| < 19/10 via the split identity."""
    u = x / 2
    v = x / (2 + x * x)
    lu, hu = atan_series_bounds(u, tol)
    lv, hv = atan_series_bounds(v, tol)
    return lu + lv, hu + hv


def _check_interval(I):
    I = Interval(Fraction(I[0]), Fraction(I[1]))
    if I.lo > I.hi:
        raise ValueError(f"reversed interval {I}")
    return I


def arctan_enclosure(I, tol):
    """Enclosure of arctan over the closed interval I inside (-19/10, 19/10).

    The result is at most 2*tol wider than the exact image.
    """
    I, tol = _check_interval(I), Fraction(tol)
    if not (-MIDDLE_BOUND < I.lo and I.hi < MIDDLE_BOUND):
        raise ValueError(f"{I} is not inside the middle piece")
    lo, _ = _atan_middle_point(I.lo, tol)
    _, hi = _atan_middle_point(I.hi, tol)
    return Interval(lo, hi)


def arctan_piece_large(I, tol):
    """Enclosure of arctan over I inside (3/5, inf) or (-inf, -3/5), using
    arctan x = pi/2 - arctan(1/x) and odd symmetry."""
    I, tol = _check_interval(I), Fraction(tol)
    if I.hi < -OUTER_BOUND:
        return -arctan_piece_large(-I, tol)
    if not I.lo > OUTER_BOUND:
        raise ValueError(f"{I} is not inside an outer piece")
    inner = arctan_enclosure(Interval(1 / I.hi, 1 / I.lo), tol / 2)
    hp = half_pi_enclosure(tol / 2)
    return Interval(hp.lo - inner.hi, hp.hi - inner.lo)


def piece_of(I):
    """Index of the first piece containing the closure of I, or None."""
    if -MIDDLE_BOUND < I.lo and I.hi < MIDDLE_BOUND:
        return 0
    if I.lo > OUTER_BOUND:
        return 1
    if I.hi < -OUTER_BOUND:
        return 2
    return None


def arctan_piece(I, tol):
    k = piece_of(I)
    if k is None:
        raise ValueError(f"{I} fits in no piece")
    return arctan_enclosure(I, tol) if k == 0 else arctan_piece_large(I, tol)


def arctan_name(x):
    """A name of arctan of the real named by ``x``.

    Stage s reads 2s + 4 steps of the input, takes the narrowest interval
    lying in one of the three pieces and encloses its image with tolerance
    2**-(s+2).  Step pair(0, s) emits a slight widening of that enclosure;
    step pair(c + 1, s) emits code c when its interval strictly contains it.
    """
    stages = {}

    def enclosure(s):
        if s not in stages:
            best = None
            for I in name_intervals(x, 2 * s + 4):
                if piece_of(I) is not None and (best is None or I.width < best.width):
                    best = I
            stages[s] = None if best is None else arctan_piece(best, Fraction(1, 1 << (s + 2)))
        return stages[s]

    def step(i):
        a, s = unpair(i)
        J = enclosure(s)
        if J is None:
            return PAUSE
        if a == 0:
            w = Fraction(1, 1 << (s + 2))
            return interval_encode(J.lo - w, J.hi + w)
        c = a - 1
        return c if interval_decode(c).strictly_contains(J) else PAUSE

    return Enumeration(step, label="arctan")


# cases


def cases_name(x, t, y, z):
    """A name of cases(x, t, y, z): y when x < t, z when x > t.

    Step pair(a, s) with (c, kind) = divmod(a, 3) relays y's c-th code once
    x < t has been observed (kind 0), z's c-th code once x > t has been
    observed (kind 1), or y's c-th code if z's name has shown it within s
    steps (kind 2, the ungated clause for both pieces).
    """
    gates = {}

    def gate(s):
        if s not in gates:
            xs, ts = name_intervals(x, s), name_intervals(t, s)
            lt = gt = False
            if xs and ts:
                lt = min(I.hi for I in xs) <= max(I.lo for I in ts)
                gt = min(I.hi for I in ts) <= max(I.lo for I in xs)
            gates[s] = lt, gt
        return gates[s]

    def step(i):
        a, s = unpair(i)
        c, kind = divmod(a, 3)
        lt, gt = gate(s)
        if kind == 0:
            return y.step(c) if lt else PAUSE
        if kind == 1:
            return z.step(c) if gt else PAUSE
        code = y.step(c)
        if code is not PAUSE and z.semidecide(code, s):
            return code
        return PAUSE

    return Enumeration(step, label="cases")


# interval partitions


class OpenSet:
    """A finite union of open intervals with rational or infinite ends
    (None stands for -inf on the left and +inf on the right)."""

    def __init__(self, parts):
        self.parts = tuple(parts)

    def __repr__(self):
        return "OpenSet(" + ", ".join(_fmt_part(p) for p in self.parts) + ")"

    @classmethod
    def line(cls):
        return cls([(None, None)])

    def contains(self, x):
        return any((lo is None or lo < x) and (hi is None or x < hi) for lo, hi in self.parts)

    def intersect(self, other):
        out = []
        for a_lo, a_hi in self.parts:
            for b_lo, b_hi in other.parts:
                lo = a_lo if b_lo is None else b_lo if a_lo is None else max(a_lo, b_lo)
                hi = a_hi if b_hi is None else b_hi if a_hi is None else min(a_hi, b_hi)
                if lo is None or hi is None or lo < hi:
                    out.append((lo, hi))
        return OpenSet(out)

    def eff_union(self):
        """The same set as an effective union of finite interval intersections."""
        unions = [_part_union(lo, hi) for lo, hi in self.parts]
        if not unions:
            return EffUnion.empty()
        E = unions[0]
        for F in unions[1:]:
            E = eff_union_union(E, F)
        return E


def _fmt_part(p):
    lo, hi = p
    return f"({'-inf' if lo is None else fmt_rational(lo)}, {'inf' if hi is None else fmt_rational(hi)})"


def _part_union(lo, hi):
    # Index sets are frozensets of interval codes rather than D_m bitmasks:
    # codes of long intervals are large, and 1 << code would not fit in memory.
    if lo is None and hi is None:
        return EffUnion(Enumeration.from_items([frozenset()], label="line"))
    if lo is not None and hi is not None:
        return EffUnion(Enumeration.from_items([frozenset({interval_encode(lo, hi)})], label="interval"))

    def step(n):
        n = 1 << n
        code = interval_encode(lo, lo + n) if hi is None else interval_encode(hi - n, hi)
        return frozenset({code})

    return EffUnion(Enumeration(step, label="ray"))


def in_hat_real(x, m):
    """x lies in every interval of the index set m, given as a bitmask or a
    frozenset of interval codes (the empty set stands for the whole line)."""
    ks = iter_bits(m) if isinstance(m, int) else m
    return all(interval_decode(k).contains(x) for k in ks)


def eff_union_semidecide(E, x, budget):
    return any(in_hat_real(x, m) for m in E.S.prefix(budget))


class PartitionSeparator(NamedTuple):
    open_set: OpenSet
    eff_union: EffUnion


def partition_pieces(cuts):
    """Membership tests of the closed pieces (-inf, c1], [c1, c2], ..., [cr, inf)."""
    cuts = _check_cuts(cuts)
    pieces = [lambda x, c=cuts[0]: x <= c]
    for lo, hi in zip(cuts, cuts[1:]):
        pieces.append(lambda x, lo=lo, hi=hi: lo <= x <= hi)
    pieces.append(lambda x, c=cuts[-1]: x >= c)
    return pieces


def partition_complements(cuts):
    """The open sets whose complements are the pieces."""
    cuts = _check_cuts(cuts)
    out = [OpenSet([(cuts[0], None)])]
    for lo, hi in zip(cuts, cuts[1:]):
        out.append(OpenSet([(None, lo), (hi, None)]))
    out.append(OpenSet([(None, cuts[-1])]))
    return out


def _check_cuts(cuts):
    cuts = [Fraction(c) for c in cuts]
    if not cuts:
        raise ValueError("at least one cut point is required")
    if any(a >= b for a, b in zip(cuts, cuts[1:])):
        raise ValueError("cut points must be strictly ascending")
    return cuts


def partition_separators(cuts):
    """Separator table for the interval partition at the given cut points.

    Each entry carries the exact open set and the matching effective union,
    the latter built by intersecting the complements' effective unions.
    """
    comps = partition_complements(cuts)
    eff = complement_separators_uv([E.eff_union() for E in comps], include_empty=True)
    full = (1 << len(comps)) - 1
    table = {}
    for K in range(full + 1):
        if K == full:
            H = OpenSet.line()
        else:
            kept = [E for j, E in enumerate(comps) if not K >> j & 1]
            H = kept[0]
            for E in kept[1:]:
                H = H.intersect(E)
        table[K] = PartitionSeparator(H, eff[K])
    return table
