"""Canonical codings of finite sets, pairs and tuples of naturals."""

from math import isqrt


def dset_decode(m):
    """Return the finite set D_m: k is a member iff bit k of m is set."""
    if m < 0:
        raise ValueError(f"negative code {m}")
    return frozenset(iter_bits(m))


def dset_encode(s):
    """Inverse of :func:`dset_decode`."""
    m = 0
    for k in s:
        if k < 0:
            raise ValueError(f"negative element {k}")
        m |= 1 << k
    return m


def iter_bits(m):
    """Yield the positions of the set bits of m in ascending order."""
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def dset_subset(m1, m2):
    """D_m1 is a subset of D_m2."""
    return m1 & ~m2 == 0


def pair(a, b):
    """Cantor pairing."""
    if a < 0 or b < 0:
        raise ValueError("pair() takes naturals")
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(p):
    """Inverse of :func:`pair`."""
    if p < 0:
        raise ValueError("unpair() takes a natural")
    w = (isqrt(8 * p + 1) - 1) // 2
    b = p - w * (w + 1) // 2
    return w - b, b


def encode_tuple(xs):
    """Flatten an n-tuple to one natural by iterated pairing (right-nested).

    A bare int is treated as a 1-tuple.
    """
    if isinstance(xs, int):
        return xs
    xs = tuple(xs)
    if not xs:
        raise ValueError("empty tuple")
    code = xs[-1]
    for x in reversed(xs[:-1]):
        code = pair(x, code)
    return code


def decode_tuple(code, n):
    if n < 1:
        raise ValueError("arity must be positive")
    out = []
    for _ in range(n - 1):
        a, code = unpair(code)
        out.append(a)
    out.append(code)
    return tuple(out)
