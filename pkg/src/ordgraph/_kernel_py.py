"""Pure-Python CNF kernel.

An ordinal is a nested tuple of ``(exponent, coefficient)`` pairs with
strictly decreasing exponents; ``()`` is zero.  Native tuple comparison on
this encoding is exactly the ordinal order, so no compare routine is needed.
The compiled twin in ``_kernel_c.pyx`` must stay line-for-line equivalent.
"""

ZERO = ()


def finite(n):
    if n < 0:
        raise ValueError("negative natural")
    return ((ZERO, n),) if n else ZERO


def add(a, b):
    if not b:
        return a
    e0, c0 = b[0]
    i = 0
    n = len(a)
    while i < n and a[i][0] > e0:
        i += 1
    if i < n and a[i][0] == e0:
        return a[:i] + ((e0, a[i][1] + c0),) + b[1:]
    return a[:i] + b


def left_sub(a, b):
    """Return g with a + g == b; ValueError when a > b."""
    n = len(a)
    m = len(b)
    i = 0
    while i < n and i < m and a[i] == b[i]:
        i += 1
    if i == n:
        return b[i:]
    if i == m:
        raise ValueError("left_sub: first argument exceeds second")
    ea, ca = a[i]
    eb, cb = b[i]
    if eb > ea:
        return b[i:]
    if eb == ea and cb > ca:
        return ((eb, cb - ca),) + b[i + 1:]
    raise ValueError("left_sub: first argument exceeds second")


def mul(a, b):
    if not a or not b:
        return ZERO
    lead_e, lead_c = a[0]
    rest = a[1:]
    out = ZERO
    for e, c in b:
        if e:
            piece = ((add(lead_e, e), c),)
        else:
            piece = ((lead_e, lead_c * c),) + rest
        out = add(out, piece)
    return out


def from_levels(levels):
    """CNF of a sum of omega^k over a non-increasing sequence of naturals k."""
    out = []
    prev = -1
    for k in levels:
        if k == prev:
            out[-1][1] += 1
        else:
            out.append([finite(k), 1])
            prev = k
    return tuple((e, c) for e, c in out)
