# cython: language_level=3, boundscheck=False
"""Compiled CNF kernel; semantics identical to ``_kernel_py``."""

ZERO = ()


cpdef tuple finite(long long n):
    if n < 0:
        raise ValueError("negative natural")
    return ((ZERO, n),) if n else ZERO


cpdef tuple add(tuple a, tuple b):
    cdef Py_ssize_t i = 0, n = len(a)
    if not b:
        return a
    e0, c0 = b[0]
    while i < n and a[i][0] > e0:
        i += 1
    if i < n and a[i][0] == e0:
        return a[:i] + ((e0, a[i][1] + c0),) + b[1:]
    return a[:i] + b


cpdef tuple left_sub(tuple a, tuple b):
    cdef Py_ssize_t i = 0, n = len(a), m = len(b)
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


cpdef tuple mul(tuple a, tuple b):
    cdef tuple out = ZERO, rest, piece
    if not a or not b:
        return ZERO
    lead_e, lead_c = a[0]
    rest = a[1:]
    for e, c in b:
        if e:
            piece = ((add(lead_e, e), c),)
        else:
            piece = ((lead_e, lead_c * c),) + rest
        out = add(out, piece)
    return out


cpdef tuple from_levels(levels):
    cdef list out = []
    cdef long long prev = -1, k
    for k in levels:
        if k == prev:
            out[-1][1] += 1
        else:
            out.append([finite(k), 1])
            prev = k
    return tuple([(e, c) for e, c in out])
