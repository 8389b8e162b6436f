# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice-enumeration kernels, bit-identical to bqf._core_py.

Inputs are certified against 64-bit overflow in exact arithmetic before
any C loop runs; anything too large raises OverflowError and the kernels
module falls back to the pure implementation.
"""

import math


cdef long long _LIMIT = (<long long>1) << 62


cdef long long c_isqrt(long long n) noexcept:
    cdef long long s = <long long>(n ** 0.5)
    while s > 0 and s * s > n:
        s -= 1
    while (s + 1) * (s + 1) <= n:
        s += 1
    return s


cdef long long fdiv(long long p, long long q) noexcept:
    # Python floor division for positive q
    cdef long long r = p / q
    if p % q != 0 and p < 0:
        r -= 1
    return r


def value_bitmap(a, b, c, bound):
    """Byte m is 1 iff a*x^2 + b*x*y + c*y^2 = m for some integers x, y.

    Covers 0 <= m <= bound.  Values come in (x,y) ~ (-x,-y) pairs, so x
    runs over x >= 0, with y >= 0 when x = 0.
    """
    disc = b * b - 4 * a * c
    if disc >= 0 or bound < 0:
        raise OverflowError("inputs exceed the compiled kernel range")
    # exact-arithmetic certificate that every loop quantity fits in 64 bits
    x_cap = math.isqrt(4 * c * bound // -disc) + 2
    s_cap = math.isqrt(-disc * x_cap * x_cap + 4 * c * bound + 1) + 1
    y_cap = (2 * abs(b) * x_cap + s_cap) // (2 * c) + math.isqrt(bound // c + 1) + 3
    worst = max(
        -disc * x_cap * x_cap + 4 * c * bound,
        c * y_cap * y_cap + abs(b) * x_cap * y_cap + a * x_cap * x_cap,
        c * (2 * y_cap + 1) + abs(b) * x_cap + bound,
        abs(b) * x_cap + s_cap,
    )
    if worst >= _LIMIT:
        raise OverflowError("inputs exceed the compiled kernel range")

    cdef long long ca = a, cb = b, cc = c, cbound = bound, cdisc = disc
    cdef long long x, y, v, dy, s
    out = bytearray(bound + 1)
    cdef unsigned char[::1] bits = out

    bits[0] = 1
    y = 0
    v = 0
    while v <= cbound:
        bits[v] = 1
        v += cc * (2 * y + 1)
        y += 1
    x = 1
    while True:
        dy = cdisc * x * x + 4 * cc * cbound
        if dy < 0:
            break
        s = c_isqrt(dy)
        y = -fdiv(cb * x + s, 2 * cc)
        v = cc * y * y + cb * x * y + ca * x * x
        while v <= cbound:
            bits[v] = 1
            v += cc * (2 * y + 1) + cb * x
            y += 1
        x += 1
    return out


def find_witness(a, b, c, m, proper=False):
    """First (x, y) with a*x^2 + b*x*y + c*y^2 = m, x >= 0 ascending.

    For each x the two roots in y are tried, +sqrt branch first.  With
    proper=True only coprime pairs qualify.  None means no representation
    exists (the x sweep is exhaustive for a positive definite form).
    """
    if m < 0:
        return None
    if m == 0:
        return None if proper else (0, 0)
    disc = b * b - 4 * a * c
    if disc >= 0:
        raise OverflowError("inputs exceed the compiled kernel range")
    x_cap = math.isqrt(4 * c * m // -disc) + 2
    s_cap = math.isqrt(-disc * x_cap * x_cap + 4 * c * m + 1) + 1
    y_cap = (s_cap + abs(b) * x_cap) // (2 * c) + 2
    worst = max(
        -disc * x_cap * x_cap + 4 * c * m,
        c * y_cap * y_cap + abs(b) * x_cap * y_cap + a * x_cap * x_cap,
        abs(b) * x_cap + s_cap,
    )
    if worst >= _LIMIT:
        raise OverflowError("inputs exceed the compiled kernel range")

    cdef long long ca = a, cb = b, cc = c, cm = m, cdisc = disc
    cdef bint want_proper = bool(proper)
    cdef long long x = 0, dy, s, n, y, u, t
    cdef int branch
    while True:
        dy = cdisc * x * x + 4 * cc * cm
        if dy < 0:
            return None
        s = c_isqrt(dy)
        if s * s == dy:
            for branch in range(2):
                n = s - cb * x if branch == 0 else -s - cb * x
                if n % (2 * cc) == 0:
                    y = n / (2 * cc)
                    if ca * x * x + cb * x * y + cc * y * y == cm:
                        if want_proper:
                            u = x
                            t = y if y >= 0 else -y
                            while t:
                                u, t = t, u % t
                            if u != 1:
                                continue
                        return (x, y)
        x += 1
