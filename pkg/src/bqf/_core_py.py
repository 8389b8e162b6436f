"""Pure Python lattice-enumeration kernels.

bqf.kernels prefers the compiled twin of this module (bqf._core) and
falls back here; both must produce bit-identical output.
"""

from __future__ import annotations

import math


def value_bitmap(a: int, b: int, c: int, bound: int) -> bytearray:
    """Byte m is 1 iff a*x^2 + b*x*y + c*y^2 = m for some integers x, y.

    Covers 0 <= m <= bound.  Values come in (x,y) ~ (-x,-y) pairs, so x
    runs over x >= 0, with y >= 0 when x = 0.
    """
    disc = b * b - 4 * a * c
    out = bytearray(bound + 1)
    out[0] = 1
    # x = 0 column: plain squares scaled by c
    y = 0
    v = 0
    while v <= bound:
        out[v] = 1
        v += c * (2 * y + 1)
        y += 1
    x = 1
    while True:
        # y range where the value stays <= bound: c*y^2 + b*x*y + a*x^2 - bound <= 0
        dy = disc * x * x + 4 * c * bound
        if dy < 0:
            break
        s = math.isqrt(dy)
        y = -((b * x + s) // (2 * c))  # ceil of the smaller root
        v = c * y * y + b * x * y + a * x * x
        while v <= bound:
            out[v] = 1
            v += c * (2 * y + 1) + b * x
            y += 1
        x += 1
    return out


def find_witness(a: int, b: int, c: int, m: int, proper: bool = False) -> tuple[int, int] | None:
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
    x = 0
    while True:
        dy = disc * x * x + 4 * c * m
        if dy < 0:
            return None
        s = math.isqrt(dy)
        if s * s == dy:
            for n in (s - b * x, -s - b * x):
                if n % (2 * c) == 0:
                    y = n // (2 * c)
                    if a * x * x + b * x * y + c * y * y == m:
                        if not proper or math.gcd(x, y) == 1:
                            return (x, y)
        x += 1
