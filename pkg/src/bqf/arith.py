"""Elementary number theory used everywhere else.

Everything here is exact integer arithmetic: Kronecker symbols, a
deterministic 64-bit primality test, Tonelli-Shanks square roots,
Hilbert symbols over Q_p and R, and trial-division factorization.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10**24,
# which covers the supported 64-bit range with room to spare.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

TRIAL_DIVISION_BOUND = 10**6


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def inv_mod(a: int, m: int) -> int:
    return pow(a, -1, m)


def solve_linmod(a: int, b: int, m: int) -> tuple[int, int]:
    """Solve a*x = b (mod m); return (x0, step) so solutions are x0 + step*Z.

    Raises DomainError when gcd(a, m) does not divide b.  m >= 1.
    """
    if m <= 0:
        raise DomainError(f"modulus must be positive, got {m}")
    g, x, _ = xgcd(a, m)
    if b % g:
        raise DomainError(f"{a}*x = {b} (mod {m}) has no solution")
    step = m // g
    return (x * (b // g)) % step, step


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def valuation(n: int, p: int) -> int:
    """Largest e with p**e | n.  n must be nonzero."""
    if n == 0:
        raise DomainError("valuation of 0 is undefined")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2**64; larger inputs are rejected."""
    if n >= 2**64:
        raise DomainError(f"primality test limited to inputs below 2**64, got {n}")
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factor(n: int, bound: int = TRIAL_DIVISION_BOUND) -> list[tuple[int, int]]:
    """Factor n >= 1 by trial division up to `bound`, sorted (prime, exponent).

    A leftover cofactor is accepted when it is provably prime (below
    bound**2, or certified by is_prime); anything harder is out of scope
    and raises DomainError.
    """
    if n < 1:
        raise DomainError(f"factor expects n >= 1, got {n}")
    out: list[tuple[int, int]] = []
    for p in _trial_candidates(bound):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1:
        # every factor <= bound is gone, so a composite cofactor exceeds bound**2
        if n > bound * bound and not is_prime(n):
            raise DomainError(f"cofactor {n} not factorable by trial division")
        out.append((n, 1))
    return out


def _trial_candidates(bound):
    yield 2
    yield 3
    p = 5
    while p <= bound:
        yield p
        yield p + 2
        p += 6


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Write n = s**2 * m with m squarefree (sign kept on m); return (s, m)."""
    if n == 0:
        raise DomainError("0 has no squarefree decomposition")
    s, m = 1, 1 if n > 0 else -1
    for p, e in factor(abs(n)):
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    return s, m


def squarefree_part(n: int) -> int:
    return squarefree_decomposition(n)[1]


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), totally defined; (a|0) is 1 iff a = +-1."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # n is now odd and positive: the Jacobi symbol with reciprocity
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod(a: int, p: int) -> int | None:
    """Tonelli-Shanks: the smaller square root of a mod an odd prime p.

    Returns None for a quadratic non-residue.  Composite or even p is a
    domain error.
    """
    if p == 2 or not is_prime(p):
        raise DomainError(f"sqrt_mod needs an odd prime modulus, got {p}")
    a %= p
    if a == 0:
        return 0
    if kronecker(a, p) != 1:
        return None
    if p % 4 == 3:
        x = pow(a, (p + 1) // 4, p)
        return min(x, p - x)
    # write p - 1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while kronecker(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, sq = 0, t
        while sq != 1:
            sq = sq * sq % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        t = t * b % p * b % p
        c = b * b % p
        m = i
    return min(x, p - x)


def _square_class(r) -> int:
    """Integer representative of the square class of a nonzero rational."""
    f = Fraction(r)
    if f == 0:
        raise DomainError("hilbert symbol arguments must be nonzero")
    return f.numerator * f.denominator


def hilbert_symbol(a, b, place) -> int:
    """Hilbert symbol (a, b) at a finite prime or at math.inf.

    +1 when z^2 = a*x^2 + b*y^2 has a nontrivial solution over the
    completion at `place`, else -1.  a, b may be ints or Fractions.
    """
    a = _square_class(a)
    b = _square_class(b)
    if place == math.inf:
        return -1 if (a < 0 and b < 0) else 1
    p = place
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"place must be a prime or math.inf, got {place!r}")
    alpha = valuation(a, p)
    beta = valuation(b, p)
    u = a // p**alpha
    v = b // p**beta
    if p == 2:
        eps = ((u - 1) // 2) * ((v - 1) // 2)
        omega = alpha * ((v * v - 1) // 8) + beta * ((u * u - 1) // 8)
        return -1 if (eps + omega) % 2 else 1
    sign = 1
    if alpha % 2 and beta % 2 and (p - 1) // 2 % 2:
        sign = -sign
    if beta % 2 and kronecker(u, p) == -1:
        sign = -sign
    if alpha % 2 and kronecker(v, p) == -1:
        sign = -sign
    return sign
