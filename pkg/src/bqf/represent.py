"""Representation of integers: witnesses, local solvability, genus characters.

A form represents m when f(x, y) = m has an integer solution; it represents m
locally when the equation is solvable over every completion.  For positive
definite forms the real place is free (m > 0), so only finitely many primes
can obstruct, and each verdict here reduces to a closed-form test on
valuations and square classes rather than a modular search.
"""

import math
from dataclasses import dataclass

from .arith import factor, is_prime, kronecker, is_square, valuation
from .errors import DomainError, InternalError
from .forms import Form
from . import kernels


def represents(f: Form, m: int):
    """Return a witness (x, y) with f(x, y) = m, or None.

    Witnesses are deterministic: smallest |x| first, then the root with the
    positive square-root numerator.
    """
    if m < 0:
        return None
    return kernels.find_witness(f.a, f.b, f.c, m, proper=False)


def properly_represents(f: Form, m: int):
    """Like represents, but the witness must satisfy gcd(x, y) = 1."""
    if m < 0:
        return None
    return kernels.find_witness(f.a, f.b, f.c, m, proper=True)


@dataclass(frozen=True)
class RepSet:
    """Values up to a bound represented by every form in a list, with proofs."""

    forms: tuple
    bound: int
    values: tuple
    witnesses: dict

    def to_json(self) -> dict:
        return {
            "forms": [str(f) for f in self.forms],
            "bound": self.bound,
            "values": list(self.values),
            "witnesses": {
                str(v): [[x, y] for x, y in ws] for v, ws in self.witnesses.items()
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "RepSet":
        forms = tuple(Form.from_text(s) for s in data["forms"])
        witnesses = {
            int(v): tuple((x, y) for x, y in ws)
            for v, ws in data["witnesses"].items()
        }
        return cls(forms, int(data["bound"]), tuple(data["values"]), witnesses)


def rep_set(forms, bound: int) -> RepSet:
    """Common represented values of the given forms on [1, bound].

    Each surviving value carries one witness per form, in input order.
    """
    forms = tuple(forms)
    if not forms:
        raise DomainError("rep_set needs at least one form")
    if bound < 1:
        raise DomainError("bound must be positive")
    merged = kernels.value_bitmap(forms[0].a, forms[0].b, forms[0].c, bound)
    for f in forms[1:]:
        bm = kernels.value_bitmap(f.a, f.b, f.c, bound)
        merged = bytearray(x & y for x, y in zip(merged, bm))
    values = tuple(m for m in range(1, bound + 1) if merged[m])
    witnesses = {}
    for m in values:
        ws = []
        for f in forms:
            w = kernels.find_witness(f.a, f.b, f.c, m, proper=False)
            if w is None:
                raise InternalError("bitmap and witness search disagree at %d" % m)
            ws.append(w)
        witnesses[m] = tuple(ws)
    return RepSet(forms, bound, values, witnesses)


def prime_represented_by_some_form(d, p: int) -> bool:
    """Whether any class of discriminant d represents the odd prime p, p not | d."""
    delta = int(d)
    if p == 2 or not is_prime(p):
        raise DomainError("need an odd prime, got %d" % p)
    if delta % p == 0:
        raise DomainError("%d divides the discriminant" % p)
    return kronecker(delta, p) == 1


# Local solvability.
#
# Completing the square gives 4a f(x, y) = u^2 - D y^2 with u = 2ax + by and
# D the discriminant, so f = m over Z_p is a norm-equation problem once the
# leading coefficient is a p-adic unit.  A unimodular change of variable
# arranges that: one of a, c, a+b+c is prime to p because f is primitive.


def _unit_leading(f: Form, p: int):
    if f.a % p:
        return f.a, f.b, f.c
    if f.c % p:
        return f.c, -f.b, f.a
    # p | a and p | c force p coprime to b, hence to a + b + c for odd p,
    # and a + b + c is odd for p = 2.
    return f.a + f.b + f.c, f.b + 2 * f.c, f.c


def _norm_solvable_odd(D: int, T: int, p: int) -> bool:
    # u^2 - D y^2 = T over Z_p, p odd, T nonzero.  Write D = p^d V, T = p^t U.
    # Solutions split by which of u^2, D y^2 carries the low valuation:
    #   u dominant: t even and U a square;
    #   y dominant: t - d even nonneg and -UV a square;
    #   balanced (needs d even): either V is a square and valuation can be
    #     made up by cancellation (t > d), or the unit parts solve
    #     u^2 - V y^2 = U with both variables units, which exists for all
    #     p >= 7 by counting points on the conic and is a finite check below.
    d = valuation(D, p)
    V = D // p**d
    t = valuation(T, p)
    U = T // p**t
    if t % 2 == 0 and kronecker(U, p) == 1:
        return True
    if t >= d and (t - d) % 2 == 0 and kronecker(-U * V, p) == 1:
        return True
    if d % 2 == 0 and t > d and kronecker(V, p) == 1:
        return True
    if d % 2 == 0 and t % 2 == 0 and t >= d:
        if p >= 7:
            return True
        return any(kronecker(U + V * w * w, p) == 1 for w in range(1, p))
    return False


def _square_meets_coset(c: int, K: int) -> bool:
    # Does c + 2^K Z_2 contain a square of Z_2?  Squares are 0 and
    # 4^j (1 + 8 Z_2), so reduce mod 2^K and compare square classes.
    c %= 1 << K
    if c == 0:
        return True
    v = (c & -c).bit_length() - 1
    if v % 2:
        return False
    odd = c >> v
    width = min(3, K - v)
    return odd % (1 << width) == 1


def _prim_pair_2(D: int, T: int) -> bool:
    # u^2 - D y^2 = T over Z_2 with u, y not both even.
    # u odd: u^2 is exactly 1 mod 8, and D y^2 mod 8 only depends on
    # y in {0, 1, 2}; a match lifts since d(u^2)/du has valuation 1.
    if any((T + D * y * y) % 8 == 1 for y in (0, 1, 2)):
        return True
    # y odd: y^2 sweeps 1 + 8 Z_2 exactly, so T + D y^2 sweeps the coset
    # T + D + 2^(v(D)+3) Z_2, which must meet the squares.
    return _square_meets_coset(T + D, valuation(D, 2) + 3)


def _free_pair_2(D: int, T: int) -> bool:
    # u^2 - D y^2 = T over Z_2, unconstrained.  Non-primitive solutions
    # descend through u, y -> u/2, y/2, dividing T by 4.
    while True:
        if _prim_pair_2(D, T):
            return True
        if T % 4:
            return False
        T //= 4


def _solvable_at(f: Form, m: int, p: int) -> bool:
    a, b, c = _unit_leading(f, p)
    D = f.disc
    if p != 2:
        return _norm_solvable_odd(D, 4 * a * m, p)
    # p = 2, a odd.  u = 2ax + by forces u = by mod 2, so split on parity.
    if b % 2:
        # u, y both odd: u^2 - D y^2 is 1 - D mod 8 exactly.
        # u, y both even: halving gives U^2 - D Y^2 = am, unconstrained.
        return (4 * a * m - (1 - D)) % 8 == 0 or _free_pair_2(D, a * m)
    # b even: u is even, U = u/2 = ax + (b/2) y is a free coordinate.
    return _free_pair_2(D // 4, a * m)


@dataclass(frozen=True)
class LocalReport:
    """Outcome of the local solvability test, prime by prime."""

    represented: bool
    places: tuple

    def __bool__(self) -> bool:
        return self.represented


def locally_represented(f: Form, m: int) -> LocalReport:
    """Decide solvability of f(x, y) = m over every Z_p.

    Positive definiteness settles the real place, and primes away from
    2, the discriminant, and m cannot obstruct, so the report lists
    exactly the primes dividing 2 * disc * m.
    """
    if m < 1:
        raise DomainError("m must be positive, got %d" % m)
    D = f.disc
    primes = sorted(p for p, _ in factor(2 * abs(D) * m))
    places = []
    ok = True
    for p in primes:
        good = _solvable_at(f, m, p)
        places.append((p, good))
        ok = ok and good
    return LocalReport(ok, tuple(places))


# Genus characters.
#
# For each odd prime p | D the Legendre symbol mod p is constant on the
# values of a form prime to 2D; candidate characters mod 4 and mod 8 join
# in depending on the power of 2 in D.  The table keeps one representative
# per dependency class, so equal vectors mean equal genus and every vector
# component carries information.

_DELTA = "mod4"
_EPS = "mod8"


def assigned_characters(d) -> tuple:
    """Descriptors of the characters that cut out genera for discriminant d."""
    delta = int(d)
    if delta >= 0 or delta % 4 not in (0, 1):
        raise DomainError("not a negative discriminant: %d" % delta)
    e = valuation(delta, 2)
    out = [("odd", p) for p, _ in factor(abs(delta)) if p != 2]
    w = (abs(delta) >> e) % 4
    if e == 4 and w == 3:
        out.append((_DELTA, 4))
    elif e >= 5 and e % 2 == 1:
        out.append((_DELTA, 4))
    elif e >= 6:
        if w == 3:
            out.append((_DELTA, 4))
        out.append((_EPS, 8))
    return tuple(out)


def _coprime_value(f: Form) -> int:
    # Smallest represented value prime to 2 * disc; one always exists.
    N = 2 * abs(f.disc)
    cap = max(16 * f.a * f.c, 1000)
    for m in range(1, cap + 1):
        if math.gcd(m, N) == 1 and kernels.find_witness(f.a, f.b, f.c, m):
            return m
    raise InternalError("no represented value prime to 2*disc below %d" % cap)


def genus_characters(f: Form) -> tuple:
    """Character vector of the genus of f, as a tuple of +-1.

    Components follow assigned_characters(disc): odd primes ascending,
    then the mod 4 character, then the mod 8 character.
    """
    m = _coprime_value(f)
    out = []
    for kind, q in assigned_characters(f.disc):
        if kind == "odd":
            out.append(kronecker(m, q))
        elif kind == _DELTA:
            out.append(1 if m % 4 == 1 else -1)
        else:
            out.append(1 if m % 8 in (1, 7) else -1)
    return tuple(out)


def nonsquare_multiple(f: Form, m: int, bound: int):
    """Smallest k in [2, bound] with k and m*k nonsquare and m*k represented.

    Returns (k, witness), or None when the bound is exhausted.  Requires m
    to be locally represented; a local obstruction would make the search
    futile for square-free reasons rather than size.
    """
    if not locally_represented(f, m):
        raise DomainError("%d is not locally represented" % m)
    for k in range(2, bound + 1):
        if is_square(k) or is_square(m * k):
            continue
        w = kernels.find_witness(f.a, f.b, f.c, m * k, proper=False)
        if w is not None:
            return k, w
    return None


def joint_nonsquare_multiple(f1: Form, f2: Form, m: int, bound: int):
    """Like nonsquare_multiple but m*k must be represented by both forms."""
    for f in (f1, f2):
        if not locally_represented(f, m):
            raise DomainError("%d is not locally represented by %s" % (m, f))
    for k in range(2, bound + 1):
        if is_square(k) or is_square(m * k):
            continue
        w1 = kernels.find_witness(f1.a, f1.b, f1.c, m * k, proper=False)
        if w1 is None:
            continue
        w2 = kernels.find_witness(f2.a, f2.b, f2.c, m * k, proper=False)
        if w2 is not None:
            return k, (w1, w2)
    return None
