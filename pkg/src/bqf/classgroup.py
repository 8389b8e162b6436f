"""The class group: Gauss composition, orders, invariant factors, witnesses.

Composition uses the Dirichlet united-forms construction: scale out
w = gcd(a1, a2, (b1+b2)/2), solve a pair of linear congruences for the
gluing parameter, and reduce the resulting form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .arith import factor, kronecker, solve_linmod, sqrt_mod
from .errors import DiscriminantMismatch, DomainError, InternalError
from .forms import Discriminant, Form, class_number, enumerate_reduced, principal_form, reduce
from .kernels import find_witness

# odd_witness values at most this large are re-verified by direct lattice
# search; larger ones via the ideal-factorization decider
_DIRECT_VERIFY_CAP = 10**7


def compose(f: Form, g: Form) -> Form:
    """Reduced Gauss composite of two forms of one discriminant."""
    if f.disc != g.disc:
        raise DiscriminantMismatch(f"cannot compose {f} (disc {f.disc}) with {g} (disc {g.disc})")
    a1, b1, c1 = f.a, f.b, f.c
    a2, b2 = g.a, g.b
    gg = (b1 + b2) // 2
    h = (b2 - b1) // 2
    w = math.gcd(a1, math.gcd(a2, gg))
    s = a1 // w
    t = a2 // w
    u = gg // w
    st = s * t
    try:
        # k must make both l and m below integral
        k0, step = solve_linmod(t * u, h * u + s * c1, st)
        n0, _ = solve_linmod(t * step, h - t * k0, s)
    except DomainError as exc:
        raise InternalError(f"united-form congruences failed for {f}, {g}") from exc
    k = k0 + step * n0
    l = (t * k - h) // s
    m = (t * u * k - h * u - c1 * s) // st
    composite = Form(st, w * u - (k * t + l * s), k * l - w * m)
    if composite.disc != f.disc:
        raise InternalError(f"composition of {f}, {g} changed the discriminant")
    return reduce(composite)[0]


def inverse(f: Form) -> Form:
    return reduce(Form(f.a, -f.b, f.c))[0]


def power(f: Form, k: int) -> Form:
    if k < 0:
        f, k = inverse(f), -k
    result = principal_form(f.disc)
    base = reduce(f)[0]
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def order(f: Form) -> int:
    one = principal_form(f.disc)
    g = reduce(f)[0]
    cap = class_number(f.disc)
    acc = g
    for k in range(1, cap + 1):
        if acc == one:
            return k
        acc = compose(acc, g)
    raise InternalError(f"order of {f} exceeds the class number {cap}")


@dataclass(frozen=True)
class ClassGroup:
    discriminant: Discriminant
    elements: tuple[Form, ...]
    composition_table: tuple[tuple[int, ...], ...]
    invariant_factors: tuple[int, ...]


def _partitions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in _partitions(n - first):
            if not rest or first >= rest[0]:
                yield (first,) + rest


def _abelian_types(h: int):
    """All abelian groups of order h, each as a tuple of prime-power cyclic factors."""
    primes = factor(h)
    per_prime = []
    for p, e in primes:
        per_prime.append([tuple(p**part for part in parts) for parts in _partitions(e)])
    for combo in product(*per_prime):
        yield tuple(x for grp in combo for x in grp)


def _invariant_factors_from_orders(orders: list[int]) -> tuple[int, ...]:
    """Match element-order statistics against each abelian type of order h.

    The count of solutions of g^d = identity determines the type: it is
    the product of gcd(d, m_i) over the cyclic factors m_i.
    """
    h = len(orders)
    if h == 1:
        return ()
    counts = {d: sum(1 for o in orders if d % o == 0) for d in range(1, h + 1) if h % d == 0}
    for typ in _abelian_types(h):
        if all(math.prod(math.gcd(d, m) for m in typ) == cnt for d, cnt in counts.items()):
            # regroup prime powers into a divisibility chain d_1 | d_2 | ...
            by_prime: dict[int, list[int]] = {}
            for q in typ:
                p = factor(q)[0][0]
                by_prime.setdefault(p, []).append(q)
            width = max(len(v) for v in by_prime.values())
            chain = []
            for i in range(width):
                term = 1
                for p, powers in by_prime.items():
                    powers.sort(reverse=True)
                    if i < len(powers):
                        term *= powers[i]
                chain.append(term)
            return tuple(sorted(chain))
    raise InternalError(f"no abelian group of order {h} matches the order statistics")


def group_structure(d) -> ClassGroup:
    d = Discriminant(d)
    elements = enumerate_reduced(d)
    index = {f: i for i, f in enumerate(elements)}
    table = tuple(
        tuple(index[compose(f, g)] for g in elements) for f in elements
    )
    orders = [order(f) for f in elements]
    return ClassGroup(d, tuple(elements), table, _invariant_factors_from_orders(orders))


def sqrt_in_group(f: Form) -> Form:
    """The unique g with g*g = f; defined only for odd class numbers."""
    d = f.disc
    if class_number(d) % 2 == 0:
        raise DomainError(f"square roots are not unique for even class number (disc {d})")
    target = reduce(f)[0]
    for g in enumerate_reduced(d):
        if compose(g, g) == target:
            return g
    raise InternalError(f"squaring is not surjective at disc {d}")


def classes_representing(d, n: int) -> set[Form]:
    """All reduced classes of discriminant d that represent n > 0.

    Decided through the prime ideal factorization of n: inert primes must
    appear to even exponents, each ramified prime contributes its ambiguous
    class, and each split prime a window of powers of its prime-ideal
    class.  Requires gcd(n, conductor) = 1.
    """
    d = Discriminant(d)
    if n <= 0:
        raise DomainError(f"classes_representing needs n > 0, got {n}")
    if math.gcd(n, d.conductor) != 1:
        raise DomainError(f"{n} is not coprime to the conductor of {d.value}")
    delta = d.value
    one = principal_form(delta)
    acc = {one}
    for p, e in factor(n):
        sym = kronecker(delta, p)
        if sym == -1:
            if e % 2:
                return set()
            continue
        g = _prime_form(delta, p)
        if sym == 0:
            if e % 2 == 0:
                continue
            step = {compose(x, g) for x in acc}
            acc = step
            continue
        powers = {power(g, j) for j in range(-e, e + 1, 2)}
        acc = {compose(x, y) for x in acc for y in powers}
    return acc


def _prime_form(delta: int, p: int) -> Form:
    """A form (p, b, c) of discriminant delta, via b^2 = delta (mod 4p)."""
    if p == 2:
        candidates = range(4)
    elif kronecker(delta, p) == 0:
        candidates = (p,) if delta % 2 else (0,)
    else:
        r = sqrt_mod(delta % p, p)
        if r is None:
            raise InternalError(f"{delta} unexpectedly a non-residue mod {p}")
        # pick the representative of each root class with b = delta (mod 2)
        candidates = tuple(base if (base - delta) % 2 == 0 else base + p for base in (r, p - r))
    for b in candidates:
        if (b * b - delta) % (4 * p) == 0:
            return Form(p, b, (b * b - delta) // (4 * p))
    raise InternalError(f"no form of discriminant {delta} with leading coefficient {p}")


def odd_witness(d) -> int:
    """Product of a*c over one form per inverse pair of non-principal classes.

    Defined for odd class numbers; the result is represented by every
    class, which is re-verified before returning.
    """
    d = Discriminant(d)
    forms = enumerate_reduced(d)
    if len(forms) % 2 == 0:
        raise DomainError(f"odd_witness needs an odd class number, h({d.value}) = {len(forms)}")
    witness = 1
    for f in forms[1:]:
        if f.b > 0:
            witness *= f.a * f.c
    _verify_common_value(d, forms, witness)
    return witness


def _verify_common_value(d: Discriminant, forms: list[Form], value: int) -> None:
    if value <= _DIRECT_VERIFY_CAP:
        for f in forms:
            if find_witness(f.a, f.b, f.c, value) is None:
                raise InternalError(f"{value} is not represented by {f}")
    else:
        if classes_representing(d, value) != set(forms):
            raise InternalError(f"{value} is not represented by every class of {d.value}")
