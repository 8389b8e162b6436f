"""Class polynomials from CM points and prime splitting via factor degrees.

Each reduced form contributes the complex point tau = (-b + i sqrt|D|)/(2a);
the minimal polynomial of j(tau) over all classes is computed in floating
point and rounded.  Factoring it modulo p then reads off how p decomposes
in the corresponding ring of algebraic integers.
"""

import json
import math
import os
from dataclasses import dataclass, replace
from itertools import zip_longest

import mpmath

from .arith import is_prime, kronecker
from .classgroup import classes_representing, order
from .errors import DomainError, InternalError, NonGenericPrime, PrecisionError
from .forms import Discriminant, Form, enumerate_reduced, is_reduced
from .kernels import find_witness

_DIGITS_CAP = 20000
_RESIDUAL_LIMIT = 1e-5

_NONMAXIMAL_MSG = (
    "discriminant %d = %d^2 * %d is not fundamental; the splitting field "
    "would be a ring class field, where the class order is ambiguous"
)


@dataclass(frozen=True)
class CMPoint:
    """Upper half-plane point attached to a form, with its working precision."""

    form: Form
    real: object
    imag: object
    digits: int

    def __post_init__(self):
        if not self.imag > 0:
            raise InternalError("CM point off the upper half-plane")
        if is_reduced(self.form):
            # reduced forms land in the standard fundamental domain
            eps = mpmath.mpf(10) ** (-5)
            if abs(self.real) > mpmath.mpf(1) / 2 + eps:
                raise InternalError("reduced form with |Re tau| > 1/2")
            if self.real**2 + self.imag**2 < 1 - eps:
                raise InternalError("reduced form with |tau| < 1")


def cm_point(f: Form, digits: int) -> CMPoint:
    if digits > _DIGITS_CAP:
        raise PrecisionError("%d digits exceeds the %d cap" % (digits, _DIGITS_CAP))
    # carry enough digits that j at this point stays accurate in absolute terms
    lift = int(math.pi * math.sqrt(abs(f.disc)) / (f.a * math.log(10)))
    with mpmath.workdps(digits + lift + 15):
        real = mpmath.mpf(-f.b) / (2 * f.a)
        imag = mpmath.sqrt(abs(f.disc)) / (2 * f.a)
        return CMPoint(f, real, imag, digits)


def _reduce_tau(tau):
    # j is SL2(Z)-invariant; move tau into |Re| <= 1/2, |tau| >= 1
    while True:
        tau -= mpmath.floor(tau.real + mpmath.mpf(1) / 2)
        if tau.real**2 + tau.imag**2 >= 1:
            return tau
        tau = -1 / tau


def _series_length(im: float, digits: int) -> int:
    # terms are under 1000 n^4 |q|^n; stop once the next one clears the target
    target = -(digits + 5) * math.log(10)
    log_q = -2 * math.pi * im
    n = 1
    while math.log(1000.0) + 4 * math.log(n + 2) + (n + 1) * log_q >= target:
        n += 1
    return n


def _sigma3(limit: int) -> list:
    out = [0] * (limit + 1)
    for d in range(1, limit + 1):
        cube = d * d * d
        for m in range(d, limit + 1, d):
            out[m] += cube
    return out


def j_invariant(tau, digits: int = 50):
    """Evaluate the modular j-function to the requested decimal accuracy.

    The Eisenstein series E4 and the eta product for the discriminant are
    summed until the dropped tail is below 10^(-digits-5), which the
    fundamental-domain bound |q| <= exp(-pi sqrt 3) makes a short sum.
    """
    if digits > _DIGITS_CAP:
        raise PrecisionError("%d digits exceeds the %d cap" % (digits, _DIGITS_CAP))
    parts = (tau.real, tau.imag) if isinstance(tau, CMPoint) else (tau,)
    # conversions stay inside workdps blocks so nothing rounds to ambient
    with mpmath.workdps(digits + 15):
        probe = mpmath.mpc(*parts)
        if not probe.imag > 0:
            raise DomainError("tau must lie in the upper half-plane")
        im_reduced = float(_reduce_tau(probe).imag)
    work = digits + int(2 * math.pi * im_reduced / math.log(10)) + 15
    if work > _DIGITS_CAP:
        raise PrecisionError("tau needs %d working digits, over the cap" % work)
    with mpmath.workdps(work):
        tau = _reduce_tau(mpmath.mpc(*parts))
        terms = _series_length(float(tau.imag), digits)
        sigma = _sigma3(terms)
        q = mpmath.exp(2j * mpmath.pi * tau)
        e4 = mpmath.mpc(1)
        eta = mpmath.mpc(1)
        qn = mpmath.mpc(1)
        for n in range(1, terms + 1):
            qn *= q
            e4 += 240 * sigma[n] * qn
            eta *= 1 - qn
        return e4**3 / (q * eta**24)


@dataclass(frozen=True)
class ClassPolynomial:
    """Monic integer minimal polynomial of the j-values, coefficients ascending."""

    discriminant: int
    coefficients: tuple
    residual: float

    def __post_init__(self):
        if self.coefficients[-1] != 1:
            raise InternalError("class polynomial must be monic")
        if not self.residual < _RESIDUAL_LIMIT:
            raise InternalError("rounding residual out of contract")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


def _require_fundamental(delta: int) -> Discriminant:
    d = Discriminant(delta)
    if not d.fundamental:
        s = d.conductor
        raise DomainError(_NONMAXIMAL_MSG % (delta, s, delta // (s * s)))
    return d


def _load_cache(path: str) -> dict:
    if not os.path.exists(path):
        return {}
    with open(path, "r", encoding="ascii") as fh:
        return json.load(fh)


def _store_cache(path: str, table: dict) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        json.dump(table, fh, sort_keys=True, separators=(",", ":"))
    os.replace(tmp, path)


def hilbert_class_polynomial(d, cache: str = None) -> ClassPolynomial:
    """Product of (X - j(tau)) over the reduced classes, rounded to Z[X].

    Precision starts at the standard coefficient-size estimate
    (pi sqrt|D| / ln 10) * sum(1/a) plus guard digits, doubling the guard
    while the rounding residual stays above threshold.
    """
    delta = int(d)
    _require_fundamental(delta)
    if cache is not None:
        table = _load_cache(cache)
        hit = table.get(str(delta))
        if hit is not None:
            return ClassPolynomial(delta, tuple(int(c) for c in hit), 0.0)

    classes = enumerate_reduced(delta)
    estimate = math.ceil(
        math.pi * math.sqrt(abs(delta)) / math.log(10) * sum(1 / f.a for f in classes)
    )
    poly = None
    residual = None
    guard = 15
    for _ in range(5):
        digits = estimate + guard
        with mpmath.workdps(digits):
            roots = [j_invariant(cm_point(f, digits), digits) for f in classes]
            coeffs = [mpmath.mpc(1)]
            for root in roots:
                coeffs = [mpmath.mpc(0)] + coeffs
                for k in range(len(coeffs) - 1):
                    coeffs[k] -= root * coeffs[k + 1]
            rounded = [int(mpmath.nint(c.real)) for c in coeffs]
            residual = max(
                max(abs(c.real - r) for c, r in zip(coeffs, rounded)),
                max(abs(c.imag) for c in coeffs),
            )
            if residual < _RESIDUAL_LIMIT:
                poly = rounded
                residual = float(residual)
                break
        guard *= 2
    if poly is None:
        raise PrecisionError(
            "class polynomial for %d kept residual %s after retries"
            % (delta, mpmath.nstr(residual))
        )
    if len(poly) - 1 != len(classes):
        raise InternalError("degree drifted from the class count")

    if cache is not None:
        table[str(delta)] = [str(c) for c in poly]
        _store_cache(cache, table)
    return ClassPolynomial(delta, tuple(poly), residual)


# dense polynomial arithmetic over F_p, coefficients ascending


def _trim(f: list) -> list:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def _pmod(f, g, p):
    f = f[:]
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        coef = f[-1] * inv % p
        if coef:
            shift = len(f) - len(g)
            for i, b in enumerate(g):
                f[shift + i] = (f[shift + i] - coef * b) % p
        f.pop()
    return _trim(f)


def _pgcd(f, g, p):
    while g:
        f, g = g, _pmod(f, g, p)
    if f:
        inv = pow(f[-1], -1, p)
        f = [c * inv % p for c in f]
    return f


def _ppowmod(base, e, mod, p):
    out = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            out = _pmod(_pmul(out, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return out


def _pdiv(f, g, p):
    # exact quotient, g monic
    q = [0] * (len(f) - len(g) + 1)
    f = f[:]
    while len(f) >= len(g):
        coef = f[-1]
        q[len(f) - len(g)] = coef
        if coef:
            shift = len(f) - len(g)
            for i, b in enumerate(g):
                f[shift + i] = (f[shift + i] - coef * b) % p
        f.pop()
    if _trim(f):
        raise InternalError("non-exact polynomial division")
    return q


def distinct_degree_factor(poly, p: int) -> list:
    """Degrees and multiplicities of the irreducible factors mod p.

    Returns [(d, count), ...] meaning count irreducible factors of degree d,
    found by gcds against the x^(p^d) - x ladder.  The input must be
    squarefree mod p.
    """
    if not is_prime(p):
        raise DomainError("modulus %d is not prime" % p)
    f = _trim([c % p for c in poly])
    if len(f) <= 1:
        return []
    inv = pow(f[-1], -1, p)
    f = [c * inv % p for c in f]
    deriv = _trim([i * c % p for i, c in enumerate(f)][1:])
    if len(_pgcd(f, deriv, p)) != 1:
        raise NonGenericPrime("repeated factor mod %d" % p)

    out = []
    w = [0, 1]
    d = 0
    while len(f) > 1:
        d += 1
        if len(f) - 1 < 2 * d:
            out.append((len(f) - 1, 1))
            break
        w = _ppowmod(w, p, f, p)
        g = _pgcd([(a - b) % p for a, b in zip_longest(w, [0, 1], fillvalue=0)], f, p)
        if len(g) > 1:
            out.append((d, (len(g) - 1) // d))
            f = _pdiv(f, g, p)
            w = _pmod(w, f, p)
    return out


@dataclass(frozen=True)
class SplitReport:
    """How a rational prime decomposes across the quadratic and class layers."""

    p: int
    kronecker_dK: int
    f: int
    g: int
    total: int
    m: int = None


def splitting_count(p: int, d, cache: str = None) -> SplitReport:
    """Count the primes above p in the field cut out by the class polynomial.

    For split p the common irreducible factor degree f of the class
    polynomial mod p gives g = h/f primes over each of the two quadratic
    primes, so total = 2g.  Inert p are reported informationally: the
    quadratic layer is a single prime of residue degree 2 which then splits
    completely above, giving total = h.
    """
    delta = int(d)
    _require_fundamental(delta)
    if not is_prime(p):
        raise DomainError("%d is not prime" % p)
    if delta % p == 0:
        raise DomainError("%d divides the field discriminant %d" % (p, delta))
    poly = hilbert_class_polynomial(delta, cache)
    h = poly.degree
    if kronecker(delta, p) == -1:
        return SplitReport(p, -1, 2, h, h)
    pattern = distinct_degree_factor(poly.coefficients, p)
    if len(pattern) != 1:
        raise InternalError("split prime with mixed factor degrees: %r" % pattern)
    f, count = pattern[0]
    if f * count != h:
        raise InternalError("factor degrees do not add up to the class number")
    return SplitReport(p, 1, f, count, 2 * count)


@dataclass(frozen=True)
class Theorem8Check:
    """Splitting count against the orders of the classes representing p."""

    p: int
    discriminant: int
    report: SplitReport
    representing: tuple
    m: int
    ok: bool

    def __bool__(self) -> bool:
        return self.ok


def verify_theorem8(p: int, d, cache: str = None) -> Theorem8Check:
    """Check total = 2h/m where m is the order of a class representing p.

    The representing classes are found by direct witness search and
    cross-checked against the composition-based decider.  When nothing
    represents p the report must show an inert prime.
    """
    split = splitting_count(p, d, cache)
    delta = int(d)
    classes = enumerate_reduced(delta)
    h = len(classes)
    representing = tuple(
        f for f in classes if find_witness(f.a, f.b, f.c, p, proper=False)
    )
    if set(representing) != classes_representing(delta, p):
        raise InternalError("witness search disagrees with the class decider")

    if not representing:
        if split.kronecker_dK == 1:
            raise InternalError("split prime represented by no class")
        return Theorem8Check(p, delta, split, (), None, True)

    orders = {order(f) for f in representing}
    if len(orders) != 1:
        raise InternalError("representing classes of unequal order: %r" % orders)
    m = orders.pop()
    ok = h % m == 0 and split.total == 2 * (h // m)
    return Theorem8Check(p, delta, replace(split, m=m), representing, m, ok)
