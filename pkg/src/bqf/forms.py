"""Positive definite integral binary quadratic forms and their reduction.

A form (a, b, c) stands for a*x^2 + b*x*y + c*y^2 with discriminant
b^2 - 4ac < 0.  Forms are primitive by construction; the content of an
imprimitive triple must be split off explicitly with ScaledForm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import squarefree_decomposition
from .errors import DomainError, ImprimitiveForm, InternalError, NotPositiveDefinite

Matrix = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))


@dataclass(frozen=True, order=True)
class Form:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.disc >= 0:
            raise NotPositiveDefinite(f"({self.a},{self.b},{self.c}) is not positive definite")
        if math.gcd(self.a, self.b, self.c) != 1:
            raise ImprimitiveForm(
                f"({self.a},{self.b},{self.c}) has content {math.gcd(self.a, self.b, self.c)}"
            )

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.c}"

    @classmethod
    def from_text(cls, text: str) -> "Form":
        """Parse the shared "a,b,c" syntax (signed decimals, no spaces)."""
        parts = text.split(",")
        if len(parts) != 3 or not all(p.lstrip("+-").isdigit() for p in parts):
            raise DomainError(f"expected 'a,b,c', got {text!r}")
        return cls(*(int(p) for p in parts))


@dataclass(frozen=True)
class ScaledForm:
    """An imprimitive form, kept as content times a primitive part."""

    content: int
    primitive: Form

    @classmethod
    def from_coefficients(cls, a: int, b: int, c: int) -> "ScaledForm":
        g = math.gcd(a, b, c)
        if g == 0:
            raise NotPositiveDefinite("the zero form is not positive definite")
        return cls(g, Form(a // g, b // g, c // g))

    def __call__(self, x: int, y: int) -> int:
        return self.content * self.primitive(x, y)

    @property
    def disc(self) -> int:
        return self.content * self.content * self.primitive.disc


@dataclass(frozen=True)
class Discriminant:
    """A negative discriminant with its squarefree decomposition.

    value = s^2 * n with n squarefree, and d_K is the discriminant of
    Q(sqrt(n)): n itself when n = 1 (mod 4), else 4n.
    """

    value: int
    s: int
    n: int
    d_K: int
    fundamental: bool

    def __init__(self, value):
        if isinstance(value, Discriminant):
            value = value.value
        if value >= 0:
            raise DomainError(f"discriminant must be negative, got {value}")
        if value % 4 not in (0, 1):
            raise DomainError(f"discriminant must be 0 or 1 mod 4, got {value}")
        s, n = squarefree_decomposition(value)
        d_K = n if n % 4 == 1 else 4 * n
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d_K", d_K)
        object.__setattr__(self, "fundamental", value == d_K)

    @property
    def conductor(self) -> int:
        # value = conductor^2 * d_K
        return self.s if self.n % 4 == 1 else self.s // 2

    def __int__(self) -> int:
        return self.value


def discriminant(f: Form) -> Discriminant:
    return Discriminant(f.disc)


def is_fundamental(delta: int) -> bool:
    return Discriminant(delta).fundamental


def is_reduced(f: Form) -> bool:
    """|b| <= a <= c, with b >= 0 on either boundary."""
    if not (abs(f.b) <= f.a <= f.c):
        return False
    if (abs(f.b) == f.a or f.a == f.c) and f.b < 0:
        return False
    return True


def _mat_mul(m: Matrix, n: Matrix) -> Matrix:
    return (
        (m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
        (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]),
    )


def apply_matrix(f: Form, m: Matrix) -> tuple[int, int, int]:
    """Coefficients of f((x,y) -> (px+qy, rx+sy)) for m = ((p,q),(r,s))."""
    (p, q), (r, s) = m
    return (
        f(p, r),
        2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s,
        f(q, s),
    )


def reduce(f: Form) -> tuple[Form, Matrix]:
    """The reduced form properly equivalent to f, with a unimodular witness.

    The matrix m has determinant 1 and satisfies f((x,y)*m) = reduced; it
    is re-verified before returning.
    """
    a, b, c = f.a, f.b, f.c
    m = IDENTITY
    while True:
        # translate b into (-a, a]
        r = (a - b) // (2 * a)
        if r:
            a, b, c = a, b + 2 * a * r, a * r * r + b * r + c
            m = _mat_mul(m, ((1, r), (0, 1)))
        if a > c or (a == c and b < 0):
            a, b, c = c, -b, a
            m = _mat_mul(m, ((0, -1), (1, 0)))
            continue
        break
    g = Form(a, b, c)
    if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 1 or apply_matrix(f, m) != (a, b, c):
        raise InternalError(f"reduction matrix audit failed for {f}")
    if not is_reduced(g):
        raise InternalError(f"reduction of {f} returned non-reduced {g}")
    return g, m


def principal_form(d) -> Form:
    d = Discriminant(d)
    if d.value % 4 == 0:
        return Form(1, 0, -d.value // 4)
    return Form(1, 1, (1 - d.value) // 4)


def enumerate_reduced(d) -> list[Form]:
    """All primitive reduced forms of discriminant d, sorted by (a, b, c)."""
    d = Discriminant(d)
    delta = d.value
    out = []
    for a in range(1, math.isqrt(-delta // 3) + 1):
        for b in range(-a, a + 1):
            if (b - delta) % 2:
                continue
            num = b * b - delta
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (-b == a or a == c):
                continue
            if math.gcd(a, math.gcd(b, c)) == 1:
                out.append(Form(a, b, c))
    out.sort()
    return out


def class_number(d) -> int:
    return len(enumerate_reduced(d))
