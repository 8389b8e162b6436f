"""Isotropy verdicts checked against exhaustive p-adic vector searches.

The oracle decides whether a diagonal quaternary form has a primitive zero
modulo p^K by meeting the two binary halves in the middle.  With squarefree
entries a primitive solution mod p^3 (odd p) or mod 2^8 lifts by Newton's
lemma, so the search verdict coincides with isotropy over Q_p.
"""

import json
import math
from fractions import Fraction

from bqf.arith import factor, hilbert_symbol, kronecker, valuation
from bqf.forms import Discriminant, Form, enumerate_reduced
from bqf.isotropy import (
    HasseCertificate,
    QuaternaryDiff,
    difference_form,
    hasse_invariant,
    is_anisotropic,
    pair_report,
    trivial_intersection,
)
from bqf.kernels import value_bitmap


def _pair_values(d1, d2, modulus, p):
    # value -> can it be attained with x or y a unit
    out = {}
    for x in range(modulus):
        x_unit = x % p != 0
        t = d1 * x * x
        for y in range(modulus):
            v = (t + d2 * y * y) % modulus
            unit = x_unit or y % p != 0
            cur = out.get(v)
            if cur is None or (unit and not cur):
                out[v] = unit
    return out


def padic_isotropic(diagonal, p, K=None):
    if K is None:
        K = 8 if p == 2 else 3
    modulus = p**K
    left = _pair_values(diagonal[0], diagonal[1], modulus, p)
    right = _pair_values(diagonal[2], diagonal[3], modulus, p)
    for v, unit_left in left.items():
        unit_right = right.get(-v % modulus)
        if unit_right is not None and (unit_left or unit_right):
            return True
    return False


def _padic_square(n, p):
    v = valuation(n, p)
    if v % 2:
        return False
    u = n // p**v
    return u % 8 == 1 if p == 2 else kronecker(u, p) == 1


def criterion_anisotropic(q, p):
    disc = math.prod(q.diagonal)
    return _padic_square(disc, p) and hasse_invariant(q, p) == -hilbert_symbol(
        -1, -1, p
    )


def test_difference_form_examples():
    q = difference_form(Form(1, 0, 5), Form(2, 2, 3))
    assert q.diagonal == (1, 5, -2, -10)
    assert q.pair == (0, 1)
    q2 = difference_form(Form(1, 1, 12), Form(2, 1, 6))
    assert q2.diagonal == (1, 47, -2, -94)
    for quad in (q, q2):
        assert sum(1 for d in quad.diagonal if d > 0) == 2
        for exact, cls in zip(quad.history, quad.diagonal):
            ratio = exact / cls
            assert ratio > 0
            assert math.isqrt(ratio.numerator) ** 2 == ratio.numerator
            assert math.isqrt(ratio.denominator) ** 2 == ratio.denominator


def test_hasse_invariant_unit_diagonal():
    q = QuaternaryDiff((0, 0), (1, 1, 1, 1), (Fraction(1),) * 4)
    for p in (2, 3, 5, 97):
        assert hasse_invariant(q, p) == 1


def test_criterion_matches_search_at_pinned_prime_powers():
    q = difference_form(Form(1, 0, 5), Form(2, 2, 3))
    assert criterion_anisotropic(q, 5)
    assert criterion_anisotropic(q, 2)
    assert not padic_isotropic(q.diagonal, 5, K=4)
    assert not padic_isotropic(q.diagonal, 2, K=8)


def test_criterion_matches_search_sweep():
    for delta in (-20, -23, -47, -84):
        classes = enumerate_reduced(delta)
        for i in range(len(classes)):
            for j in range(i + 1, len(classes)):
                q = difference_form(classes[i], classes[j], (i, j))
                disc = 2 * abs(math.prod(q.diagonal))
                for p in (2, 3, 5, 7):
                    if disc % p:
                        continue
                    assert criterion_anisotropic(q, p) == (
                        not padic_isotropic(q.diagonal, p)
                    )


def test_anisotropic_pair_certificate():
    q = difference_form(Form(1, 0, 5), Form(2, 2, 3))
    ok, cert = is_anisotropic(q)
    assert ok and isinstance(cert, HasseCertificate)
    assert cert.verdict and cert.recompute()
    assert cert.prime == 2
    assert cert.epsilon == hasse_invariant(q, cert.prime)
    assert cert.minus_one_pair == hilbert_symbol(-1, -1, cert.prime)
    assert (2 * abs(math.prod(q.diagonal))) % cert.prime == 0


def test_isotropy_witness_same_class():
    f = Form(1, 1, 12)
    ok, witness = is_anisotropic(difference_form(f, f))
    assert not ok
    assert witness == (1, 0, 1, 0)


def test_isotropy_witness_distinct_classes():
    classes = enumerate_reduced(-47)
    f, g = classes[0], classes[1]
    ok, (x, y, z, w) = is_anisotropic(difference_form(f, g, (0, 1)))
    assert not ok
    assert (x, y, z, w) != (0, 0, 0, 0)
    assert f(x, y) == g(z, w)


def test_hilbert_product_formula():
    for delta in (-20, -47, -84):
        classes = enumerate_reduced(delta)
        for i in range(len(classes)):
            for j in range(i, len(classes)):
                q = difference_form(classes[i], classes[j], (i, j))
                disc = math.prod(q.diagonal)
                total = hasse_invariant(q, math.inf)
                for p, _ in factor(2 * abs(disc)):
                    total *= hasse_invariant(q, p)
                assert total == 1


def test_verdicts_match_common_value_search():
    for delta in range(-15, -201, -1):
        if delta % 4 not in (0, 1):
            continue
        classes = enumerate_reduced(delta)
        packed = [
            int.from_bytes(value_bitmap(f.a, f.b, f.c, 10**4)[1:], "little")
            for f in classes
        ]
        for i in range(len(classes)):
            for j in range(i + 1, len(classes)):
                anis, payload = is_anisotropic(
                    difference_form(classes[i], classes[j], (i, j))
                )
                if anis:
                    assert packed[i] & packed[j] == 0
                    assert payload.recompute()
                else:
                    x, y, z, w = payload
                    assert (x, y, z, w) != (0, 0, 0, 0)
                    assert classes[i](x, y) == classes[j](z, w)


def test_trivial_intersection_goldens():
    v20 = trivial_intersection(-20)
    assert v20.trivial and v20.branch == "fundamental-even"
    assert v20.witness is None and v20.pair == (0, 1)
    assert v20.certificate is not None and v20.certificate.recompute()

    v23 = trivial_intersection(-23)
    assert not v23.trivial and v23.branch == "odd-class-number"
    assert v23.witness == 6
    for f, (x, y) in zip(enumerate_reduced(-23), v23.witnesses):
        assert f(x, y) == 6

    v47 = trivial_intersection(-47)
    assert not v47.trivial and v47.witness == 144
    for f, (x, y) in zip(enumerate_reduced(-47), v47.witnesses):
        assert f(x, y) == 144

    v48 = trivial_intersection(-48)
    assert not v48.trivial and v48.branch == "pairwise" and v48.witness == 4

    v4 = trivial_intersection(-4)
    assert not v4.trivial and v4.witness == 1


def test_even_fundamental_always_trivial():
    for delta in range(-3, -501, -1):
        if delta % 4 not in (0, 1) or not Discriminant(delta).fundamental:
            continue
        classes = enumerate_reduced(delta)
        if len(classes) % 2:
            continue
        verdict = trivial_intersection(delta, bound=2000)
        assert verdict.trivial and verdict.certificate is not None
        i, j = verdict.pair
        anis, cert = is_anisotropic(difference_form(classes[i], classes[j], (i, j)))
        assert anis and cert == verdict.certificate


def test_pair_report_shape():
    classes = enumerate_reduced(-20)
    report = pair_report(classes[0], classes[1])
    assert report == {"pair": [0, 1], "anisotropic": True, "prime": 2, "epsilon": 1}
    same = pair_report(Form(1, 1, 12), Form(1, 1, 12))
    assert same == {"pair": [0, 0], "anisotropic": False, "witness": [1, 0, 1, 0]}
    json.dumps(report)
