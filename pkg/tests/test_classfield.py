"""Class polynomial and splitting tests with an independent j oracle.

The oracle evaluates j as 1728 E4^3 / (E4^3 - E6^2) straight from the two
Eisenstein series, a different normalization of the discriminant than the
eta product used in the library, so agreement checks both routes.
"""

import json
import math

import mpmath
import pytest

from bqf.arith import is_prime, kronecker
from bqf.classfield import (
    cm_point,
    distinct_degree_factor,
    hilbert_class_polynomial,
    j_invariant,
    splitting_count,
    verify_theorem8,
)
from bqf.errors import DomainError, NonGenericPrime, PrecisionError
from bqf.forms import Discriminant, Form, enumerate_reduced


def _oracle_j(tau, digits):
    with mpmath.workdps(digits + 30):
        tau = mpmath.mpc(tau)
        terms = digits + 40
        sig3 = [0] * (terms + 1)
        sig5 = [0] * (terms + 1)
        for d in range(1, terms + 1):
            c3 = d**3
            c5 = d**5
            for m in range(d, terms + 1, d):
                sig3[m] += c3
                sig5[m] += c5
        q = mpmath.exp(2j * mpmath.pi * tau)
        e4 = mpmath.mpc(1)
        e6 = mpmath.mpc(1)
        qn = mpmath.mpc(1)
        for n in range(1, terms + 1):
            qn *= q
            e4 += 240 * sig3[n] * qn
            e6 -= 504 * sig5[n] * qn
        return 1728 * e4**3 / (e4**3 - e6**2)


def test_j_matches_eisenstein_oracle():
    targets = [
        mpmath.mpc("0.25", "1.1"),
        mpmath.mpc("-0.35", "0.95"),
        mpmath.mpc(0, 1),
    ]
    for f in enumerate_reduced(-23):
        point = cm_point(f, 40)
        targets.append(mpmath.mpc(point.real, point.imag))
    with mpmath.workdps(70):
        for tau in targets:
            ours = j_invariant(tau, 40)
            theirs = _oracle_j(tau, 40)
            assert abs(ours - theirs) < mpmath.mpf(10) ** -35


def test_j_special_values():
    with mpmath.workdps(80):
        assert abs(j_invariant(mpmath.mpc(0, 1), 50) - 1728) < mpmath.mpf(10) ** -50
        rho = mpmath.mpc(1, mpmath.sqrt(3)) / 2
        assert abs(j_invariant(rho, 50)) < mpmath.mpf(10) ** -50
        assert abs(j_invariant(mpmath.mpc(0, 2), 50) - 287496) < mpmath.mpf(10) ** -45
    with pytest.raises(DomainError):
        j_invariant(mpmath.mpc(1, -1), 30)
    with pytest.raises(PrecisionError):
        j_invariant(mpmath.mpc(0, 1), 10**9)


def test_cm_point_fundamental_domain():
    for delta in (-23, -47, -87):
        for f in enumerate_reduced(delta):
            point = cm_point(f, 30)
            assert point.imag > 0
            assert abs(point.real) <= mpmath.mpf(1) / 2 + mpmath.mpf(10) ** -20
            assert point.real**2 + point.imag**2 >= 1 - mpmath.mpf(10) ** -20


def test_principal_point_is_root_of_class_polynomial():
    poly = hilbert_class_polynomial(-23)
    j = j_invariant(cm_point(Form(1, 1, 6), 60), 60)
    with mpmath.workdps(60):
        value = mpmath.polyval([mpmath.mpf(c) for c in reversed(poly.coefficients)], j)
        scale = max(abs(mpmath.mpf(c)) for c in poly.coefficients)
        assert abs(value) / scale < mpmath.mpf(10) ** -30
        assert abs(j.imag) < mpmath.mpf(10) ** -40


def test_class_polynomial_goldens():
    assert hilbert_class_polynomial(-4).coefficients == (-1728, 1)
    assert hilbert_class_polynomial(-3).coefficients == (0, 1)
    assert hilbert_class_polynomial(-7).coefficients == (3375, 1)
    assert hilbert_class_polynomial(-8).coefficients == (-8000, 1)
    assert hilbert_class_polynomial(-163).coefficients == (262537412640768000, 1)
    h23 = hilbert_class_polynomial(-23)
    assert h23.coefficients == (12771880859375, -5151296875, 3491750, 1)
    assert h23.residual < 1e-5
    h87 = hilbert_class_polynomial(-87)
    assert h87.degree == 6 and h87.coefficients[-1] == 1


def test_degree_equals_class_number():
    for delta in range(-3, -201, -1):
        if delta % 4 not in (0, 1) or not Discriminant(delta).fundamental:
            continue
        poly = hilbert_class_polynomial(delta)
        assert poly.degree == len(enumerate_reduced(delta))
        assert poly.coefficients[-1] == 1
        assert poly.residual < 1e-5


def _recompute_with_extra(delta, extra):
    classes = enumerate_reduced(delta)
    digits = (
        math.ceil(
            math.pi
            * math.sqrt(abs(delta))
            / math.log(10)
            * sum(1 / f.a for f in classes)
        )
        + 15
        + extra
    )
    with mpmath.workdps(digits):
        coeffs = [mpmath.mpc(1)]
        for f in classes:
            root = j_invariant(cm_point(f, digits), digits)
            coeffs = [mpmath.mpc(0)] + coeffs
            for k in range(len(coeffs) - 1):
                coeffs[k] -= root * coeffs[k + 1]
        return tuple(int(mpmath.nint(c.real)) for c in coeffs)


def test_coefficients_stable_under_extra_digits():
    for delta in (-23, -47, -87):
        assert (
            hilbert_class_polynomial(delta).coefficients
            == _recompute_with_extra(delta, 20)
        )


def test_nonfundamental_rejected():
    with pytest.raises(DomainError, match="ring class"):
        hilbert_class_polynomial(-12)
    with pytest.raises(DomainError):
        splitting_count(5, -48)
    with pytest.raises(DomainError):
        verify_theorem8(5, -75)


def test_cache_round_trip(tmp_path):
    path = str(tmp_path / "hcp.json")
    first = hilbert_class_polynomial(-23, cache=path)
    blob = open(path, "rb").read()
    table = json.loads(blob)
    assert table == {"-23": ["12771880859375", "-5151296875", "3491750", "1"]}

    again = hilbert_class_polynomial(-23, cache=path)
    assert again.coefficients == first.coefficients
    assert open(path, "rb").read() == blob

    hilbert_class_polynomial(-4, cache=path)
    table = json.loads(open(path, "rb").read())
    assert set(table) == {"-23", "-4"}
    assert hilbert_class_polynomial(-4, cache=path).coefficients == (-1728, 1)


def test_distinct_degree_factor_examples():
    assert distinct_degree_factor([1, 0, 1], 5) == [(1, 2)]
    assert distinct_degree_factor([1, 0, 1], 7) == [(2, 1)]
    h87 = hilbert_class_polynomial(-87)
    assert distinct_degree_factor(h87.coefficients, 659) == [(6, 1)]
    assert distinct_degree_factor([7], 5) == []
    with pytest.raises(NonGenericPrime):
        distinct_degree_factor([1, 2, 1], 5)
    with pytest.raises(DomainError):
        distinct_degree_factor([1, 0, 1], 6)


def test_distinct_degree_factor_against_root_count():
    poly = [3, 1, 4, 1, 5, 9, 2, 6, 1]
    for p in (13, 17, 101):
        pattern = distinct_degree_factor(poly, p)
        assert sum(d * count for d, count in pattern) == 8
        roots = sum(
            1
            for r in range(p)
            if sum(c * pow(r, i, p) for i, c in enumerate(poly)) % p == 0
        )
        linear = dict(pattern).get(1, 0)
        assert roots == linear


def test_splitting_count_goldens():
    report = splitting_count(659, -87)
    assert (report.kronecker_dK, report.f, report.g, report.total) == (1, 6, 1, 2)

    inert = splitting_count(5, -23)
    assert inert.kronecker_dK == -1
    assert (inert.f, inert.g, inert.total) == (2, 3, 3)

    split = splitting_count(59, -23)
    assert (split.kronecker_dK, split.f, split.g, split.total) == (1, 1, 3, 6)
    # 59 is the smallest prime with class polynomial fully split mod p
    for p in range(2, 59):
        if is_prime(p) and kronecker(-23, p) == 1:
            assert splitting_count(p, -23).f > 1

    with pytest.raises(DomainError):
        splitting_count(23, -23)
    with pytest.raises(DomainError):
        splitting_count(15, -23)


def test_verify_theorem8_goldens():
    check = verify_theorem8(659, -87)
    assert check.ok and bool(check)
    assert check.m == 6 and check.report.total == 2
    assert {(f.a, f.b, f.c) for f in check.representing} == {(2, 1, 11), (2, -1, 11)}
    assert check.report.m == 6

    two = verify_theorem8(2, -23)
    assert two.ok and two.m == 3 and two.report.total == 2

    inert = verify_theorem8(5, -23)
    assert inert.ok and inert.m is None and not inert.representing

    fully = verify_theorem8(59, -23)
    assert fully.ok and fully.m == 1 and fully.report.total == 6


def test_theorem8_sweep(tmp_path):
    cache = str(tmp_path / "hcp.json")
    for delta in (-23, -47, -87):
        h = len(enumerate_reduced(delta))
        for p in range(2, 2000):
            if not is_prime(p) or delta % p == 0:
                continue
            try:
                check = verify_theorem8(p, delta, cache=cache)
            except NonGenericPrime:
                continue
            assert check.ok
            if check.representing:
                # single common factor degree equal to the class order
                assert check.report.f == check.m
                assert check.report.f * check.report.g == h
