from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from holant3.exact import (
    HADAMARD,
    Mat2,
    QuadExt,
    as_rat,
    bareiss_det,
    eigen2,
    exact_isqrt,
    mat_pow,
    parse_scalar,
    random_rational,
    rat_str,
    ratio_is_root_of_unity,
    ratio_order,
    scalar_str,
    solve_fraction_free,
    sqrt_rat,
)


def test_as_rat_accepts_exact_forms():
    assert as_rat("3/4") == Fraction(3, 4)
    assert as_rat(-2) == Fraction(-2)
    assert as_rat(" -7/21 ") == Fraction(-1, 3)


@pytest.mark.parametrize("bad", ["0.5", "1e3", "", 0.5, True, None])
def test_as_rat_refuses_inexact(bad):
    with pytest.raises((ValueError, TypeError)):
        as_rat(bad)


def test_rat_str():
    assert rat_str(Fraction(6, 3)) == "2"
    assert rat_str(Fraction(-1, 2)) == "-1/2"


def test_sqrt_rat_demotes_squares():
    assert sqrt_rat(Fraction(9, 4)) == Fraction(3, 2)
    r = sqrt_rat(40)
    assert isinstance(r, QuadExt) and r.radicand == 10 and r.surd == 2


@given(rationals(), rationals(nonzero=True), rationals(), rationals(nonzero=True))
def test_quadext_field_axioms(p, q, r, s):
    x = QuadExt(p, q, 10)
    y = QuadExt.make(r, s, 10)
    assert (x * y) / y == x
    assert x - x == 0
    assert (x + y) - y == x
    assert x * x == x.rational**2 + 10 * x.surd**2 + 2 * x.rational * x.surd * sqrt_rat(10)


def test_quadext_rejects_square_radicand():
    with pytest.raises(ValueError):
        QuadExt(1, 1, 4)


def test_scalar_round_trip():
    v = QuadExt(19, 6, 10)
    assert parse_scalar(scalar_str(v)) == v
    assert parse_scalar(scalar_str(QuadExt(0, Fraction(-1, 3), 7))) == QuadExt(0, Fraction(-1, 3), 7)


def test_eigen_of_lower_triangular():
    c = Fraction(5)
    ed = eigen2(Mat2.of([[1, 0], [3, c]]))
    assert abs(ed.delta) == abs(1 - c)
    assert {ed.lam / ed.mu, ed.mu / ed.lam} == {c, 1 / c}


def test_eigen_identity():
    ed = eigen2(Mat2.identity())
    assert ed.lam == ed.mu == 1 and ed.delta == 0


def test_eigen_jordan_reproduces_matrix():
    m = Mat2.of([[1, 3], [2, 5]])
    ed = eigen2(m)
    assert ed.lam * ed.mu == -1 and ed.lam + ed.mu == 6
    p = ed.jordan_p()
    d = Mat2(ed.lam, 0, 0, ed.mu)
    # rows of P^-1 are left eigenvectors; M = P^-1 diag P in the row convention used for gadgets
    assert p.inverse() @ d @ p == m or p @ d @ p.inverse() == m


@pytest.mark.parametrize(
    "rows,expected",
    [([[0, 1], [-1, 0]], True), ([[1, 1], [-1, 1]], True), ([[1, 3], [2, 5]], False), ([[2, 0], [0, -2]], True)],
)
def test_root_of_unity(rows, expected):
    assert ratio_is_root_of_unity(Mat2.of(rows))[0] is expected


def test_root_of_unity_orders():
    assert ratio_order(Mat2.of([[1, 1], [-1, 1]])) == 4
    assert ratio_order(Mat2.of([[0, 1], [-1, 0]])) == 2


def test_root_of_unity_rejects_singular():
    with pytest.raises(ValueError):
        ratio_is_root_of_unity(Mat2.of([[1, 2], [2, 4]]))


@given(st.lists(rationals(8), min_size=4, max_size=4))
def test_root_of_unity_routes_agree(entries):
    m = Mat2.of([entries[:2], entries[2:]])
    if m.det() != 0:
        ratio_is_root_of_unity(m)  # raises on disagreement


def test_mat_pow():
    m = Mat2.of([[1, 3], [2, 5]])
    assert mat_pow(m, 0) == Mat2.identity()
    assert mat_pow(Mat2.of([[1, 1], [0, 1]]), 3) == Mat2.of([[1, 3], [0, 1]])
    assert mat_pow(m, 2) == Mat2.of([[7, 18], [12, 31]])
    assert HADAMARD @ HADAMARD == Mat2.identity().scale(2)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_fraction_elimination(rows):
    import sympy

    assert bareiss_det(rows) == sympy.Matrix(rows).det()


def test_solve_fraction_free():
    x = solve_fraction_free([[1, 1], [1, 2]], [3, 5])
    assert x == [Fraction(1), Fraction(2)]


@given(st.integers(0, 10**15))
def test_exact_isqrt(n):
    assert exact_isqrt(n * n) == n
    if n > 1:
        with pytest.raises(ValueError):
            exact_isqrt(n * n + 1)


def test_random_rational_is_seeded():
    a = [random_rational(random.Random(4), 20) for _ in range(5)]
    b = [random_rational(random.Random(4), 20) for _ in range(5)]
    assert a == b
    assert all(abs(x.numerator) <= 20 and x.denominator <= 20 for x in a)
