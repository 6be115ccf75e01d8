from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import rationals
from holant3 import conditions as cond
from holant3.conditions import (
    CON_SOLUTIONS,
    RS_SOLUTIONS,
    RTV_FAMILY_SAMPLES,
    ConditionId,
    System,
    absorb_lhs_common_factor,
    absorb_rhs_common_factor,
    aux_image,
    eval_condition,
    eval_conjunction,
    falsify_emptiness,
    lhs_absorb_coeffs,
    lhs_exception_family,
    poly_gcd,
    rediscover_y_minus_one,
    rtv_family_point,
    verify_published_solutions,
    which_members,
)
from holant3.exact import Mat2, ratio_is_root_of_unity
from holant3.gadgets import absorb_factor_lhs, g1_matrix
from holant3.signatures import SymSig3


@pytest.mark.parametrize("text,system,index", [("R3", System.R, 3), ("S", System.S, None),
                                               ("C3EQ:G2:4", System.C3EQ_G2, 4), ("FORM:p3", System.FORM, "p3"),
                                               ("CON2A", System.CON2A, None)])
def test_parse_ids(text, system, index):
    cid = ConditionId.parse(text)
    assert (cid.system, cid.index) == (system, index)
    assert str(cid) == text


def test_unknown_id():
    with pytest.raises(ValueError):
        ConditionId.parse("Q7")


def test_documented_members():
    assert eval_condition("R1", (3, 5, -1))
    assert eval_condition("S", (-1, 1, -1))
    w, x, y, z = aux_image(2, 4, 8)
    assert x * y == w * z and 6 in which_members("T", (2, 4, 8))


@given(rationals(9), rationals(9), rationals(9))
def test_c1eq_matches_root_of_unity(a, b, c):
    m = g1_matrix(SymSig3(1, a, b, c))
    if m.det() == 0:
        return
    assert bool(which_members("C1EQ", (a, b, c))) == ratio_is_root_of_unity(m)[0]


def test_published_solutions():
    rep = verify_published_solutions()
    assert rep.ok and len(rep.checks) >= 15


def test_rtv_family():
    for a in RTV_FAMILY_SAMPLES:
        p = rtv_family_point(a)
        assert p[1] == -a and p[2] == -1
        assert eval_conjunction(cond.CONJUNCTIONS["R&T&V"], p)


def test_solution_lists_are_distinct_points():
    assert len(set(RS_SOLUTIONS)) == len(RS_SOLUTIONS)
    assert all(eval_conjunction(cond.CONJUNCTIONS["CON1&CON2A&G3"], p) for p in CON_SOLUTIONS)


def test_poly_gcd():
    # (x - 1)(x + 2) and (x - 1)(x - 3), low degree first
    assert poly_gcd([-2, 1, 1], [3, -4, 1]) == [-1, 1]
    assert poly_gcd([1, 1], [2, 1]) == [1]


@given(rationals(9), rationals(9), rationals(9), rationals(9))
def test_lhs_coeffs_match_closed_form(a, b, c, x):
    polys = lhs_absorb_coeffs(a, b, c)
    vals = absorb_factor_lhs(SymSig3(1, a, b, c), x)
    for coeffs, v in zip(polys, vals):
        assert sum(k * x**i for i, k in enumerate(coeffs)) == v


@pytest.mark.parametrize("f,family", [((1, 2, 4, 8), "degenerate"), ((1, 3, 3, 1), "easy"), ((1, 2, -5, 8), "p3")])
def test_wiring_exception_families(f, family):
    assert absorb_lhs_common_factor(SymSig3(*f)) != [1]
    assert lhs_exception_family(*f[1:]) == family


def test_published_lhs_polys_have_no_common_root_on_families():
    for f in ((1, 3, 3, 1), (1, 2, -5, 8)):
        assert absorb_lhs_common_factor(SymSig3(*f), variant="published") == [1]


def test_rhs_common_root_at_minus_one():
    assert absorb_rhs_common_factor(SymSig3(1, 2, 2, 1)) == [1, 1]
    assert absorb_rhs_common_factor(SymSig3(1, 2, 3, 5)) == [1]


def test_rediscovery_finds_two_families():
    found = rediscover_y_minus_one(samples=60, seed=3)
    assert {r.family for r in found} == {"easy", "p3"}
    assert all(absorb_rhs_common_factor(SymSig3(1, r.a, r.b, r.c))[:2] != [1] for r in found)


@pytest.mark.parametrize("system", cond.FALSIFIABLE)
def test_falsification_small(system):
    rep = falsify_emptiness(system, samples=300, seed=11)
    assert rep.ok, rep.hits[:3]


def test_falsification_is_seeded():
    a = falsify_emptiness("R&S", samples=200, seed=5)
    b = falsify_emptiness("R&S", samples=200, seed=5)
    assert (a.hits, a.known_hits) == (b.hits, b.known_hits)


def test_falsification_unknown_system():
    with pytest.raises(ValueError):
        falsify_emptiness("nope", samples=1)


def test_random_matrix_routes_agree():
    rng = random.Random(2)
    for _ in range(2000):
        m = Mat2.of([[Fraction(rng.randint(-4, 4)) for _ in range(2)] for _ in range(2)])
        if m.det() != 0:
            ratio_is_root_of_unity(m)
