from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from holant3.holant import LEAFLESS, eval_brute
from holant3.planar import (
    NotPlanarEmbedding,
    PlanarGraph,
    count_pm,
    count_pm_brute,
    cycle_graph,
    doubled_cycle,
    face_parity_audit,
    faces,
    family_params,
    family_signature,
    k4_graph,
    kasteleyn_orient,
    pfaffian_det,
    planar_family_eval,
    planar_fixtures,
    prism,
)
from holant3.signatures import SymSig3


def test_family_membership():
    assert family_signature(Fraction(1, 2), Fraction(-1, 2)) == LEAFLESS
    assert family_params(LEAFLESS) == (Fraction(1, 2), Fraction(-1, 2))
    assert family_params(SymSig3(3, -1, -1, 3)) == (1, 0)
    assert family_params(SymSig3(1, 2, 3, 5)) is None


def test_fixture_matching_counts():
    q3 = prism(4).graph
    assert count_pm(q3) == count_pm_brute(q3) == 9
    assert count_pm(cycle_graph(6)) == 2
    assert count_pm(k4_graph()) == 3


@pytest.mark.parametrize("pg", planar_fixtures(), ids=lambda p: p.name)
def test_fixture_kasteleyn(pg):
    g = pg.graph
    orient = kasteleyn_orient(g)
    assert face_parity_audit(g, orient)
    assert count_pm(g) == count_pm_brute(g)
    assert g.n - len(g.edges) + len(faces(g)) == 2


@pytest.mark.parametrize("pg", planar_fixtures(), ids=lambda p: p.name)
def test_leafless_is_matching_count(pg):
    ev = planar_family_eval(Fraction(1, 2), Fraction(-1, 2), pg)
    assert ev.value == ev.matchings == eval_brute(pg.to_grid(LEAFLESS))


def test_cube_leafless_value():
    assert eval_brute(prism(4).to_grid(LEAFLESS)) == 9


@given(rationals(6), rationals(6), st.sampled_from(planar_fixtures()[:6]))
def test_family_eval_matches_brute(a, b, pg):
    ev = planar_family_eval(a, b, pg)
    assert ev.value == eval_brute(pg.to_grid(family_signature(a, b)))
    if a == 0:
        assert ev.value == 0


@given(st.integers(2, 14))
def test_even_cycles(n):
    g = cycle_graph(2 * n)
    assert count_pm(g) == 2
    d = pfaffian_det(g)
    assert d == 4


@given(st.integers(3, 9))
def test_prisms(k):
    g = prism(k).graph
    assert count_pm(g) == count_pm_brute(g)


@given(st.integers(1, 7))
def test_doubled_cycles(k):
    g = doubled_cycle(k).graph
    assert count_pm(g) == count_pm_brute(g)


def test_k33_rotation_rejected():
    edges = tuple((i, 3 + j) for i in range(3) for j in range(3))
    rot = [[] for _ in range(6)]
    for e, (u, v) in enumerate(edges):
        rot[u].append(e)
        rot[v].append(e)
    with pytest.raises(NotPlanarEmbedding):
        faces(PlanarGraph(6, edges, tuple(map(tuple, rot))))


@given(st.integers(0, 10**6))
def test_scrambled_rotation_never_miscounts(seed):
    rng = random.Random(seed)
    g = prism(4).graph
    rot = [list(r) for r in g.rotation]
    for r in rot:
        rng.shuffle(r)
    h = PlanarGraph(g.n, g.edges, tuple(map(tuple, rot)))
    try:
        faces(h)
    except NotPlanarEmbedding:
        return
    assert count_pm(h) == 9


def test_rotation_must_match_edges():
    with pytest.raises(ValueError):
        PlanarGraph(2, ((0, 1),), ((0,), ()))
