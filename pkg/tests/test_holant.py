from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import signatures
from holant3.exact import HADAMARD, Mat2
from holant3.holant import (
    BRUTE_CAP_ENV,
    LEAFLESS,
    CapExceeded,
    MalformedGrid,
    SetSystem,
    SignatureGrid,
    apply_holo_to_grid,
    cover_value,
    disjoint_union,
    eval_brute,
    eval_dp,
    from_set_system,
    k33_grid,
    random_grid,
    random_set_system,
    to_set_system,
    tractable_eval,
)
from holant3.planar import prism
from holant3.signatures import EQ3, SymSig3


def test_k33_values():
    assert eval_brute(k33_grid(LEAFLESS)) == 6
    assert eval_brute(k33_grid(SymSig3(0, 1, 0, 0))) == 3
    assert eval_brute(k33_grid(SymSig3(1, 0, 0, 0))) == 1


def test_tractable_closed_forms():
    assert tractable_eval(k33_grid(SymSig3(1, 2, 4, 8))) == 729 == eval_brute(k33_grid(SymSig3(1, 2, 4, 8)))
    assert tractable_eval(k33_grid(SymSig3(1, 0, 0, 5))) == 126 == eval_brute(k33_grid(SymSig3(1, 0, 0, 5)))
    g = prism(6).to_grid(EQ3)
    assert tractable_eval(g) == 2 == eval_brute(g)


def test_tractable_refuses_hard():
    with pytest.raises(ValueError):
        tractable_eval(k33_grid(LEAFLESS))


def test_malformed_grids():
    with pytest.raises(MalformedGrid):
        SignatureGrid.from_pairs([(0, 0), (0, 0)], LEAFLESS)
    with pytest.raises(MalformedGrid):
        SignatureGrid((LEAFLESS,), (EQ3,), ((0, 0, 0, 0), (0, 0, 0, 1), (0, 1, 0, 2), (0, 2, 0, 0)))


def test_brute_cap(monkeypatch):
    g = random_grid(12, LEAFLESS, random.Random(1))
    with pytest.raises(CapExceeded):
        eval_brute(g, cap=10)
    monkeypatch.setenv(BRUTE_CAP_ENV, "5")
    with pytest.raises(CapExceeded):
        eval_brute(k33_grid())


@given(signatures(4), st.integers(1, 5), st.integers(0, 10**6))
def test_dp_equals_brute(values, n, seed):
    g = random_grid(n, SymSig3(*values), random.Random(seed))
    assert eval_dp(g) == eval_brute(g)


@given(signatures(4), st.integers(1, 4), st.integers(0, 10**6))
def test_disjoint_union_multiplies(values, n, seed):
    rng = random.Random(seed)
    f = SymSig3(*values)
    g, h = random_grid(n, f, rng), random_grid(n, f, rng)
    assert eval_dp(disjoint_union(g, h)) == eval_dp(g) * eval_dp(h)


def test_set_system_round_trip():
    s = SetSystem((0, 1, 2), ((0, 1, 2),) * 3)
    g = from_set_system(s)
    assert eval_brute(g) == eval_brute(k33_grid()) == cover_value(s) == 6
    assert sorted(map(sorted, to_set_system(g).sets)) == sorted(map(sorted, s.sets))


def test_pappus_like_planar_instance():
    g = prism(6).to_grid(LEAFLESS)
    assert len(g.lhs) + len(g.rhs) == 12
    assert cover_value(to_set_system(g)) == eval_brute(g)


def test_set_system_regularity_enforced():
    with pytest.raises(MalformedGrid):
        SetSystem((0, 1, 2), ((0, 1, 2), (0, 1, 2)))


def test_empty_family_counts_once():
    assert cover_value(SetSystem((), ())) == 1


@given(st.integers(1, 7), st.integers(0, 10**6))
def test_cover_equivalence(n, seed):
    s = random_set_system(n, random.Random(seed))
    assert cover_value(s) == eval_brute(from_set_system(s))


def test_k33_hadamard_ledger():
    t, ledger = apply_holo_to_grid(k33_grid(), HADAMARD)
    assert all(s.to_sym3() == SymSig3(0, 0, 4, -4) for s in t.lhs)
    assert all(s.to_sym3() == SymSig3(1, 0, 1, 0) for s in t.rhs)
    assert ledger.value() == Fraction(1, 64)
    assert eval_brute(t) * ledger.value() == 6


def test_identity_transform_keeps_grid():
    g = k33_grid()
    t, ledger = apply_holo_to_grid(g, Mat2.identity())
    assert t == g and ledger.value() == 1


def test_double_hadamard():
    g = k33_grid()
    t1, l1 = apply_holo_to_grid(g, HADAMARD)
    t2, l2 = apply_holo_to_grid(t1, HADAMARD)
    assert all(s.to_sym3() == LEAFLESS.scale(8) for s in t2.lhs)
    assert l1.merge(l2).value() * eval_brute(t2) == eval_brute(g)


def test_singular_transform_rejected():
    with pytest.raises(ValueError):
        apply_holo_to_grid(k33_grid(), Mat2.of([[1, 2], [2, 4]]))


@given(signatures(4), st.integers(1, 5), st.integers(0, 10**6),
       st.sampled_from([HADAMARD, Mat2.of([[1, 2], [0, 1]]), Mat2.of([[2, 3], [-1, 5]])]))
def test_holographic_invariance(values, n, seed, m):
    g = random_grid(n, SymSig3(*values), random.Random(seed))
    t, ledger = apply_holo_to_grid(g, m)
    assert eval_brute(g) == ledger.value() * eval_dp(t)
