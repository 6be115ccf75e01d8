from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from conftest import rationals, signatures
from holant3.exact import HADAMARD, Mat2
from holant3.signatures import (
    EQ3,
    BinaryCase,
    DenseSig,
    SigKind,
    SymSig3,
    binary_tractable,
    classify_form,
    expand_unary_power,
    flip,
    holo_transform_col,
    holo_transform_row,
    is_affine,
    is_degenerate,
    is_gen_eq,
)


def test_dense_is_big_endian():
    d = DenseSig.from_symmetric((1, 2, 3, 4))
    assert d[(0, 0, 1)] == 2 and d[(1, 1, 0)] == 3 and d[(1, 1, 1)] == 4
    assert d.to_sym3() == SymSig3(1, 2, 3, 4)


def test_dense_rejects_wrong_length():
    with pytest.raises(ValueError):
        DenseSig(3, (1, 2, 3))


@pytest.mark.parametrize("sig,factor", [((1, 2, 4, 8), (1, 2)), ((1, -1, 1, -1), (1, -1))])
def test_degenerate(sig, factor):
    (u0, u1), k = is_degenerate(SymSig3(*sig))
    assert (u1 / u0) == Fraction(factor[1], factor[0])


def test_not_degenerate():
    assert is_degenerate(SymSig3(1, 1, -1, -1)) is None


@pytest.mark.parametrize("sig,expected", [((1, 0, 0, 1), True), ((1, 0, 0, 5), True), ((1, 0, -1, 2), False)])
def test_gen_eq(sig, expected):
    assert is_gen_eq(SymSig3(*sig)) is expected


def test_affine_forms():
    assert is_affine(SymSig3(2, 2, -2, -2))[:2] == ("[1,1,-1,-1]", 2)
    assert is_affine(SymSig3(-3, 0, 3, 0))[:2] == ("[1,0,-1,0]", -3)
    assert is_affine(SymSig3(1, 2, 3, 4)) is None
    assert is_affine(SymSig3(0, 1, 0, 1)) == ("[1,0,1,0]", 1, True)


@given(signatures())
def test_classification_reexpands(values):
    s = SymSig3(*values)
    cls = classify_form(s)
    assert cls.verify(s)
    assert classify_form(flip(s)).tractable == cls.tractable


@given(rationals(), rationals(), rationals(nonzero=True))
def test_unary_cubes_are_degenerate(u0, u1, k):
    s = expand_unary_power((u0, u1)).scale(k)
    assert classify_form(s).kind is SigKind.DEGENERATE


@pytest.mark.parametrize(
    "g,case",
    [((2, 1, Fraction(1, 2)), BinaryCase.X_EQ_1), ((0, 1, 0), BinaryCase.X_Z_0), ((1, 1, 2), BinaryCase.HARD),
     ((1, 1, -1), BinaryCase.X_NEG1_Z_0), ((1, 0, 1), BinaryCase.UNNORMALIZABLE)],
)
def test_binary_cases(g, case):
    assert binary_tractable(g) is case


def test_hadamard_images():
    assert holo_transform_row(SymSig3(3, -1, -1, 3), HADAMARD).to_sym3() == SymSig3(0, 0, 8, 0)
    assert holo_transform_row(SymSig3(1, 0, -1, 2), HADAMARD).to_sym3() == SymSig3(0, 0, 4, -4)
    t, k = holo_transform_col(EQ3, HADAMARD)
    assert t.to_sym3() == SymSig3(1, 0, 1, 0) and k == Fraction(1, 4)
    u, k = holo_transform_col(DenseSig(1, (1, 0)), HADAMARD)
    assert u.values == (1, 1) and k == Fraction(1, 2)


def test_identity_transform():
    s = SymSig3(1, 2, 3, 5)
    assert holo_transform_row(s, Mat2.identity()).to_sym3() == s
    t, k = holo_transform_col(EQ3, Mat2.identity())
    assert t.to_sym3() == EQ3 and k == 1


@given(signatures(), rationals(6), rationals(6), rationals(6), rationals(6))
def test_row_then_inverse_is_identity(values, p, q, r, s):
    m = Mat2(p, q, r, s)
    if m.det() == 0:
        return
    sig = SymSig3(*values)
    back = holo_transform_row(holo_transform_row(sig, m), m.inverse())
    assert back.to_sym3() == sig
