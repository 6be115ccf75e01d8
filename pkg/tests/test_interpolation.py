from __future__ import annotations

import pytest
from hypothesis import given

from conftest import rationals
from holant3.exact import Mat2, QuadExt, ratio_is_root_of_unity
from holant3.gadgets import g1_matrix
from holant3.holant import eval_brute
from holant3.interpolation import (
    InterpolationError,
    SlottedGrid,
    direct_with_D,
    four_vertex_grid,
    omega,
    slotted_fixture,
    unary_interp_coeffs,
    vandermonde_recover,
)
from holant3.signatures import SymSig3

F = SymSig3(1, 2, 3, 5)


@pytest.mark.parametrize("n", [1, 2])
def test_vandermonde_matches_direct(n):
    sg = slotted_fixture(n, F)
    v = vandermonde_recover(sg, F)
    assert v.value == direct_with_D(sg, F).value
    assert isinstance(v.value, QuadExt) and v.value.radicand == 10


def test_no_slots_is_brute_force():
    sg = slotted_fixture(0, F)
    assert vandermonde_recover(sg, F).value == eval_brute(four_vertex_grid(F))


def test_omega_zero_is_original():
    sg = slotted_fixture(2, F)
    assert eval_brute(omega(sg, 0)) == eval_brute(sg.grid)


def test_slots_must_be_edges():
    with pytest.raises(ValueError):
        SlottedGrid(four_vertex_grid(F), (99,))


@pytest.mark.parametrize("f", [(1, 1, 1, -1), (1, 2, 3, 5), (1, 0, 1, 1), (1, -1, 2, 1)])
def test_precondition_tracks_root_of_unity(f):
    f = SymSig3(*f)
    m = g1_matrix(f)
    fails = m.det() == 0 or ratio_is_root_of_unity(m)[0]
    sg = slotted_fixture(1, f)
    if fails:
        with pytest.raises(InterpolationError):
            vandermonde_recover(sg, f)
    else:
        try:
            vandermonde_recover(sg, f)
        except InterpolationError as e:
            assert "Jordan" in str(e)  # complex eigenvalues: works, but no real factorization


@given(rationals(9, nonzero=True), rationals(9, nonzero=True))
def test_unary_spans_from_lower_triangular(a, c):
    if c in (1, -1):
        return
    m = Mat2.of([[1, 0], [a, c]])
    cert = unary_interp_coeffs(m, (0, c))
    assert cert.replay()


def test_row_eigenvector_refused():
    m = Mat2.of([[1, 0], [3, 4]])
    with pytest.raises(InterpolationError):
        unary_interp_coeffs(m, (1, 0))


def test_diagonal_spans():
    cert = unary_interp_coeffs(Mat2.of([[2, 0], [0, 3]]), (1, 1), target=(5, 7))
    assert cert.rows == ((1, 1), (2, 3))
    assert cert.replay()
    alpha, beta = cert.combos[(5, 7)]
    assert (alpha + 2 * beta, alpha + 3 * beta) == (5, 7)


def test_singular_refused():
    with pytest.raises(InterpolationError):
        unary_interp_coeffs(Mat2.of([[1, 2], [2, 4]]), (1, 0))
