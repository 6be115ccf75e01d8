from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from conftest import rationals, signatures
from holant3.classifier import (
    ZERO_NOTE,
    Certificate,
    Classify,
    ConditionCheck,
    GadgetStep,
    LemmaCite,
    PTime,
    SharpPHard,
    SharpPHardButPlanarPTime,
    certificate_check,
    certificate_lines,
    dichotomy,
    g_works,
)
from holant3.signatures import SigKind, SymSig3, classify_form


def test_documented_verdicts():
    v = dichotomy(SymSig3(1, 2, 4, 8))
    assert isinstance(v, PTime) and v.reason.kind is SigKind.DEGENERATE
    assert dichotomy(SymSig3(3, -1, -1, 3)).hard
    v = dichotomy(SymSig3(1, 0, -1, 2))
    assert isinstance(v, SharpPHardButPlanarPTime) and (v.a, v.b) == (Fraction(1, 2), Fraction(-1, 2))
    assert str(v) == "#P-hard; planar P-time (a=1/2, b=-1/2)"
    v = dichotomy(SymSig3(0, 0, 0, 0))
    assert isinstance(v, PTime) and v.note == ZERO_NOTE
    v = dichotomy(SymSig3(1, 1, -1, -1))
    assert isinstance(v, PTime) and v.reason.kind is SigKind.AFFINE


def test_hard_without_planar_escape():
    v = dichotomy(SymSig3(1, 2, 3, 5))
    assert isinstance(v, SharpPHard)


def test_g_works():
    assert g_works("G1", SymSig3(1, 2, 3, 5)) == (True, None)
    assert g_works("G1", SymSig3(1, 2, 3, 6)) == (False, "degenerate")
    ok, why = g_works("G1", SymSig3(1, 1, -1, 1))
    assert not ok and why == "C1EQ3"


def test_g_works_needs_normalized():
    with pytest.raises(ValueError):
        g_works("G1", SymSig3(2, 1, 1, 1))


def test_worked_certificate_chain():
    cert = dichotomy(SymSig3(1, 1, -1, 1)).certificate
    assert certificate_check(cert)
    assert [step[0] for step in cert.gadget_chain()] == ["G4", "G4"]
    lines = certificate_lines(cert)
    assert lines[0].startswith("classify [1, 1, -1, 1]")


@given(signatures(5))
def test_verdict_matches_criterion(values):
    f = SymSig3(*values)
    v = dichotomy(f)
    assert v.hard != classify_form(f).tractable
    assert certificate_check(v.certificate)


@given(rationals(8), rationals(8), rationals(8))
def test_hard_certificates_avoid_fallback(a, b, c):
    v = dichotomy(SymSig3(1, a, b, c))
    if v.hard:
        assert not any(isinstance(s, LemmaCite) and s.tag == "main" for s in v.certificate.steps)


def test_tampered_certificate_fails():
    cert = dichotomy(SymSig3(1, 1, -1, 1)).certificate
    steps = list(cert.steps)
    k = next(i for i, s in enumerate(steps) if isinstance(s, GadgetStep))
    s = steps[k]
    bad = tuple(x + 1 for x in s.output)
    steps[k] = GadgetStep(s.name, s.input, bad, s.scalar)
    assert not certificate_check(Certificate(cert.signature, steps))


def test_flipped_condition_fails():
    cert = dichotomy(SymSig3(1, 2, 3, 5)).certificate
    steps = [ConditionCheck(s.system, s.point, not s.value) if isinstance(s, ConditionCheck) else s
             for s in cert.steps]
    assert not certificate_check(Certificate(cert.signature, steps))


def test_certificate_must_start_with_classification():
    f = SymSig3(1, 2, 3, 5)
    assert not certificate_check(Certificate(f, []))
    assert not certificate_check(Certificate(f, [Classify(SymSig3(1, 2, 3, 4), SigKind.NOT_TRACTABLE)]))
