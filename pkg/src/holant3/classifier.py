"""The dichotomy for Holant([f0, f1, f2, f3] | =3) over Q, with replayable certificates.

The verdict itself comes from the criterion: P-time exactly when the
signature is degenerate, Gen-Eq or affine.  For hard signatures a
certificate is produced by walking the branches of the hardness proof.  Its
gadget steps are re-contracted, its condition checks re-evaluated and its
binary verdicts re-tested by :func:`certificate_check`.  Steps that rest on a
reduction the code does not execute are recorded as :class:`LemmaCite`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .conditions import eval_condition, which_members
from .exact import HADAMARD, Mat2, Scalar, eigen2, rat_str, ratio_is_root_of_unity, scalar_str
from .gadgets import contract, g1_matrix, g2_matrix, g3_matrix, g4_apply, gadget, gaux_apply
from .planar import family_params
from .signatures import (
    BinaryCase,
    SigClass,
    SigKind,
    SymSig3,
    binary_tractable,
    classify_form,
    flip,
    holo_transform_row,
)

MAX_DEPTH = 6

# ---------------------------------------------------------------------------
# certificate steps


@dataclass(frozen=True)
class Classify:
    sig: SymSig3
    kind: SigKind


@dataclass(frozen=True)
class Flip:
    before: SymSig3
    after: SymSig3


@dataclass(frozen=True)
class Normalize:
    """``before == scalar * after``."""

    before: SymSig3
    scalar: Scalar
    after: SymSig3


@dataclass(frozen=True)
class GadgetStep:
    """Contracting ``name`` with ``input`` gives ``scalar * output``.

    ``output`` is four symmetric values for ternary gadgets and the row-major
    entries of the 2x2 matrix for straddled ones.
    """

    name: str
    input: SymSig3
    output: tuple
    scalar: Scalar


@dataclass(frozen=True)
class HoloStep:
    """``input`` times ``matrix`` on every wire gives ``scalar * output``."""

    matrix: Mat2
    input: SymSig3
    output: SymSig3
    scalar: Scalar


@dataclass(frozen=True)
class ConditionCheck:
    system: str
    point: tuple
    value: bool


@dataclass(frozen=True)
class BinaryVerdict:
    sig: tuple
    case: BinaryCase


@dataclass(frozen=True)
class LemmaCite:
    tag: str
    detail: str = ""


Step = Union[Classify, Flip, Normalize, GadgetStep, HoloStep, ConditionCheck, BinaryVerdict, LemmaCite]


@dataclass
class Certificate:
    signature: SymSig3
    steps: list = field(default_factory=list)

    def add(self, step) -> None:
        self.steps.append(step)

    def lemmas(self) -> list[str]:
        return [s.tag for s in self.steps if isinstance(s, LemmaCite)]

    def gadget_chain(self) -> list[tuple[str, SymSig3, tuple]]:
        return [(s.name, s.input, s.output) for s in self.steps if isinstance(s, GadgetStep)]


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class PTime:
    reason: SigClass
    note: str | None = None
    certificate: Certificate | None = None

    hard = False

    def __str__(self):
        s = f"P-time ({self.reason})"
        return s + f"; {self.note}" if self.note else s


@dataclass(frozen=True)
class SharpPHard:
    certificate: Certificate

    hard = True

    def __str__(self):
        return "#P-hard"


@dataclass(frozen=True)
class SharpPHardButPlanarPTime:
    a: Fraction
    b: Fraction
    certificate: Certificate

    hard = True

    def __str__(self):
        return f"#P-hard; planar P-time (a={rat_str(self.a)}, b={rat_str(self.b)})"


Verdict = Union[PTime, SharpPHard, SharpPHardButPlanarPTime]

ZERO_NOTE = "Holant identically 0"


def _sym(f) -> SymSig3:
    return f if isinstance(f, SymSig3) else SymSig3(*f)


def dichotomy(f) -> Verdict:
    """Classify Holant(f | =3) for a rational symmetric ternary ``f``."""
    f = _sym(f)
    cls = classify_form(f)
    if cls.tractable:
        cert = Certificate(f, [Classify(f, cls.kind)])
        return PTime(cls, ZERO_NOTE if f.is_zero() else None, cert)
    cert = Certificate(f, [Classify(f, SigKind.NOT_TRACTABLE)])
    _hard(f, cert, 0)
    fam = family_params(f)
    if fam is not None and fam[0] != 0:
        return SharpPHardButPlanarPTime(fam[0], fam[1], cert)
    return SharpPHard(cert)


# ---------------------------------------------------------------------------
# the works predicate


def g_works(which: str, f) -> tuple[bool, str | None]:
    """Whether gadget ``which`` (G1, G2 or G3) works on the normalized ``f``.

    Returns ``(True, None)`` or ``(False, reason)`` where reason names the
    degeneracy or the matched root-of-unity line.
    """
    f = _sym(f)
    if f.f0 != 1:
        raise ValueError(f"g_works expects [1, a, b, c], got {f}")
    m = {"G1": g1_matrix, "G2": g2_matrix, "G3": g3_matrix}[which](f)
    if m.det() == 0:
        return False, "degenerate"
    rou, cond = ratio_is_root_of_unity(m)
    if not rou:
        return True, None
    p = f.values[1:]
    if which == "G1":
        lines = which_members("C1EQ", p)
        return False, f"C1EQ{lines[0]}" if lines else cond
    lines = which_members(f"C3EQ:{which}", p)
    return False, f"C3EQ:{which}:{lines[0]}" if lines else cond


# ---------------------------------------------------------------------------
# certificate generation


def _gadget_step(cert: Certificate, name: str, f: SymSig3) -> SymSig3 | Mat2:
    if name == "G4":
        out = g4_apply(f)
    elif name == "Gaux":
        out = gaux_apply(f)
    elif name in ("G1", "G2", "G3"):
        m = {"G1": g1_matrix, "G2": g2_matrix, "G3": g3_matrix}[name](f)
        cert.add(GadgetStep(name, f, (m.m00, m.m01, m.m10, m.m11), Fraction(1)))
        return m
    else:
        raise ValueError(name)
    cert.add(GadgetStep(name, f, out.values, Fraction(1)))
    return out


def _check(cert: Certificate, system: str, p) -> bool:
    v = eval_condition(system, p)
    cert.add(ConditionCheck(system, tuple(p), v))
    return v


def _binary(cert: Certificate, g) -> BinaryCase:
    g = tuple(g)
    case = binary_tractable(g)
    cert.add(BinaryVerdict(g, case))
    return case


def _hard(f: SymSig3, cert: Certificate, depth: int) -> None:
    """Append steps showing that the non-tractable ``f`` is #P-hard."""
    if depth > MAX_DEPTH:
        cert.add(LemmaCite("main", "recursion bound reached; hardness by the main theorem"))
        return
    if depth > 0:
        cls = classify_form(f)
        cert.add(Classify(f, cls.kind))
        if cls.tractable:
            # the gadget route left the hard region; nothing more can be grounded here
            cert.add(LemmaCite("main", "gadget output is tractable; hardness by the main theorem"))
            return
    f0, f1, f2, f3 = f.values
    if f0 == 0 and f3 == 0:
        _hard_0ab0(f, cert, depth)
        return
    if f0 == 0:
        g = flip(f)
        cert.add(Flip(f, g))
        f = g
    n = f.scale(1 / f.f0)
    if n != f:
        cert.add(Normalize(f, f.f0, n))
    _hard_normalized(n, cert, depth)


def _hard_0ab0(f: SymSig3, cert: Certificate, depth: int) -> None:
    cert.add(LemmaCite("0ab0"))
    a, b = f.f1, f.f2
    if a == 0 or b == 0:
        if a == 0:
            g = flip(f)
            cert.add(Flip(f, g))
            f = g
        n = f.scale(1 / f.f1)
        if n != f:
            cert.add(Normalize(f, f.f1, n))
        cert.add(LemmaCite("exact-cover", "[0,1,0,0] counts exact covers of a 3-uniform family"))
        return
    if a == b:
        n = f.scale(1 / a)
        if n != f:
            cert.add(Normalize(f, a, n))
        g = _gadget_step(cert, "Gaux", n)
        _hard(g, cert, depth + 1)
        return
    g = _gadget_step(cert, "G4", f)
    _hard(g, cert, depth + 1)


def _hard_normalized(f: SymSig3, cert: Certificate, depth: int) -> None:
    _, a, b, c = f.values
    p = (a, b, c)
    if eval_condition("FORM:easy", p):
        _check(cert, "FORM:easy", p)
        cert.add(LemmaCite("easy"))
        if a == Fraction(-1, 3):
            _holo(cert, f)
            cert.add(LemmaCite("easy:hadamard", "equivalent to [0,0,1,0] | [1,0,1,0]"))
        else:
            _binary(cert, (1 + a, 2 * a, 1 + a))
        return
    if eval_condition("FORM:p3", p):
        _check(cert, "FORM:p3", p)
        _holo(cert, f)
        cert.add(LemmaCite("p3"))
        return
    if c == 0:
        _hard_1ab0(f, cert, depth)
    elif a == 0 or b == 0:
        _hard_1a0c(f, cert, depth)
    else:
        _hard_large5(f, cert, depth)


def _holo(cert: Certificate, f: SymSig3) -> SymSig3:
    out = holo_transform_row(f, HADAMARD).to_sym3()
    cert.add(HoloStep(HADAMARD, f, out, Fraction(1)))
    return out


def _hard_1ab0(f: SymSig3, cert: Certificate, depth: int) -> None:
    _, a, b, c = f.values
    p = (a, b, c)
    cert.add(LemmaCite("1ab0"))
    if a != 0 and b != 0:
        if not _check(cert, "C1EQ", p):
            _g1works(f, cert, depth)
            return
        g = _gadget_step(cert, "G4", f)
        _hard(g, cert, depth + 1)
        return
    if b == 0:
        # [1, a, 0, 0]
        g = _gadget_step(cert, "G4", f)
        if a == -1:
            h = flip(g)
            cert.add(Flip(g, h))
            n = h.scale(1 / h.f0)
            cert.add(Normalize(h, h.f0, n))
            _gadget_step(cert, "G3", n)
            _check(cert, "C3EQ:G3", n.values[1:])
            # G3 works; the unary [1, x] from its eigenvector closes one input of [1, -1, 0, 2]
            x = eigen2(g3_matrix(n)).x
            _binary(cert, _g3_binary(n, x))
            cert.add(LemmaCite("1ab0:a=-1"))
            return
        _hard(g, cert, depth + 1)
        return
    # [1, 0, b, 0]
    case = _binary(cert, (1, b * b, b))
    if case.tractable:
        cert.add(LemmaCite("main", "binary is tractable; hardness by the main theorem"))


def _g3_binary(f: SymSig3, x) -> tuple:
    """Connect the unary ``[1, x]`` to one input of ``f``: ``[f0 + x f1, f1 + x f2, f2 + x f3]``."""
    f0, f1, f2, f3 = f.values
    return (f0 + x * f1, f1 + x * f2, f2 + x * f3)


def _hard_1a0c(f: SymSig3, cert: Certificate, depth: int) -> None:
    _, a, b, c = f.values
    if a == 0:
        g = flip(f)
        cert.add(Flip(f, g))
        n = g.scale(1 / g.f0)
        cert.add(Normalize(g, g.f0, n))
        f = n
        _, a, b, c = f.values
        if eval_condition("FORM:p3", (a, b, c)):
            _hard_normalized(f, cert, depth)
            return
    cert.add(LemmaCite("1a0c"))
    p = (a, b, c)
    if c in (1, -1):
        g = _gadget_step(cert, "G4", f)
        _hard(g, cert, depth + 1)
        return
    _check(cert, "C1EQ", p)
    cert.add(LemmaCite("pin", "G1 = diag-like with eigenvalue ratio c; pin [1,0] on the RHS"))
    case = _binary(cert, (1, a, 0))
    if case.tractable:
        cert.add(LemmaCite("main", "binary is tractable; hardness by the main theorem"))


_G4_CHAIN = {
    # [1, 1, -1, 1] and its reversal go through [1, 1, -1, 3] and [1, 1, -5, 19]
    (Fraction(1), Fraction(-1), Fraction(1)): True,
    (Fraction(-1), Fraction(1), Fraction(1)): False,
}


def _hard_large5(f: SymSig3, cert: Certificate, depth: int) -> None:
    _, a, b, c = f.values
    p = (a, b, c)
    cert.add(LemmaCite("large5"))
    if c == a * b:
        _check(cert, "G3WORKS1", p)
        _hard_c_eq_ab(f, cert, depth)
        return
    if not _check(cert, "C1EQ", p):
        _g1works(f, cert, depth)
        return
    if p in _G4_CHAIN:
        _g4_chain(f, cert, depth, flip_first=_G4_CHAIN[p])
        return
    if eval_condition("FORM:1a-a-1", p):
        _check(cert, "FORM:1a-a-1", p)
        cert.add(LemmaCite("1a-a-1"))
        g = _gadget_step(cert, "G4", f)
        _hard(g, cert, depth + 1)
        return
    g = _gadget_step(cert, "Gaux", f)
    if g.f0 != 0 and not _check(cert, "T", p):
        if not _check(cert, "S", p):
            _hard(g, cert, depth + 1)
            return
    elif g.f0 == 0:
        _check(cert, "T", p)
    g2 = _gadget_step(cert, "Gaux", g)
    if g2.f0 != 0 and not _check(cert, "V", p) and not _check(cert, "U", p):
        _hard(g2, cert, depth + 1)
        return
    cert.add(LemmaCite("large5", "outside the published solution lists; hardness by the main theorem"))


def _g4_chain(f: SymSig3, cert: Certificate, depth: int, flip_first: bool) -> None:
    if flip_first:
        g = flip(f)
        cert.add(Flip(f, g))
        f = g
    h = _gadget_step(cert, "G4", f)
    h1 = h.scale(1 / h.f0)
    cert.add(Normalize(h, h.f0, h1))
    h2 = _gadget_step(cert, "G4", h1)
    _hard(h2, cert, depth + 1)


def _hard_c_eq_ab(f: SymSig3, cert: Certificate, depth: int) -> None:
    _, a, b, c = f.values
    p = (a, b, c)
    cert.add(LemmaCite("c=ab"))
    if a + b * b == 0:
        _check(cert, "FORM:p1", p)
        cert.add(LemmaCite("p1"))
        case = _binary(cert, (1 - b**6, -b * b + b**5, b - b**7))
    elif eval_condition("FORM:p2", p):
        _check(cert, "FORM:p2", p)
        _gadget_step(cert, "G2", f)
        cert.add(LemmaCite("p2"))
        case = _binary(cert, (1 - 1 / a, a + 1 / a**3, -1 / a + 1 / a**2))
    elif b == 1:
        g = _gadget_step(cert, "Gaux", f)
        _hard(g, cert, depth + 1)
        return
    else:
        case = _binary(cert, (1 + a * b, a + b * b, b + b * c))
    if case.tractable:
        cert.add(LemmaCite("main", "binary is tractable; hardness by the main theorem"))


def _g1works(f: SymSig3, cert: Certificate, depth: int) -> None:
    """Certificate for the G1-works theorem on [1, a, b, c] with ab != 0."""
    _, a, b, c = f.values
    p = (a, b, c)
    cert.add(LemmaCite("g1works1"))
    if _check(cert, "CON1", p):
        s = (a**3 + b**3) / (a * b)
        if s > 0:
            case = _binary(cert, (1 + b * b / a, a + b**3 / a**2, b + b * b * c / a**2))
            if case.tractable:
                _check(cert, "CON2A", p)
                cert.add(LemmaCite("1-1 X=1"))
        else:
            case = _binary(cert, (b**4 / a**4 + a, b**4 / a**3 + b, b**5 / a**4 + c))
            if case.tractable:
                _check(cert, "CON2B", p)
                cert.add(LemmaCite("1-2 X=1"))
        return
    if _check(cert, "FORM:case2", p):
        case = _binary(cert, (a + 1, a + b, a + 1))
        if case.tractable:
            cert.add(LemmaCite("main", "binary is tractable; hardness by the main theorem"))
        return
    cert.add(LemmaCite("after-unary", "pinning signatures on the RHS"))
    c0 = _binary(cert, (1, a, b))
    c1 = _binary(cert, (a, b, c))
    if c0.tractable and c1.tractable:
        cert.add(LemmaCite("after-unary", "both pinned binaries tractable; delegated"))


# ---------------------------------------------------------------------------
# replay


def _replay_gadget(step: GadgetStep) -> bool:
    sig = contract(gadget(step.name), step.input)
    if step.name in ("G1", "G2", "G3"):
        m = sig.matrix()
        got = (m.m00, m.m01, m.m10, m.m11)
    else:
        got = tuple(sig.symmetric())
    return got == tuple(step.scalar * v for v in step.output)


def _replay(step) -> bool:
    if isinstance(step, Classify):
        return classify_form(step.sig).kind is step.kind
    if isinstance(step, Flip):
        return flip(step.before) == step.after
    if isinstance(step, Normalize):
        return step.scalar != 0 and step.after.scale(step.scalar) == step.before
    if isinstance(step, GadgetStep):
        return _replay_gadget(step)
    if isinstance(step, HoloStep):
        got = holo_transform_row(step.input, step.matrix).to_sym3()
        return got == step.output.scale(step.scalar)
    if isinstance(step, ConditionCheck):
        return eval_condition(step.system, step.point) == step.value
    if isinstance(step, BinaryVerdict):
        return binary_tractable(step.sig) is step.case
    if isinstance(step, LemmaCite):
        return bool(step.tag)
    return False


def certificate_check(cert: Certificate) -> bool:
    """Replay every step; True iff all reproduce exactly and the chain is linked."""
    if not cert.steps or not isinstance(cert.steps[0], Classify) or cert.steps[0].sig != cert.signature:
        return False
    for step in cert.steps:
        try:
            if not _replay(step):
                return False
        except (ValueError, TypeError, ZeroDivisionError, KeyError):
            return False
    return True


def certificate_lines(cert: Certificate) -> list[str]:
    out = []
    for s in cert.steps:
        if isinstance(s, Classify):
            out.append(f"classify {s.sig}: {s.kind.value}")
        elif isinstance(s, Flip):
            out.append(f"flip {s.before} -> {s.after}")
        elif isinstance(s, Normalize):
            out.append(f"normalize {s.before} = {scalar_str(s.scalar)} * {s.after}")
        elif isinstance(s, GadgetStep):
            vals = ", ".join(scalar_str(v) for v in s.output)
            out.append(f"gadget {s.name} on {s.input} -> [{vals}]")
        elif isinstance(s, HoloStep):
            out.append(f"holographic H on {s.input} -> {s.output}")
        elif isinstance(s, ConditionCheck):
            pt = ", ".join(scalar_str(v) for v in s.point)
            out.append(f"condition {s.system} at ({pt}): {s.value}")
        elif isinstance(s, BinaryVerdict):
            vals = ", ".join(scalar_str(v) for v in s.sig)
            out.append(f"binary [{vals}]: {s.case.value}")
        elif isinstance(s, LemmaCite):
            out.append(f"lemma {s.tag}" + (f": {s.detail}" if s.detail else ""))
    return out
