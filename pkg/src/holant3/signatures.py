"""Signatures: symmetric ternaries, dense truth tables, tractable classes.

Dense signatures use big-endian variable order: the value for the input
``(x_1, ..., x_n)`` sits at index ``sum(x_k << (n - k))``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Sequence

from .exact import Mat2, QuadExt, Scalar, as_rat, rat_str


def _lift(v) -> Scalar:
    return v if isinstance(v, QuadExt) else as_rat(v)


@dataclass(frozen=True)
class SymSig3:
    """A symmetric ternary signature ``[f0, f1, f2, f3]``."""

    values: tuple[Fraction, Fraction, Fraction, Fraction]

    def __init__(self, *values):
        if len(values) == 1 and not isinstance(values[0], (int, Fraction, str)):
            values = tuple(values[0])
        if len(values) != 4:
            raise ValueError(f"a ternary symmetric signature has 4 entries, got {len(values)}")
        object.__setattr__(self, "values", tuple(_lift(v) for v in values))

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i: int) -> Scalar:
        return self.values[i]

    f0 = property(lambda self: self.values[0])
    f1 = property(lambda self: self.values[1])
    f2 = property(lambda self: self.values[2])
    f3 = property(lambda self: self.values[3])

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def scale(self, k) -> SymSig3:
        return SymSig3(*(v * k for v in self.values))

    def normalized(self) -> tuple[Scalar, tuple[Scalar, Scalar, Scalar]]:
        """``(f0, (a, b, c))`` with ``self == f0 * [1, a, b, c]``; needs f0 != 0."""
        f0 = self.values[0]
        if f0 == 0:
            raise ValueError(f"cannot normalize {self}: f0 = 0")
        return f0, tuple(v / f0 for v in self.values[1:])

    def dense(self) -> DenseSig:
        return DenseSig.from_symmetric(self.values)

    def __str__(self):
        return "[" + ", ".join(rat_str(v) for v in self.values) + "]"


EQ3 = SymSig3(1, 0, 0, 1)


def flip(s: SymSig3) -> SymSig3:
    """Exchange the roles of 0 and 1: reverse the entry order."""
    return SymSig3(*reversed(s.values))


class Side(str, enum.Enum):
    LHS = "LHS"
    RHS = "RHS"
    STRADDLED = "straddled"


@dataclass(frozen=True)
class DenseSig:
    """A signature given by its full truth table of length ``2**arity``."""

    arity: int
    values: tuple
    side: Side = Side.LHS
    profile: tuple[int, int] | None = None  # (m, n) for straddled signatures

    def __post_init__(self):
        vals = tuple(_lift(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != 1 << self.arity:
            raise ValueError(f"arity {self.arity} needs {1 << self.arity} values, got {len(vals)}")

    @classmethod
    def from_symmetric(cls, sym: Sequence, side: Side = Side.LHS) -> DenseSig:
        sym = tuple(sym)
        n = len(sym) - 1
        return cls(n, tuple(sym[bin(i).count("1")] for i in range(1 << n)), side)

    @classmethod
    def from_matrix(cls, m: Mat2) -> DenseSig:
        """Straddled binary ``M[i][j]`` with i the LHS-exposed variable first."""
        return cls(2, (m.m00, m.m01, m.m10, m.m11), Side.STRADDLED, (1, 1))

    def __getitem__(self, bits: Sequence[int]) -> Scalar:
        idx = 0
        for b in bits:
            idx = (idx << 1) | b
        return self.values[idx]

    def is_symmetric(self) -> bool:
        seen: dict[int, Scalar] = {}
        for i, v in enumerate(self.values):
            w = bin(i).count("1")
            if seen.setdefault(w, v) != v:
                return False
        return True

    def symmetric_values(self) -> tuple:
        if not self.is_symmetric():
            raise ValueError("signature is not symmetric")
        return tuple(self.values[(1 << w) - 1] for w in range(self.arity + 1))

    def to_sym3(self) -> SymSig3:
        if self.arity != 3:
            raise ValueError("not ternary")
        return SymSig3(*self.symmetric_values())

    def with_side(self, side: Side) -> DenseSig:
        return DenseSig(self.arity, self.values, side, self.profile)

    def support(self) -> list[tuple[tuple[int, ...], Scalar]]:
        """Nonzero entries as (bit tuple, value)."""
        n = self.arity
        out = []
        for i, v in enumerate(self.values):
            if v != 0:
                out.append((tuple((i >> (n - 1 - k)) & 1 for k in range(n)), v))
        return out

    def __str__(self):
        if self.is_symmetric():
            return "[" + ", ".join(rat_str(v) for v in self.symmetric_values()) + "]"
        return "(" + ", ".join(rat_str(v) for v in self.values) + ")"


def as_dense(sig, side: Side = Side.LHS) -> DenseSig:
    if isinstance(sig, DenseSig):
        return sig
    if isinstance(sig, SymSig3):
        return DenseSig.from_symmetric(sig.values, side)
    return DenseSig.from_symmetric(tuple(sig), side)


# ---------------------------------------------------------------------------
# tractable classes


class SigKind(str, enum.Enum):
    DEGENERATE = "degenerate"
    GEN_EQ = "gen-eq"
    AFFINE = "affine"
    NOT_TRACTABLE = "not-tractable-form"


@dataclass(frozen=True)
class SigClass:
    """Outcome of :func:`classify_form`, re-verifiable by re-expansion.

    ``detail`` holds ``(factor, scalar)`` for degenerate signatures and
    ``(form_id, scalar, reversed)`` for affine ones.
    """

    kind: SigKind
    detail: tuple = field(default=())

    @property
    def tractable(self) -> bool:
        return self.kind is not SigKind.NOT_TRACTABLE

    def verify(self, s: SymSig3) -> bool:
        if self.kind is SigKind.DEGENERATE:
            (u0, u1), k = self.detail
            return SymSig3(*(k * u0 ** (3 - i) * u1**i for i in range(4))) == s
        if self.kind is SigKind.GEN_EQ:
            return s.f1 == 0 and s.f2 == 0
        if self.kind is SigKind.AFFINE:
            form_id, k, rev = self.detail
            form = AFFINE_FORMS[form_id]
            if rev:
                form = tuple(reversed(form))
            return SymSig3(*(k * v for v in form)) == s
        return classify_form(s).kind is SigKind.NOT_TRACTABLE

    def __str__(self):
        if self.kind is SigKind.DEGENERATE:
            (u0, u1), k = self.detail
            return f"degenerate: {rat_str(k)} * [{rat_str(u0)}, {rat_str(u1)}]^(x3)"
        if self.kind is SigKind.AFFINE:
            form_id, k, rev = self.detail
            return f"affine: {rat_str(k)} * {form_id}" + (" reversed" if rev else "")
        return self.kind.value


def is_degenerate(s: SymSig3) -> tuple[tuple[Scalar, Scalar], Scalar] | None:
    """Return ``((u0, u1), scalar)`` with ``s == scalar * [u0, u1]^(x3)``, or None.

    The zero signature gives factor ``(0, 0)``.
    """
    f0, f1, f2, f3 = s.values
    if f0 * f2 != f1 * f1 or f1 * f3 != f2 * f2 or f0 * f3 != f1 * f2:
        return None
    one, zero = Fraction(1), Fraction(0)
    if f0 != 0:
        return (one, f1 / f0), f0
    if f3 != 0:
        return (zero, one), f3
    return (zero, zero), one


def is_gen_eq(s: SymSig3) -> bool:
    return s.f1 == 0 and s.f2 == 0


AFFINE_FORMS: dict[str, tuple[int, int, int, int]] = {
    "[1,0,0,1]": (1, 0, 0, 1),
    "[1,0,0,-1]": (1, 0, 0, -1),
    "[1,0,1,0]": (1, 0, 1, 0),
    "[1,0,-1,0]": (1, 0, -1, 0),
    "[1,1,-1,-1]": (1, 1, -1, -1),
    "[1,-1,-1,1]": (1, -1, -1, 1),
}


def _match_scaled(s: Sequence[Scalar], form: Sequence[int]) -> Scalar | None:
    i = next(k for k, v in enumerate(form) if v != 0)
    k = s[i] / form[i]
    if k == 0:
        return None
    if all(sv == k * fv for sv, fv in zip(s, form)):
        return k
    return None


def is_affine(s: SymSig3) -> tuple[str, Scalar, bool] | None:
    """Match against the affine forms and their reversals, up to a nonzero scalar.

    The zero signature never matches (it is degenerate).
    """
    if s.is_zero():
        return None
    for form_id, form in AFFINE_FORMS.items():
        for rev in (False, True):
            candidate = tuple(reversed(form)) if rev else form
            if rev and candidate == form:
                continue
            k = _match_scaled(s.values, candidate)
            if k is not None:
                return form_id, k, rev
    return None


def classify_form(s: SymSig3) -> SigClass:
    deg = is_degenerate(s)
    if deg is not None:
        return SigClass(SigKind.DEGENERATE, deg)
    if is_gen_eq(s):
        return SigClass(SigKind.GEN_EQ)
    aff = is_affine(s)
    if aff is not None:
        return SigClass(SigKind.AFFINE, aff)
    return SigClass(SigKind.NOT_TRACTABLE)


# ---------------------------------------------------------------------------
# binary signatures on the LHS of Holant(g | =3)


class BinaryCase(str, enum.Enum):
    X_EQ_1 = "X=1"
    X_Z_0 = "X=Z=0"
    X_NEG1_Z_0 = "X=-1,Z=0"
    X_NEG1_Z_NEG1 = "X=-1,Z=-1"
    HARD = "hard"
    UNNORMALIZABLE = "unnormalizable"

    @property
    def tractable(self) -> bool:
        return self not in (BinaryCase.HARD, BinaryCase.UNNORMALIZABLE)


def binary_tractable(g: Sequence) -> BinaryCase:
    """Tractability of Holant([g0, g1, g2] | =3) for a normalizable binary.

    With ``g1 != 0`` the binary is rescaled to ``[a, 1, b]`` and the four
    tractable cases on ``X = ab``, ``Z = ((a^3 + b^3) / 2)^2`` are tested in
    order.  ``g1 == 0`` is reported as unnormalizable.
    """
    g0, g1, g2 = (_lift(v) for v in g)
    if g1 == 0:
        return BinaryCase.UNNORMALIZABLE
    a, b = g0 / g1, g2 / g1
    x = a * b
    z = ((a**3 + b**3) / 2) ** 2
    if x == 1:
        return BinaryCase.X_EQ_1
    if x == 0 and z == 0:
        return BinaryCase.X_Z_0
    if x == -1 and z == 0:
        return BinaryCase.X_NEG1_Z_0
    if x == -1 and z == -1:
        return BinaryCase.X_NEG1_Z_NEG1
    return BinaryCase.HARD


# ---------------------------------------------------------------------------
# holographic transformations


def _tensor_apply(values: Sequence[Scalar], arity: int, m: Mat2, row: bool) -> tuple:
    """Apply ``m`` along every axis: row convention ``out[j] = sum_i v[i] m[i][j]``,
    column convention ``out[i] = sum_j m[i][j] v[j]``."""
    cur = list(values)
    rows = m.rows()
    for axis in range(arity):
        shift = arity - 1 - axis
        nxt: list[Scalar] = [Fraction(0)] * len(cur)
        for idx, v in enumerate(cur):
            if v == 0:
                continue
            bit = (idx >> shift) & 1
            base = idx & ~(1 << shift)
            for t in (0, 1):
                coef = rows[bit][t] if row else rows[t][bit]
                if coef != 0:
                    nxt[base | (t << shift)] = nxt[base | (t << shift)] + v * coef
        cur = nxt
    return tuple(cur)


def holo_transform_row(s, m: Mat2) -> DenseSig:
    """``s * m^(x arity)`` for an LHS (row) signature."""
    d = as_dense(s)
    return DenseSig(d.arity, _tensor_apply(d.values, d.arity, m, row=True), Side.LHS)


def primitive_form(values: Sequence[Scalar]) -> tuple[tuple, Fraction]:
    """Split a rational vector as ``scalar * v`` with v integral, gcd 1, first nonzero positive.

    Vectors with irrational entries, and the zero vector, come back unchanged
    with scalar 1.
    """
    if any(isinstance(v, QuadExt) for v in values) or all(v == 0 for v in values):
        return tuple(values), Fraction(1)
    vals = [as_rat(v) for v in values]
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for n in ints:
        g = math.gcd(g, n)
    first = next(n for n in ints if n != 0)
    if first < 0:
        g = -g
    return tuple(Fraction(n // g) for n in ints), Fraction(g, den)


def holo_transform_col(s, m: Mat2) -> tuple[DenseSig, Fraction]:
    """``(m^-1)^(x arity) s`` for an RHS (column) signature, split into (primitive, scalar)."""
    if m.det() == 0:
        raise ValueError("holographic transformation needs a nonsingular matrix")
    d = as_dense(s, Side.RHS)
    raw = _tensor_apply(d.values, d.arity, m.inverse(), row=False)
    vals, k = primitive_form(raw)
    return DenseSig(d.arity, vals, Side.RHS), k


def expand_unary_power(u: Sequence[Scalar], k: int = 3) -> SymSig3:
    u0, u1 = u
    return SymSig3(*(u0 ** (k - i) * u1**i for i in range(k + 1)))


def all_bits(n: int):
    return iproduct((0, 1), repeat=n)
