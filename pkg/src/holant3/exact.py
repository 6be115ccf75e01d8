"""Exact arithmetic over Q and real quadratic extensions Q(sqrt d).

Rationals are plain :class:`fractions.Fraction` objects.  An element of a
quadratic extension is a :class:`QuadExt`; every operation that produces a
value with a vanishing surd part hands back a ``Fraction`` instead, so a
value that happens to be rational is always *syntactically* rational.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Rat = Fraction
Scalar = Union[Fraction, "QuadExt"]

_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % q for q in range(2, int(p**0.5) + 1))]


class IncompatibleRadicands(ValueError):
    """Raised when two surds from different quadratic fields meet."""


def as_rat(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string into a Fraction.

    Floats are refused: every value entering the toolkit must be exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(ch in s for ch in ".eE"):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def rat_str(x) -> str:
    if isinstance(x, QuadExt):
        return str(x)
    x = as_rat(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def is_rational_square(x: Fraction) -> bool:
    if x < 0:
        return False
    return _is_square(x.numerator) and _is_square(x.denominator)


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _reduce_radicand(n: int) -> tuple[int, int]:
    """Split a positive integer as ``k**2 * d`` with small square factors pulled out."""
    k = 1
    for p in _SMALL_PRIMES:
        pp = p * p
        if pp > n:
            break
        while n % pp == 0:
            n //= pp
            k *= p
    r = math.isqrt(n)
    if r * r == n:
        return k * r, 1
    return k, n


def sqrt_rat(x) -> Scalar:
    """Exact non-negative square root of a rational, as Fraction or QuadExt."""
    x = as_rat(x)
    if x < 0:
        raise ValueError("negative radicand: the square root is not real")
    # sqrt(p/q) = sqrt(p*q) / q
    k, d = _reduce_radicand(x.numerator * x.denominator)
    coef = Fraction(k, x.denominator)
    if d == 1:
        return coef
    return QuadExt(Fraction(0), coef, d)


class QuadExt:
    """``rational + surd * sqrt(radicand)`` with an irrational square root.

    The radicand is a positive integer that is not a perfect square, and the
    surd part is nonzero.  Use :meth:`make` (or arithmetic) to get automatic
    demotion to ``Fraction``.
    """

    __slots__ = ("rational", "surd", "radicand")

    def __init__(self, rational, surd, radicand: int):
        rational, surd = as_rat(rational), as_rat(surd)
        if not isinstance(radicand, int) or radicand <= 1 or _is_square(radicand):
            raise ValueError(f"radicand must be a positive non-square integer, got {radicand!r}")
        if surd == 0:
            raise ValueError("surd part is zero; use QuadExt.make for automatic demotion")
        k, d = _reduce_radicand(radicand)
        object.__setattr__(self, "rational", rational)
        object.__setattr__(self, "surd", surd * k)
        object.__setattr__(self, "radicand", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @staticmethod
    def make(rational, surd, radicand) -> Scalar:
        surd = as_rat(surd)
        radicand = as_rat(radicand)
        if surd == 0 or radicand == 0:
            return as_rat(rational)
        if radicand < 0:
            raise ValueError("negative radicand")
        root = sqrt_rat(radicand)
        if isinstance(root, Fraction):
            return as_rat(rational) + surd * root
        return QuadExt(rational, surd * root.surd, root.radicand)

    # -- alignment ---------------------------------------------------------
    def _parts(self, other) -> tuple[Fraction, Fraction] | None:
        """Express ``other`` as (p, q) over this field's sqrt(radicand)."""
        if isinstance(other, QuadExt):
            if other.radicand == self.radicand:
                return other.rational, other.surd
            ratio = Fraction(other.radicand, self.radicand)
            if not is_rational_square(ratio):
                raise IncompatibleRadicands(
                    f"cannot mix sqrt({self.radicand}) and sqrt({other.radicand})"
                )
            r = Fraction(math.isqrt(ratio.numerator), math.isqrt(ratio.denominator))
            return other.rational, other.surd * r
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Fraction(other), Fraction(0)
        return None

    def _new(self, p: Fraction, q: Fraction) -> Scalar:
        if q == 0:
            return p
        return QuadExt(p, q, self.radicand)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return self._new(self.rational + parts[0], self.surd + parts[1])

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.rational, -self.surd, self.radicand)

    def __pos__(self):
        return self

    def __sub__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return self._new(self.rational - parts[0], self.surd - parts[1])

    def __rsub__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return self._new(parts[0] - self.rational, parts[1] - self.surd)

    def __mul__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        p, q = parts
        d = self.radicand
        return self._new(self.rational * p + self.surd * q * d, self.rational * q + self.surd * p)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm p**2 - q**2 d; nonzero for every QuadExt."""
        return self.rational**2 - self.surd**2 * self.radicand

    def conjugate(self) -> QuadExt:
        return QuadExt(self.rational, -self.surd, self.radicand)

    def inverse(self) -> QuadExt:
        n = self.norm()
        return QuadExt(self.rational / n, -self.surd / n, self.radicand)

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            return self * other.inverse()
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        if parts[0] == 0:
            raise ZeroDivisionError("division by zero")
        return self._new(self.rational / parts[0], self.surd / parts[0])

    def __rtruediv__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return self.inverse() * parts[0]

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result: Scalar = Fraction(1)
        base: Scalar = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- ordering (a real field) ----------------------------------------------
    def sign(self) -> int:
        sp = (self.rational > 0) - (self.rational < 0)
        sq = (self.surd > 0) - (self.surd < 0)
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: compare p^2 with q^2 d
        return sp if self.rational**2 > self.surd**2 * self.radicand else sq

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            try:
                p, q = self._parts(other)
            except IncompatibleRadicands:
                return False
            return p == self.rational and q == self.surd
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        # q*sqrt(d) is pinned down by sign(q) and q^2 d, whatever the radicand scaling.
        return hash((self.rational, self.surd > 0, self.surd**2 * self.radicand))

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, QuadExt):
            return diff.sign()
        return (diff > 0) - (diff < 0)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return True

    def __float__(self):
        return float(self.rational) + float(self.surd) * math.sqrt(self.radicand)

    def __repr__(self):
        return f"QuadExt({rat_str(self.rational)}, {rat_str(self.surd)}, {self.radicand})"

    def __str__(self):
        q = self.surd
        surd = f"sqrt({self.radicand})" if abs(q) == 1 else f"{rat_str(abs(q))}*sqrt({self.radicand})"
        if self.rational == 0:
            return ("-" if q < 0 else "") + surd
        return f"{rat_str(self.rational)} {'-' if q < 0 else '+'} {surd}"


def sign(x: Scalar) -> int:
    if isinstance(x, QuadExt):
        return x.sign()
    return (x > 0) - (x < 0)


def scalar_str(x: Scalar) -> str:
    return rat_str(x)


def parse_scalar(text: str) -> Scalar:
    """Parse ``p/q`` or ``p/q + r/s*sqrt(d)`` style literals (the latter from :func:`scalar_str`)."""
    text = text.strip()
    if "sqrt" not in text:
        return as_rat(text)
    import re

    m = re.fullmatch(
        r"(?:(?P<p>-?\d+(?:/\d+)?)\s*(?P<op>[+-])\s*)?(?P<neg>-)?(?:(?P<q>\d+(?:/\d+)?)\*)?sqrt\((?P<d>\d+)\)",
        text,
    )
    if not m:
        raise ValueError(f"cannot parse quadratic literal {text!r}")
    p = as_rat(m["p"]) if m["p"] else Fraction(0)
    q = as_rat(m["q"]) if m["q"] else Fraction(1)
    if m["op"] == "-" or m["neg"]:
        q = -q
    return QuadExt.make(p, q, int(m["d"]))


# ---------------------------------------------------------------------------
# 2x2 matrices and eigen data


@dataclass(frozen=True)
class Mat2:
    """A 2x2 matrix ``[[m00, m01], [m10, m11]]`` with exact entries."""

    m00: Scalar
    m01: Scalar
    m10: Scalar
    m11: Scalar

    @classmethod
    def of(cls, rows: Sequence[Sequence]) -> Mat2:
        (a, b), (c, d) = rows
        return cls(*(_lift(v) for v in (a, b, c, d)))

    @classmethod
    def identity(cls) -> Mat2:
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(1))

    def rows(self) -> tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]:
        return ((self.m00, self.m01), (self.m10, self.m11))

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.rows()[i][j]

    def __matmul__(self, other: Mat2) -> Mat2:
        return Mat2(
            self.m00 * other.m00 + self.m01 * other.m10,
            self.m00 * other.m01 + self.m01 * other.m11,
            self.m10 * other.m00 + self.m11 * other.m10,
            self.m10 * other.m01 + self.m11 * other.m11,
        )

    def scale(self, k: Scalar) -> Mat2:
        return Mat2(self.m00 * k, self.m01 * k, self.m10 * k, self.m11 * k)

    def det(self) -> Scalar:
        return self.m00 * self.m11 - self.m01 * self.m10

    def trace(self) -> Scalar:
        return self.m00 + self.m11

    def inverse(self) -> Mat2:
        d = self.det()
        if d == 0:
            raise ZeroDivisionError("singular matrix")
        return Mat2(self.m11 / d, -self.m01 / d, -self.m10 / d, self.m00 / d)

    def transpose(self) -> Mat2:
        return Mat2(self.m00, self.m10, self.m01, self.m11)

    def is_rational(self) -> bool:
        return all(isinstance(v, Fraction) for v in (self.m00, self.m01, self.m10, self.m11))

    def __str__(self):
        return "[[{}, {}], [{}, {}]]".format(*(rat_str(v) for v in (self.m00, self.m01, self.m10, self.m11)))


def _lift(v) -> Scalar:
    return v if isinstance(v, QuadExt) else as_rat(v)


def mat_pow(m: Mat2, s: int) -> Mat2:
    if s < 0:
        raise ValueError("negative exponent")
    result = Mat2.identity()
    base = m
    while s:
        if s & 1:
            result = result @ base
        base = base @ base
        s >>= 1
    return result


HADAMARD = Mat2.of([[1, 1], [1, -1]])


@dataclass(frozen=True)
class EigenData:
    """Eigen quantities of a straddled matrix ``[[w, b'], [a', c']]``.

    When the discriminant is negative the eigenvalues are complex; the
    quadratic-field fields are then ``None`` and only :attr:`discriminant`,
    :attr:`trace` and :attr:`det` are meaningful.
    """

    trace: Fraction
    det: Fraction
    discriminant: Fraction
    delta: Scalar | None
    lam: Scalar | None
    mu: Scalar | None
    x: Scalar | None
    y: Scalar | None
    degenerate: bool

    @property
    def is_complex(self) -> bool:
        return self.discriminant < 0

    def jordan_p(self) -> Mat2:
        """The eigenvector matrix ``[[-x, y], [1, 1]]``."""
        if self.x is None:
            raise ValueError("x, y undefined (complex eigenvalues or zero lower-left entry)")
        return Mat2(-self.x, self.y, Fraction(1), Fraction(1))


def eigen2(m: Mat2) -> EigenData:
    """Discriminant, eigenvalues and eigenvector coordinates of a rational 2x2 matrix."""
    if not m.is_rational():
        raise TypeError("eigen2 expects rational entries")
    w, bp, ap, cp = m.m00, m.m01, m.m10, m.m11
    disc = (w - cp) ** 2 + 4 * ap * bp
    tr, det = w + cp, w * cp - ap * bp
    if disc < 0:
        return EigenData(tr, det, disc, None, None, None, None, None, det == 0)
    delta = sqrt_rat(disc)
    lam = (tr - delta) / 2
    mu = (tr + delta) / 2
    x = y = None
    if ap != 0:
        x = (delta - (w - cp)) / (2 * ap)
        y = (delta + (w - cp)) / (2 * ap)
    return EigenData(tr, det, disc, delta, lam, mu, x, y, det == 0)


# The eight roots of unity in quadratic fields, grouped by the symmetric
# condition on A = trace, B = discriminant that the ratio lambda/mu hits.
ROOT_OF_UNITY_CONDITIONS = ("A=0", "B=0", "A^2+B=0", "A^2+3B=0", "3A^2+B=0")


def rou_conditions(trace: Fraction, disc: Fraction) -> dict[str, bool]:
    a, b = trace, disc
    return {
        "A=0": a == 0,
        "B=0": b == 0,
        "A^2+B=0": a * a + b == 0,
        "A^2+3B=0": a * a + 3 * b == 0,
        "3A^2+B=0": 3 * a * a + b == 0,
    }


def _ratio_order_by_power(trace: Fraction, det: Fraction) -> int | None:
    """Multiplicative order of lambda/mu if it is a root of unity, else None.

    Works in Q(r) directly: r = lambda/mu and 1/r are the roots of
    ``t^2 - s t + 1`` with ``s = r + 1/r = (trace^2 - 2 det) / det``.  If that
    quadratic splits over Q the ratio is rational and its powers are checked
    directly; otherwise powers are reduced in the basis {1, r}.
    """
    s = (trace * trace - 2 * det) / det
    split = s * s - 4
    if is_rational_square(split):
        r = (s + sqrt_rat(split)) / 2
        for k in (1, 2, 3, 4, 6):
            if r**k == 1:
                return k
        return None
    # r^k = u r + v ; r^{k+1} = u (s r - 1) + v r
    u, v = Fraction(1), Fraction(0)
    for k in range(1, 7):
        if k != 5 and u == 0 and v == 1:
            return k
        u, v = u * s + v, -u
    return None


def ratio_is_root_of_unity(m: Mat2) -> tuple[bool, str | None]:
    """Decide whether the eigenvalue ratio of a nonsingular rational matrix is a root of unity.

    Two independent routes are computed and must agree: the five symmetric
    conditions on trace/discriminant, and reduction of powers of the ratio
    modulo its minimal polynomial.  Returns ``(flag, matched_condition)``.
    """
    if not m.is_rational():
        raise TypeError("expects rational entries")
    det = m.det()
    if det == 0:
        raise ValueError("singular matrix: eigenvalue ratio undefined")
    tr = m.trace()
    disc = (m.m00 - m.m11) ** 2 + 4 * m.m01 * m.m10
    conds = rou_conditions(tr, disc)
    matched = next((name for name in ROOT_OF_UNITY_CONDITIONS if conds[name]), None)
    order = _ratio_order_by_power(tr, det)
    if (matched is not None) != (order is not None):
        raise AssertionError(
            f"root-of-unity routes disagree on {m}: conditions={matched}, order={order}"
        )
    return matched is not None, matched


def ratio_order(m: Mat2) -> int | None:
    """Order of lambda/mu as a root of unity (power-reduction route only)."""
    return _ratio_order_by_power(m.trace(), m.det())


# ---------------------------------------------------------------------------
# linear algebra


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sgn, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sgn = -sgn
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sgn * a[n - 1][n - 1]


def solve_fraction_free(matrix: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> list[Scalar]:
    """Solve ``matrix @ x = rhs`` over a field with Bareiss elimination.

    Intermediate entries stay polynomial in the inputs (one exact division
    per step), and only the final back-substitution divides by pivots.
    """
    n = len(matrix)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    prev: Scalar = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[k], a[piv] = a[piv], a[k]
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n + 1):
                a[i][j] = (a[i][j] * akk - aik * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = akk
    x: list[Scalar] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = a[i][n]
        for j in range(i + 1, n):
            s = s - a[i][j] * x[j]
        x[i] = s / a[i][i]
    return x


def exact_isqrt(n: int) -> int:
    """Square root of a perfect square; raises if ``n`` is not one."""
    if n < 0:
        raise ValueError(f"{n} is negative")
    r = math.isqrt(n)
    if r * r != n:
        raise ValueError(f"{n} is not a perfect square")
    return r


def product(values: Iterable[Scalar]) -> Scalar:
    out: Scalar = Fraction(1)
    for v in values:
        out = out * v
    return out


def random_rational(rng: random.Random, height: int, nonzero: bool = False) -> Fraction:
    """A rational p/q with |p| <= height, 1 <= q <= height."""
    while True:
        x = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if x or not nonzero:
            return x
