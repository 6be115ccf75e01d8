"""Polynomial condition systems over a normalized signature ``[1, a, b, c]``.

Every system is an exact predicate on a rational point ``(a, b, c)``.  Some
systems read the first or second G_aux image ``[w, x, y, z]`` /
``[w2, x2, y2, z2]``, computed from the closed form.  Indexed members
(``R3``, ``S5``, ``C3EQ:G2:4``) select a single equation; an id without an
index is the disjunction over all members.

Besides point evaluation this module verifies published solution lists and
runs seeded randomized falsification of emptiness claims.  Nothing here
proves that a system has no solutions.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exact import Scalar, is_rational_square, random_rational, sqrt_rat
from .gadgets import absorb_factor_rhs, g2_matrix, g3_matrix, gaux_apply
from .signatures import SymSig3

Point = tuple[Fraction, Fraction, Fraction]


class System(str, enum.Enum):
    C1EQ = "C1EQ"  # G1 = [[1, b], [a, c]] has a root-of-unity eigenvalue ratio
    C3EQ_G2 = "C3EQ:G2"
    C3EQ_G3 = "C3EQ:G3"
    G3WORKS = "G3WORKS"  # the four exceptions to unary interpolation through G3
    G3DEG = "G3DEG"  # det G3 = 0
    CON1 = "CON1"
    CON2A = "CON2A"
    CON2B = "CON2B"
    CON2 = "CON2"  # eliminated form of CON2B used together with CON1
    R = "R"
    S = "S"
    T = "T"
    U = "U"
    V = "V"
    FORM = "FORM"  # named special forms of [1, a, b, c]


@dataclass(frozen=True)
class ConditionId:
    system: System
    index: int | str | None = None

    def __str__(self):
        if self.index is None:
            return self.system.value
        if self.system in (System.C3EQ_G2, System.C3EQ_G3, System.FORM):
            return f"{self.system.value}:{self.index}"
        return f"{self.system.value}{self.index}"

    @classmethod
    def parse(cls, text: str | ConditionId) -> ConditionId:
        if isinstance(text, ConditionId):
            return text
        t = text.strip()
        for sysname in (System.C3EQ_G2, System.C3EQ_G3, System.FORM):
            if t == sysname.value:
                return cls(sysname)
            if t.startswith(sysname.value + ":"):
                rest = t[len(sysname.value) + 1 :]
                return cls(sysname, rest if sysname is System.FORM else int(rest))
        for sysname in sorted(System, key=lambda s: -len(s.value)):
            if t.startswith(sysname.value):
                rest = t[len(sysname.value) :]
                if rest == "":
                    return cls(sysname)
                if rest.isdigit():
                    return cls(sysname, int(rest))
        raise ValueError(f"unknown condition id {text!r}")


# ---------------------------------------------------------------------------
# polynomial building blocks


def aux_image(a, b, c) -> tuple[Scalar, Scalar, Scalar, Scalar]:
    return gaux_apply(SymSig3(1, a, b, c)).values


def aux_image2(a, b, c) -> tuple[Scalar, Scalar, Scalar, Scalar]:
    return gaux_apply(SymSig3(*aux_image(a, b, c))).values


def _g1_fail_lines(w, x, y, z) -> tuple[Scalar, ...]:
    """The five root-of-unity lines of G1 on ``[w, x, y, z]``, homogenized by ``w``."""
    return (
        z * w + w * w,
        x * y + z * z + z * w + w * w,
        2 * x * y + z * z + w * w,
        3 * x * y + z * z - z * w + w * w,
        4 * x * y + z * z - 2 * z * w + w * w,
    )


def _in_p_forms(w, x, y, z) -> tuple[bool, ...]:
    return (
        x * x == w * y and y * y == x * z,
        x == 0 and y == 0,
        w == y and x == 0 and z == 0,
        w + y == 0 and x == 0 and z == 0,
        w == x and w + y == 0 and w + z == 0,
        w + x == 0 and w + y == 0 and w == z,
    )


def _rou_lines(trace, disc) -> tuple[Scalar, ...]:
    a, b = trace, disc
    return (a, b, a * a + b, a * a + 3 * b, 3 * a * a + b)


def long_f1(a, b, c) -> Scalar:
    """The irreducible degree-7 exception polynomial for unary interpolation via G3."""
    return (
        a**3 + 4 * a**6 + 3 * a**5 * b**2 + a**3 * b**3 - c - 4 * a**3 * c
        + 6 * a**4 * b * c - 6 * a**2 * b**2 * c - b**3 * c - 3 * a**2 * b**5 * c
        - 3 * a**3 * c**2 - 3 * a * b * c**2 - 4 * b**3 * c**2 - a**3 * b**3 * c**2
        - 6 * a * b**4 * c**2 - 4 * b**6 * c**2 + 3 * c**3 + 4 * a**3 * c**3
        + 6 * a**2 * b**2 * c**3 + 3 * b**3 * c**3 + a**3 * c**4 + 3 * a * b * c**4
        + 4 * b**3 * c**4 - 3 * c**5 - b**3 * c**5 + c**7
    )


def _c1eq(a, b, c):
    return tuple(v == 0 for v in _g1_fail_lines(1, a, b, c))


def _c3eq(m):
    disc = (m.m11 - m.m00) ** 2 + 4 * m.m10 * m.m01
    return tuple(v == 0 for v in _rou_lines(m.m00 + m.m11, disc))


def _g3works(a, b, c):
    return (
        c == a * b,
        a + b * b == 0,
        a**3 - b**3 * c + a * b * (c * c - 1) == 0,
        long_f1(a, b, c) == 0,
    )


FORMS: dict[str, Callable[[Fraction, Fraction, Fraction], bool]] = {
    # [1, a, a, 1]
    "easy": lambda a, b, c: a == b and c == 1,
    # [1, a, -2a-1, 3a+2]
    "p3": lambda a, b, c: b == -2 * a - 1 and c == 3 * a + 2,
    # [1, -b^2, b, -b^3]
    "p1": lambda a, b, c: a == -b * b and c == -(b**3),
    # [1, a, -1/a, -1]
    "p2": lambda a, b, c: a != 0 and b == -1 / a and c == -1,
    # [1, a, -a, -1]
    "1a-a-1": lambda a, b, c: b == -a and c == -1,
    # the second exceptional case for the G1-works theorem
    "case2": lambda a, b, c: c == 1 + a - b,
}


def _members(cid: ConditionId, p: Point) -> tuple[bool, ...]:
    a, b, c = p
    s = cid.system
    if s in (System.C1EQ, System.R):
        return _c1eq(a, b, c)
    if s is System.C3EQ_G2:
        return _c3eq(g2_matrix(SymSig3(1, a, b, c)))
    if s is System.C3EQ_G3:
        return _c3eq(g3_matrix(SymSig3(1, a, b, c)))
    if s is System.G3WORKS:
        return _g3works(a, b, c)
    if s is System.G3DEG:
        return ((a + b * b) * (a * a + b * c) == (1 + a * b) * (a * b + c * c),)
    if s is System.CON1:
        return (a**3 - b**3 - a * b * (1 - c) == 0,)
    if s is System.CON2A:
        return (a**3 + a * b + 2 * b**3 == 0,)
    if s is System.CON2B:
        return ((a**4 * b + a * b**4) ** 2 == (a**5 + b**4) * (b**5 + a**4 * c),)
    if s is System.CON2:
        return (a**9 + a**4 * b**4 + a**3 * b**6 + b**9 == 0,)
    if s is System.S:
        return _in_p_forms(*aux_image(a, b, c))
    if s is System.T:
        w, x, y, z = aux_image(a, b, c)
        return tuple(v == 0 for v in _g1_fail_lines(w, x, y, z)) + (x * y == w * z,)
    if s is System.U:
        return _in_p_forms(*aux_image2(a, b, c))
    if s is System.V:
        w, x, y, z = aux_image2(a, b, c)
        return tuple(v == 0 for v in _g1_fail_lines(w, x, y, z)) + (x * y == w * z,)
    raise ValueError(f"{cid} has no indexed members")


def system_size(system: System) -> int:
    return len(_members(ConditionId(system), (Fraction(1), Fraction(2), Fraction(3))))


def eval_condition(cid: ConditionId | str, point: Sequence) -> bool:
    """Exact value of the predicate ``cid`` at ``point = (a, b, c)``."""
    cid = ConditionId.parse(cid)
    p = tuple(Fraction(v) for v in point)
    if len(p) != 3:
        raise ValueError("a point is (a, b, c)")
    if cid.system is System.FORM:
        if cid.index is None:
            return any(fn(*p) for fn in FORMS.values())
        try:
            return FORMS[str(cid.index)](*p)
        except KeyError:
            raise ValueError(f"unknown form {cid.index!r}") from None
    members = _members(cid, p)
    if cid.index is None:
        return any(members)
    if not 1 <= int(cid.index) <= len(members):
        raise ValueError(f"{cid} out of range (1..{len(members)})")
    return members[int(cid.index) - 1]


def eval_conjunction(ids: Iterable[ConditionId | str], point: Sequence) -> bool:
    """All of ``ids`` hold; a string ``"X|Y"`` is the disjunction of X and Y."""
    return all(
        any(eval_condition(part, point) for part in i.split("|")) if isinstance(i, str) else eval_condition(i, point)
        for i in ids
    )


def which_members(system: System | str, point: Sequence) -> tuple[int, ...]:
    """1-based indices of the members of ``system`` holding at ``point``."""
    cid = ConditionId(System(system))
    return tuple(k + 1 for k, v in enumerate(_members(cid, tuple(Fraction(x) for x in point))) if v)


# ---------------------------------------------------------------------------
# published solution lists


def _q(*xs) -> Point:
    return tuple(Fraction(x) for x in xs)


RS_SOLUTIONS: tuple[Point, ...] = (_q(-1, 1, -1), _q(1, -1, -1), _q(1, -1, 1), _q("1/2", "-1/2", -1))
RTU_SOLUTIONS: tuple[Point, ...] = RS_SOLUTIONS[:2] + (_q(-1, 1, 1),) + RS_SOLUTIONS[2:]
RTV_SOLUTIONS: tuple[Point, ...] = (_q(-1, 1, 1), _q(1, -1, 1))
# a = -b, c = -1, sampled at a few parameters
RTV_FAMILY_SAMPLES: tuple[Fraction, ...] = tuple(Fraction(v) for v in (2, "3/2", -5, "1/2", 7, "-2/3"))
# solutions of CON1 & CON2A with ab != 0 quoted for the unary-interpolation lemma
CON_SOLUTIONS: tuple[Point, ...] = (_q(-1, 1, -1), _q("-1/3", "-1/3", 1))

CONJUNCTIONS = {
    "R&S": ("R", "S"),
    "R&T&U": ("R", "T", "U"),
    "R&T&V": ("R", "T", "V"),
    "CON1&CON2A": ("CON1", "CON2A"),
    # with a third equation: G3 cannot interpolate unaries, or G3 does not work
    "CON1&CON2A&G3": ("CON1", "CON2A", "G3WORKS|C3EQ:G3|G3DEG"),
}


def rtv_family_point(a) -> Point:
    a = Fraction(a)
    return (a, -a, Fraction(-1))


@dataclass
class SolutionCheck:
    system: str
    point: Point
    holds: bool
    members: dict[str, tuple[int, ...]]


@dataclass
class SolutionReport:
    checks: list[SolutionCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> list[SolutionCheck]:
        return [c for c in self.checks if not c.holds]


def _check(system: str, p: Point) -> SolutionCheck:
    ids = CONJUNCTIONS[system]
    members = {i: which_members(i, p) for i in ids if "|" not in i}
    return SolutionCheck(system, p, eval_conjunction(ids, p), members)


def verify_published_solutions() -> SolutionReport:
    """Check each published solution against its conjunction, exactly."""
    rep = SolutionReport()
    for p in RS_SOLUTIONS:
        rep.checks.append(_check("R&S", p))
    for p in RTU_SOLUTIONS:
        rep.checks.append(_check("R&T&U", p))
    for p in RTV_SOLUTIONS:
        rep.checks.append(_check("R&T&V", p))
    for a in RTV_FAMILY_SAMPLES:
        rep.checks.append(_check("R&T&V", rtv_family_point(a)))
    for p in CON_SOLUTIONS:
        rep.checks.append(_check("CON1&CON2A&G3", p))
    return rep


# ---------------------------------------------------------------------------
# univariate polynomials over Q (coefficient lists, lowest degree first)


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_rem(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    p, q = _trim(list(p)), _trim(list(q))
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    while len(p) >= len(q):
        k = p[-1] / q[-1]
        shift = len(p) - len(q)
        for i, qc in enumerate(q):
            p[i + shift] -= k * qc
        p.pop()
        _trim(p)
    return p


def poly_gcd(*polys: Sequence[Fraction]) -> list[Fraction]:
    """Monic gcd; the zero polynomial is returned as ``[]``."""
    g: list[Fraction] = []
    for p in polys:
        a, b = _trim([Fraction(c) for c in p]), g
        while b:
            a, b = b, poly_rem(a, b)
        g = a
    if g:
        lead = g[-1]
        g = [c / lead for c in g]
    return g


def lhs_absorb_coeffs(a, b, c, variant: str = "wiring") -> tuple[list, list, list, list]:
    """Coefficient lists (constant term first) of f1..f4 as polynomials in x.

    ``variant="wiring"`` gives the polynomials the four gadgets produce;
    ``variant="published"`` the transcription in the published listing, which
    differs in the cubic coefficients of f2, f3 and in one x^2 term of f4.
    """
    if variant not in ("wiring", "published"):
        raise ValueError(f"unknown variant {variant!r}")
    wiring = variant == "wiring"
    f1 = [Fraction(1), 3 * a, 3 * b, c]
    f2 = [a * b + 1, 2 * b * b + a * c + 3 * a, 3 * b * c + 2 * a * a + b, a * b + (c * c if wiring else c)]
    f3 = [
        1 + 2 * a**3 + b**3,
        3 * (a + 2 * a * a * b + b * b * c),
        3 * (a * a + 2 * a * b * b + b * c * c),
        a**3 + (2 if wiring else 1) * b**3 + c**3,
    ]
    f4 = [
        1 + 2 * a * b + a * b * c,
        3 * a + 3 * a * a * b + a * c + 2 * b * b + 2 * b * b * c + a * c * c,
        2 * a * a + b + 2 * a * a * c + 3 * a * b * b + b * c + 3 * (b * c * c if wiring else b * b * c),
        a * b + 2 * a * b * c + c**3,
    ]
    return f1, f2, f3, f4


def rhs_absorb_coeffs(a, b, c) -> tuple[list, list, list]:
    """Coefficient lists of g1..g3 as polynomials in y."""
    one = Fraction(1)
    return [one, 0 * one, 0 * one, one], [c, a, b, one], [c * c, 3 * b * b, 3 * a * a, one]


def published_absorb_factor_lhs(f, x) -> tuple[Scalar, ...]:
    """The four absorption polynomials exactly as quoted in the published listing."""
    _, a, b, c = SymSig3(f).values
    return tuple(_horner(p, x) for p in lhs_absorb_coeffs(a, b, c, "published"))


def _horner(coeffs: Sequence[Scalar], x: Scalar) -> Scalar:
    acc = Fraction(0)
    for k in reversed(coeffs):
        acc = acc * x + k
    return acc


def _gauss_eval(coeffs: Sequence[Fraction], u: Fraction, v: Fraction) -> tuple[Fraction, Fraction]:
    """Real and imaginary parts of ``sum c_k (u + v i)^k`` for k <= 3."""
    r = (Fraction(1), u, u * u - v * v, u**3 - 3 * u * v * v)
    i = (Fraction(0), v, 2 * u * v, 3 * u * u * v - v**3)
    re = sum((c * rk for c, rk in zip(coeffs, r)), Fraction(0))
    im = sum((c * ik for c, ik in zip(coeffs, i)), Fraction(0))
    return re, im


def absorb_lhs_common_factor(f, variant: str = "wiring") -> list[Fraction]:
    """gcd over Q[x] of f1..f4; nonconstant iff they share a complex root."""
    _, a, b, c = SymSig3(f).values
    return poly_gcd(*lhs_absorb_coeffs(a, b, c, variant))


def absorb_rhs_common_factor(f) -> list[Fraction]:
    """gcd over Q[y] of g1..g3."""
    _, a, b, c = SymSig3(f).values
    return poly_gcd(*rhs_absorb_coeffs(a, b, c))


def lhs_exception_family(a, b, c) -> str | None:
    """Name the family of ``[1, a, b, c]`` on which the wiring f1..f4 share a root."""
    if b == a * a and c == a**3:
        return "degenerate"
    if FORMS["easy"](a, b, c):
        return "easy"
    if FORMS["p3"](a, b, c):
        return "p3"
    return None


# ---------------------------------------------------------------------------
# randomized falsification


FALSIFIABLE = ("F1-F4", "F1-F4:published", "G1-G3", "R&S", "R&T&U", "R&T&V", "CON1&CON2A&G3")


@dataclass
class FalsifyReport:
    system: str
    samples: int
    seed: int
    height: int
    hits: list[tuple] = field(default_factory=list)
    known_hits: list[tuple] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.hits


def _sample_on_r(rng: random.Random, height: int) -> Point | None:
    """A random rational point with abc != 0 on one of the five R lines."""
    k = rng.randrange(5)
    a = random_rational(rng, height, nonzero=True)
    if k == 0:
        return (a, random_rational(rng, height, nonzero=True), Fraction(-1))
    c = random_rational(rng, height, nonzero=True)
    # R_{k+1} reads k*ab + rest(c) = 0
    rest = (c * c + c + 1, c * c + 1, c * c - c + 1, (c - 1) ** 2)[k - 1]
    b = -rest / (k * a)
    if b == 0:
        return None
    return (a, b, c)


def _sample_on_con(rng: random.Random, height: int) -> Point | None:
    """A rational point of CON1 & CON2A with ab != 0.

    With b = t a, CON2A reads ``a^2 (a (1 + 2 t^3) + t) = 0`` so
    ``a = -t / (1 + 2 t^3)``; CON1 is then linear in c.
    """
    t = random_rational(rng, height, nonzero=True)
    den = 1 + 2 * t**3
    if den == 0:
        return None
    a = -t / den
    b = t * a
    c = (a * b + b**3 - a**3) / (a * b)
    return (a, b, c)


def falsify_emptiness(system: str, samples: int = 100_000, seed: int = 0, height: int = 20) -> FalsifyReport:
    """Sample rational points of ``system`` and report any satisfying one.

    ``F1-F4`` tests the LHS absorption polynomials (as produced by the
    wirings; ``F1-F4:published`` uses the published transcription) for a common
    complex root in x, both exactly (gcd over Q[x]) and by evaluating real
    and imaginary parts at a random Gaussian-rational x.  ``G1-G3`` does the
    same for the RHS absorption factors in y.  Both absorption systems are
    sampled with a != 0, the standing hypothesis of the absorption step.
    The R-systems sample points on the R lines (abc != 0) and test the
    remaining conjuncts; listed solutions are reported as known hits.
    """
    if system not in FALSIFIABLE:
        raise ValueError(f"unknown system {system!r}; choose from {', '.join(FALSIFIABLE)}")
    rng = random.Random(seed)
    rep = FalsifyReport(system, samples, seed, height)
    if system.startswith("F1-F4"):
        variant = "published" if system.endswith(":published") else "wiring"
        for _ in range(samples):
            a = random_rational(rng, height, nonzero=True)
            b, c = random_rational(rng, height), random_rational(rng, height)
            polys = lhs_absorb_coeffs(a, b, c, variant)
            g = poly_gcd(*polys)
            hit = None
            if len(g) > 1:
                hit = ((a, b, c), tuple(g))
            else:
                u, v = random_rational(rng, height), random_rational(rng, height)
                if all(_gauss_eval(p, u, v) == (0, 0) for p in polys):
                    hit = ((a, b, c), (u, v))
            if hit is None:
                continue
            if variant == "wiring" and lhs_exception_family(a, b, c):
                rep.known_hits.append(hit)
            else:
                rep.hits.append(hit)
        return rep
    if system == "G1-G3":
        known = {"easy", "p3"}
        for _ in range(samples):
            p = (random_rational(rng, height, nonzero=True), random_rational(rng, height), random_rational(rng, height))
            g = poly_gcd(*rhs_absorb_coeffs(*p))
            if len(g) > 1:
                if any(FORMS[name](*p) for name in known):
                    rep.known_hits.append((p, tuple(g)))
                else:
                    rep.hits.append((p, tuple(g)))
        return rep
    ids = CONJUNCTIONS[system]
    known_list = {
        "R&S": RS_SOLUTIONS,
        "R&T&U": RTU_SOLUTIONS,
        "R&T&V": RTV_SOLUTIONS,
        "CON1&CON2A&G3": CON_SOLUTIONS,
    }[system]
    sampler = _sample_on_con if system.startswith("CON1") else _sample_on_r
    drawn = 0
    for _ in range(samples):
        p = sampler(rng, height)
        if p is None:
            continue
        drawn += 1
        if eval_conjunction(ids[1:], p):
            is_known = p in known_list or (system == "R&T&V" and FORMS["1a-a-1"](*p))
            (rep.known_hits if is_known else rep.hits).append(p)
    rep.notes.append(f"{drawn} of {samples} draws landed on the sampled variety")
    return rep


@dataclass
class Rediscovery:
    a: Fraction
    b: Fraction
    c: Fraction
    family: str


def rediscover_y_minus_one(samples: int = 200, seed: int = 0, height: int = 20) -> list[Rediscovery]:
    """Solve g2(-1) = g3(-1) = 0 (g1(-1) = 0 always) for random a and name the families found.

    g2(-1) = 0 gives c = 1 + a - b; substituting into g3(-1) leaves a
    quadratic in b whose rational roots are collected.
    """
    rng = random.Random(seed)
    out: list[Rediscovery] = []
    for _ in range(samples):
        a = random_rational(rng, height)
        # g3(-1) with c = 1 + a - b:  -1 + 3a^2 - 3b^2 + (1 + a - b)^2 = 0
        #   -2 b^2 - (2 + 2a) b + (4 a^2 + 2 a) = 0
        qa, qb, qc = Fraction(-2), -(2 + 2 * a), 4 * a * a + 2 * a
        disc = qb * qb - 4 * qa * qc
        if disc < 0 or not is_rational_square(disc):
            continue
        r = sqrt_rat(disc)
        for b in {(-qb + r) / (2 * qa), (-qb - r) / (2 * qa)}:
            c = 1 + a - b
            f = SymSig3(1, a, b, c)
            assert all(v == 0 for v in absorb_factor_rhs(f, Fraction(-1)))
            fam = next((name for name in ("easy", "p3") if FORMS[name](a, b, c)), "other")
            out.append(Rediscovery(a, b, c, fam))
    return out
