"""The acceptance suite, shared by the test-suite and ``holant3 verify all``.

Each criterion returns a :class:`CriterionResult` holding named sub-checks.
A sub-check either reproduces exactly or fails; ``known_issue`` marks the
sub-checks whose failure is understood and documented, so reports can say
so.  Nothing is skipped or loosened on that account.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import conditions as cond
from .classifier import certificate_check, dichotomy
from .exact import HADAMARD, Mat2, random_rational, ratio_is_root_of_unity, eigen2
from .gadgets import contract, g3_matrix, g4_gadget, proportional, verify_closed_forms
from .holant import (
    LEAFLESS,
    SetSystem,
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
from .interpolation import direct_with_D, four_vertex_grid, slotted_fixture, vandermonde_recover
from .planar import (
    count_pm,
    count_pm_brute,
    cycle_graph,
    family_signature,
    kasteleyn_matrix,
    kasteleyn_orient,
    planar_family_eval,
    planar_fixtures,
    triple_pair,
)
from .exact import bareiss_det
from .signatures import SigKind, SymSig3, classify_form, holo_transform_row


@dataclass
class Check:
    label: str
    passed: bool
    detail: str = ""
    known_issue: bool = False


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, label: str, passed: bool, detail: str = "", known_issue: bool = False) -> Check:
        c = Check(label, bool(passed), detail, known_issue)
        self.checks.append(c)
        return c

    def check(self, label: str) -> Check:
        return next(c for c in self.checks if c.label == label)

    def lines(self) -> list[str]:
        head = f"criterion {self.number} ({self.title}): {'PASS' if self.passed else 'FAIL'} [{self.seconds:.1f}s]"
        out = [head]
        for c in self.checks:
            tag = "PASS" if c.passed else ("FAIL (known)" if c.known_issue else "FAIL")
            out.append(f"  {tag}: {c.label}" + (f" -- {c.detail}" if c.detail else ""))
        return out


def _timed(number: int, title: str):
    def deco(fn: Callable[..., CriterionResult]):
        def run(**kw) -> CriterionResult:
            res = CriterionResult(number, title)
            t = time.perf_counter()
            fn(res, **kw)
            res.seconds = time.perf_counter() - t
            return res

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return deco


# ---------------------------------------------------------------------------
# 1. gadget closed forms


G4_CALIBRATION_A = tuple(Fraction(v) for v in (2, -3, "1/2", "5/3", 7))


def g4_contract(f) -> SymSig3:
    return SymSig3(*contract(g4_gadget(), SymSig3(*f)).symmetric())


def g4_k1_expected(a: Fraction) -> SymSig3:
    return SymSig3(3 * a**3 + 4, a**4 - a - 2 / a**2, -(a**2) + 1 / a + 1 / a**4, a**3 + 3)


def g4_1a_a_1_expected(a: Fraction) -> SymSig3:
    u, v = 1 - a + a * a, a * (1 - a * a)
    return SymSig3(u, v, v, u).scale(1 + a)


@_timed(1, "gadget closed forms")
def criterion_1(res: CriterionResult, trials: int = 200, seed: int = 0) -> None:
    try:
        rep = verify_closed_forms(trials=trials, seed=seed, height=50)
        res.add(f"contraction = closed forms on {rep.trials} random f", rep.trials >= trials,
                f"{rep.checks} comparisons over {', '.join(rep.gadgets)}")
    except AssertionError as e:
        res.add(f"contraction = closed forms on {trials} random f", False, str(e))
    ok = all(proportional(g4_contract((1, a, -1 / a, 0)).values, g4_k1_expected(a).values) == 1
             for a in G4_CALIBRATION_A)
    res.add("G4 [1,a,-1/a,0] -> [3a^3+4, a^4-a-2/a^2, -a^2+1/a+1/a^4, a^3+3]", ok)
    got = g4_contract((1, 1, 1, -1))
    res.add("G4 [1,1,1,-1] -> proportional to [1,1,3,3]",
            proportional(got.values, (1, 1, 3, 3)) is not None,
            f"contraction gives {got}", known_issue=True)
    bad = [a for a in G4_CALIBRATION_A
           if proportional(g4_contract((1, a, -a, -1)).values, g4_1a_a_1_expected(a).values) is None]
    res.add("G4 [1,a,-a,-1] -> proportional to (1+a)[u,v,v,u], u=1-a+a^2, v=a(1-a^2)", not bad,
            f"differs at a in {{{', '.join(str(a) for a in bad)}}}; contraction gives "
            f"{g4_contract((1, 2, -2, -1))} at a=2" if bad else "", known_issue=True)


# ---------------------------------------------------------------------------
# 2. Hadamard identities


@_timed(2, "Hadamard identities")
def criterion_2(res: CriterionResult, samples: int = 50, seed: int = 0) -> None:
    got = holo_transform_row(SymSig3(3, -1, -1, 3), HADAMARD).to_sym3()
    res.add("[3,-1,-1,3] H = [0,0,8,0]", got == SymSig3(0, 0, 8, 0), f"got {got}")
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        a, b = random_rational(rng, 50), random_rational(rng, 50)
        img = holo_transform_row(family_signature(a, b), HADAMARD).to_sym3()
        if img != SymSig3(0, 0, 8 * a, 8 * b):
            bad.append((a, b))
    res.add(f"[3a+b,-a-b,-a+b,3a-b] H = 8[0,0,a,b] for {samples} random (a,b)", not bad, f"failures {bad[:3]}")


# ---------------------------------------------------------------------------
# 3. holographic invariance

GENERIC_MATRICES = (Mat2.of([[1, 2], [0, 1]]), Mat2.of([[2, 3], [-1, 5]]))


@_timed(3, "holographic invariance")
def criterion_3(res: CriterionResult, grids: int = 50, seed: int = 0) -> None:
    rng = random.Random(seed)
    cases = []
    for k in range(grids):
        n = 1 + k % 8
        f = SymSig3(*(random_rational(rng, 9) for _ in range(4)))
        cases.append(random_grid(n, f, rng))
    for name, m in (("H", HADAMARD), ("[[1,2],[0,1]]", GENERIC_MATRICES[0]), ("[[2,3],[-1,5]]", GENERIC_MATRICES[1])):
        bad = 0
        for g in cases:
            t, ledger = apply_holo_to_grid(g, m)
            lhs = eval_brute(g) if len(g.edges) <= 12 else eval_dp(g)
            if lhs != ledger.value() * eval_dp(t):
                bad += 1
        res.add(f"M = {name}: Holant(G) = ledger * Holant(G') on {len(cases)} grids", bad == 0, f"{bad} mismatches")


# ---------------------------------------------------------------------------
# 4. leafless-cover equivalence


def triple_system() -> SetSystem:
    return SetSystem((0, 1, 2), ((0, 1, 2),) * 3)


def cover_fixtures(seed: int = 0, randoms: int = 16) -> list[tuple[str, SetSystem]]:
    out = [("triple", triple_system())]
    for pg in planar_fixtures():
        out.append((pg.name, to_set_system(pg.to_grid(LEAFLESS))))
    rng = random.Random(seed)
    for k in range(randoms):
        n = 1 + k % 8
        out.append((f"random-{n}-{k}", random_set_system(n, rng)))
    return out


@_timed(4, "leafless-cover equivalence")
def criterion_4(res: CriterionResult, seed: int = 0) -> None:
    fixtures = cover_fixtures(seed)
    res.add("triple system has cover value 6", cover_value(triple_system()) == 6,
            f"got {cover_value(triple_system())}")
    bad = [name for name, s in fixtures if cover_value(s) != eval_brute(from_set_system(s))]
    res.add(f"cover_value = Holant([1,0,-1,2] | =3) on {len(fixtures)} fixtures", not bad and len(fixtures) >= 20,
            f"mismatches: {bad}" if bad else "")


# ---------------------------------------------------------------------------
# 5. planar algorithm

PLANAR_PARAMS = ((Fraction(1, 2), Fraction(-1, 2)), (Fraction(1), Fraction(0)), (Fraction(1), Fraction(1)),
                 (Fraction(-2), Fraction(3)))


@_timed(5, "planar algorithm")
def criterion_5(res: CriterionResult) -> None:
    fixtures = [pg for pg in planar_fixtures() if len(pg.graph.edges) <= 28]
    bad = []
    for pg in fixtures:
        for a, b in PLANAR_PARAMS:
            ev = planar_family_eval(a, b, pg)
            brute = eval_brute(pg.to_grid(family_signature(a, b)))
            if not (ev.value == brute == ev.closed_form):
                bad.append((pg.name, a, b))
    res.add(f"planar_family_eval = eval_brute on {len(fixtures)} fixtures x 4 (a,b)", not bad, f"mismatches {bad}")
    graphs = [(pg.name, pg.graph) for pg in planar_fixtures()] + [("C6", cycle_graph(6))]
    bad_pm = [name for name, g in graphs if count_pm(g) != count_pm_brute(g)]
    res.add(f"count_pm = count_pm_brute on {len(graphs)} graphs", not bad_pm, f"mismatches {bad_pm}")
    q3 = next(pg.graph for pg in planar_fixtures() if pg.name == "Q3")
    res.add("perfect matchings of Q3 = 9", count_pm(q3) == 9, f"got {count_pm(q3)}")
    res.add("perfect matchings of C6 = 2", count_pm(cycle_graph(6)) == 2, f"got {count_pm(cycle_graph(6))}")
    non_square = []
    for name, g in graphs:
        d = bareiss_det(kasteleyn_matrix(g, kasteleyn_orient(g)))
        if d < 0 or math.isqrt(d) ** 2 != d:
            non_square.append(name)
    res.add("det(Kasteleyn matrix) is a perfect square on all fixtures", not non_square, f"{non_square}")


# ---------------------------------------------------------------------------
# 6. interpolation


@_timed(6, "interpolation")
def criterion_6(res: CriterionResult, samples: int = 200, seed: int = 0) -> None:
    f = SymSig3(1, 2, 3, 5)
    for n in (1, 2):
        sg = slotted_fixture(n, f)
        v = vandermonde_recover(sg, f)
        d = direct_with_D(sg, f)
        res.add(f"{n} slot(s): Vandermonde recovery = direct evaluation with D", v.value == d.value,
                f"{v.value} vs {d.value}")
    from .classifier import g_works

    rng = random.Random(seed)
    tested = bad = 0
    for _ in range(samples):
        g = SymSig3(1, *(random_rational(rng, 20) for _ in range(3)))
        if not g_works("G1", g)[0]:
            continue
        ed = eigen2(Mat2.of([[1, g.f2], [g.f1, g.f3]]))
        if ed.lam is None:
            continue
        tested += 1
        for n in (1, 2, 3):
            nodes = [ed.lam**i * ed.mu ** (n - i) for i in range(n + 1)]
            if len(set(nodes)) != len(nodes):
                bad += 1
    res.add(f"Vandermonde nodes distinct whenever G1 works ({tested} signatures)", bad == 0 and tested > 0,
            f"{bad} repeats")


# ---------------------------------------------------------------------------
# 7. classifier self-consistency

GRID_VALUES = tuple(Fraction(k, 2) for k in range(-4, 5))


def tractable_fixture_grids(f) -> list:
    return [k33_grid(f), four_vertex_grid(f), disjoint_union(triple_pair().to_grid(f), k33_grid(f))]


@_timed(7, "classifier self-consistency")
def criterion_7(res: CriterionResult) -> None:
    mismatch, bad_cert, bad_eval, hard, ptime = [], [], [], 0, 0
    for a in GRID_VALUES:
        for b in GRID_VALUES:
            for c in GRID_VALUES:
                f = SymSig3(1, a, b, c)
                v = dichotomy(f)
                cls = classify_form(f)
                if v.hard == cls.tractable:
                    mismatch.append(f)
                if v.hard:
                    hard += 1
                    if not certificate_check(v.certificate):
                        bad_cert.append(f)
                    continue
                ptime += 1
                for g in tractable_fixture_grids(f):
                    ref = eval_brute(g)
                    got = tractable_eval(g) if cls.kind is not SigKind.AFFINE else eval_dp(g)
                    if got != ref:
                        bad_eval.append(f)
    res.add(f"P-time iff degenerate/Gen-Eq/affine on 729 signatures ({ptime} P-time, {hard} hard)",
            not mismatch, f"{mismatch[:3]}")
    res.add(f"every hard certificate replays ({hard})", not bad_cert, f"{[str(f) for f in bad_cert[:3]]}")
    res.add("tractable evaluation = brute force on 3 fixture grids per P-time signature", not bad_eval,
            f"{[str(f) for f in bad_eval[:3]]}")


# ---------------------------------------------------------------------------
# 8. condition systems


@_timed(8, "condition-system suite")
def criterion_8(res: CriterionResult, matrices: int = 100_000, samples: int = 100_000, seed: int = 0) -> None:
    rep = cond.verify_published_solutions()
    res.add(f"published solutions satisfy R&S, R&T&U, R&T&V ({len(rep.checks)} points)", rep.ok,
            f"failures {[(c.system, c.point) for c in rep.failures()]}")
    rng = random.Random(seed)
    agree = disagree = rou = 0
    for k in range(matrices):
        h = 3 if k % 2 else 30
        m = Mat2.of([[random_rational(rng, h) for _ in range(2)] for _ in range(2)])
        if m.det() == 0:
            continue
        try:
            flag, _ = ratio_is_root_of_unity(m)
            agree += 1
            rou += flag
        except AssertionError:
            disagree += 1
    res.add(f"root-of-unity routes agree on {agree} random matrices", disagree == 0 and agree > 0,
            f"{rou} roots of unity, {disagree} disagreements")
    lit = cond.falsify_emptiness("F1-F4:published", samples=samples, seed=seed)
    res.add(f"f1..f4 (published transcription): no common root in {samples} samples", lit.ok,
            f"hits {lit.hits[:3]}")
    wir = cond.falsify_emptiness("F1-F4", samples=samples, seed=seed)
    res.add(f"f1..f4 (as wired): no common root outside degenerate/[1,a,a,1]/[1,a,-2a-1,3a+2] in {samples} samples",
            wir.ok, f"{len(wir.known_hits)} hits inside those families")
    hit = cond.absorb_rhs_common_factor(SymSig3(1, 2, 2, 1))
    res.add("g1=g2=g3=0 at y=-1 for [1,2,2,1]", hit == [Fraction(1), Fraction(1)], f"common factor {hit}")
    found = cond.rediscover_y_minus_one(samples=200, seed=seed)
    fams = {r.family for r in found}
    res.add("y=-1 rediscovers exactly the families [1,a,a,1] and [1,a,-2a-1,3a+2]", fams == {"easy", "p3"},
            f"families {sorted(fams)} over {len(found)} points")
    gs = cond.falsify_emptiness("G1-G3", samples=samples // 5, seed=seed)
    res.add(f"g1..g3: no common root outside those families in {samples // 5} samples", gs.ok, f"hits {gs.hits[:3]}")
    rs = cond.falsify_emptiness("R&S", samples=samples, seed=seed)
    res.add(f"R&S: no solutions beyond the published list in {samples} samples", rs.ok, f"hits {rs.hits[:3]}")


# ---------------------------------------------------------------------------
# 9. spot checks


@_timed(9, "spot checks")
def criterion_9(res: CriterionResult) -> None:
    v = eval_brute(k33_grid(LEAFLESS))
    res.add("Holant(K33, [1,0,-1,2]) = 6", v == 6, f"got {v}")
    v = eval_brute(k33_grid(SymSig3(0, 1, 0, 0)))
    res.add("Holant(K33, [0,1,0,0]) = 3", v == 3, f"got {v}")
    m = g3_matrix(SymSig3(1, -1, 0, 2))
    res.add("G3 of [1,-1,0,2] = [[1,1],[-1,4]]", m == Mat2.of([[1, 1], [-1, 4]]), f"got {m}")
    v = dichotomy(SymSig3(3, -1, -1, 3))
    res.add("[3,-1,-1,3] is #P-hard", v.hard, str(v))
    v = dichotomy(SymSig3(1, -1, 1, -1))
    res.add("[1,-1,1,-1] is P-time degenerate", not v.hard and v.reason.kind is SigKind.DEGENERATE, str(v))


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9)

QUICK = {
    1: {"trials": 20},
    3: {"grids": 10},
    6: {"samples": 50},
    8: {"matrices": 2_000, "samples": 2_000},
}


def run_all(quick: bool = False, only: tuple[int, ...] = ()) -> list[CriterionResult]:
    out = []
    for k, fn in enumerate(CRITERIA, start=1):
        if only and k not in only:
            continue
        out.append(fn(**(QUICK.get(k, {}) if quick else {})))
    return out
