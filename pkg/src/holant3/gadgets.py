"""Bipartite gadgets with dangling edges, generic contraction, and a named library.

A gadget is a small bipartite multigraph.  LHS vertices carry the working
ternary signature (or an explicit one), RHS vertices carry ``=3`` (or an
explicit one).  Unary attachments are extra vertices on the opposite side,
joined by a single edge.  Dangling edges are ordered and tagged by the side of
the vertex they leave: an edge dangling from an LHS vertex is LHS-exposed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .exact import Mat2, Scalar, random_rational
from .network import Factor, sum_product
from .signatures import EQ3, DenseSig, Side, SymSig3, all_bits, as_dense

WORKING = "f"  # placeholder for the working ternary signature
EQUALITY = "=3"  # placeholder for the ternary equality
UNARY = "u"  # placeholder for the context unary in absorption/pinning gadgets


class MalformedGadget(ValueError):
    """Degree, side or parity constraints of a gadget are violated."""


@dataclass(frozen=True)
class Gadget:
    """A gadget with vertex slots, internal edges and ordered dangling edges.

    Slots are either a concrete :class:`DenseSig` or one of the placeholders
    ``"f"``, ``"=3"``, ``"u"``.  The input order of each vertex signature is:
    internal edges in list order, then unary attachments, then dangling edges.
    """

    name: str
    lhs_vertices: tuple = ()
    rhs_vertices: tuple = ()
    unary_attachments: tuple[tuple[int, Side, object], ...] = ()
    internal_edges: tuple[tuple[int, int], ...] = ()
    dangling: tuple[tuple[int, Side], ...] = ()

    @property
    def side_profile(self) -> tuple[int, int]:
        m = sum(1 for _, s in self.dangling if s is Side.LHS)
        return m, len(self.dangling) - m

    def degrees(self) -> dict[tuple[Side, int], int]:
        deg = {(Side.LHS, i): 0 for i in range(len(self.lhs_vertices))}
        deg.update({(Side.RHS, j): 0 for j in range(len(self.rhs_vertices))})
        for i, j in self.internal_edges:
            deg[(Side.LHS, i)] += 1
            deg[(Side.RHS, j)] += 1
        for v, side, _ in self.unary_attachments:
            deg[(side, v)] += 1
        for v, side in self.dangling:
            deg[(side, v)] += 1
        return deg


@dataclass(frozen=True)
class GadgetSignature:
    dense: DenseSig
    side_profile: tuple[int, int]

    @property
    def arity(self) -> int:
        return self.dense.arity

    def matrix(self) -> Mat2:
        if self.side_profile != (1, 1) or self.dense.arity != 2:
            raise ValueError(f"not a straddled binary: profile {self.side_profile}")
        v = self.dense.values
        return Mat2(v[0], v[1], v[2], v[3])

    def symmetric(self) -> tuple:
        return self.dense.symmetric_values()


def _resolve(slot, side: Side, f: DenseSig, unary: DenseSig | None, arity: int) -> DenseSig:
    if slot == WORKING:
        sig = f
    elif slot == EQUALITY:
        sig = as_dense(EQ3, Side.RHS)
    elif slot == UNARY:
        if unary is None:
            raise MalformedGadget("gadget has a unary placeholder but no unary was supplied")
        sig = unary
    else:
        sig = as_dense(slot, side)
    if sig.arity != arity:
        raise MalformedGadget(f"vertex of degree {arity} carries a signature of arity {sig.arity}")
    return sig


def validate(g: Gadget, f: DenseSig | None = None, unary: DenseSig | None = None) -> None:
    """Check degrees against signature arities and, for all-ternary gadgets, side parity."""
    for i, j in g.internal_edges:
        if not (0 <= i < len(g.lhs_vertices) and 0 <= j < len(g.rhs_vertices)):
            raise MalformedGadget(f"edge ({i}, {j}) references a missing vertex")
    for v, side in g.dangling:
        if side not in (Side.LHS, Side.RHS):
            raise MalformedGadget(f"dangling edge with side {side}")
    deg = g.degrees()
    f = f if f is not None else as_dense(EQ3)
    all_ternary = True
    for (side, v), d in deg.items():
        slot = (g.lhs_vertices if side is Side.LHS else g.rhs_vertices)[v]
        if slot in (WORKING, EQUALITY):
            if d != 3:
                raise MalformedGadget(f"{side.value} vertex {v} has degree {d}, expected 3")
        else:
            if slot == UNARY:
                want = unary.arity if unary is not None else 1
            else:
                want = as_dense(slot, side).arity
            if d != want:
                raise MalformedGadget(f"{side.value} vertex {v} has degree {d}, signature arity {want}")
            if want != 3:
                all_ternary = False
    for _, _, sig in g.unary_attachments:
        if sig != UNARY and as_dense(sig).arity != 1:
            raise MalformedGadget("unary attachment with arity != 1")
    if all_ternary and not g.unary_attachments:
        m, n = g.side_profile
        if (m - n) % 3:
            raise MalformedGadget(f"side profile ({m}, {n}) violates m - n = 0 mod 3")


def contract(g: Gadget, f, unary: Sequence | None = None) -> GadgetSignature:
    """Sum over internal-edge assignments of the product of vertex values.

    ``f`` fills the ``"f"`` slots; ``unary`` (a pair) fills the ``"u"`` slots.
    """
    f_dense = as_dense(f, Side.LHS)
    u_dense = as_dense(tuple(unary)) if unary is not None else None
    validate(g, f_dense, u_dense)

    ports: dict[tuple[Side, int], list[int]] = {}
    for v in range(len(g.lhs_vertices)):
        ports[(Side.LHS, v)] = []
    for v in range(len(g.rhs_vertices)):
        ports[(Side.RHS, v)] = []
    factors: list[Factor] = []
    var = 0
    for i, j in g.internal_edges:
        ports[(Side.LHS, i)].append(var)
        ports[(Side.RHS, j)].append(var)
        var += 1
    for v, side, sig in g.unary_attachments:
        ports[(side, v)].append(var)
        usig = u_dense if sig == UNARY else as_dense(sig)
        if usig is None:
            raise MalformedGadget("unary placeholder attached without a unary")
        factors.append(Factor((var,), usig))
        var += 1
    dangling_vars = []
    for v, side in g.dangling:
        ports[(side, v)].append(var)
        dangling_vars.append(var)
        var += 1
    for (side, v), scope in ports.items():
        slot = (g.lhs_vertices if side is Side.LHS else g.rhs_vertices)[v]
        factors.append(Factor(tuple(scope), _resolve(slot, side, f_dense, u_dense, len(scope))))

    values = []
    for bits in all_bits(len(dangling_vars)):
        values.append(sum_product(factors, dict(zip(dangling_vars, bits))))
    m, n = g.side_profile
    side = Side.LHS if n == 0 and m else Side.RHS if m == 0 and n else Side.STRADDLED
    return GadgetSignature(DenseSig(len(dangling_vars), tuple(values), side, (m, n)), (m, n))


# ---------------------------------------------------------------------------
# wirings

L, R = Side.LHS, Side.RHS


def _g(name, nl, nr, edges, dangling, lhs=None, rhs=None, unaries=()) -> Gadget:
    return Gadget(
        name,
        tuple(lhs) if lhs else (WORKING,) * nl,
        tuple(rhs) if rhs else (EQUALITY,) * nr,
        tuple(unaries),
        tuple(edges),
        tuple(dangling),
    )


def identity_gadget() -> Gadget:
    return _g("id", 1, 0, [], [(0, L)] * 3)


def g1_gadget() -> Gadget:
    # square with a double edge to a circle; one dangling edge on each
    return _g("G1", 1, 1, [(0, 0), (0, 0)], [(0, L), (0, R)])


def g1_chain(k: int) -> Gadget:
    """``k`` copies of G1 joined circle-to-square."""
    if k < 1:
        raise ValueError("a chain needs at least one copy")
    edges = []
    for t in range(k):
        edges += [(t, t), (t, t)]
        if t + 1 < k:
            edges.append((t + 1, t))
    return _g(f"G1^{k}", k, k, edges, [(0, L), (k - 1, R)])


def g2_gadget() -> Gadget:
    # K_{3,3} minus the edge between the middle square and the middle circle
    edges = [(i, j) for i in range(3) for j in range(3) if (i, j) != (1, 1)]
    return _g("G2", 3, 3, edges, [(1, L), (1, R)])


def g3_gadget() -> Gadget:
    # S1: dangling, C1, C2; C1: S1, dangling, S2; S2 has a double edge to C2
    edges = [(0, 0), (0, 1), (1, 0), (1, 1), (1, 1)]
    return _g("G3", 2, 2, edges, [(0, L), (0, R)])


def g4_gadget() -> Gadget:
    # squares SL, SR, SB, SC; circles CT, CL, CR
    SL, SR, SB, SC = range(4)
    CT, CL, CR = range(3)
    edges = [(SL, CT), (SR, CT), (SL, CL), (SB, CL), (SR, CR), (SB, CR), (SC, CT), (SC, CL), (SC, CR)]
    return _g("G4", 4, 3, edges, [(SL, L), (SR, L), (SB, L)])


def gaux_gadget() -> Gadget:
    edges = [(i, j) for i in range(3) for j in range(2)]
    return _g("Gaux", 3, 2, edges, [(0, L), (1, L), (2, L)])


def nonlin_gadget() -> Gadget:
    # the [y, 1] unaries are LHS vertices hanging off the two circles
    edges = [(0, 0), (0, 0), (0, 1)]
    return _g("nonlin", 1, 2, edges, [(1, R)], unaries=[(0, R, UNARY), (1, R, UNARY)])


def absorb_lhs_gadget(k: int) -> Gadget:
    """Absorption gadgets closed by RHS unaries ``[1, x]``; no dangling edges."""
    if k == 1:
        return _g("absorbL1", 1, 0, [], [], unaries=[(0, L, UNARY)] * 3)
    if k == 2:
        return _g("absorbL2", 2, 1, [(0, 0), (1, 0), (1, 0)], [],
                  unaries=[(0, L, UNARY), (0, L, UNARY), (1, L, UNARY)])
    if k == 3:
        edges = [(i, j) for i in range(3) for j in range(2)]
        return _g("absorbL3", 3, 2, edges, [], unaries=[(i, L, UNARY) for i in range(3)])
    if k == 4:
        edges = [(0, 0), (0, 0), (0, 1), (1, 0), (2, 1), (2, 1)]
        return _g("absorbL4", 3, 2, edges, [],
                  unaries=[(1, L, UNARY), (1, L, UNARY), (2, L, UNARY)])
    raise ValueError(f"no absorption gadget L{k}")


def absorb_rhs_gadget(k: int) -> Gadget:
    """Absorption gadgets closed by LHS unaries ``[y, 1]``; no dangling edges."""
    if k == 1:
        return _g("absorbR1", 0, 1, [], [], unaries=[(0, R, UNARY)] * 3)
    if k == 2:
        return _g("absorbR2", 1, 2, [(0, 0), (0, 1), (0, 1)], [],
                  unaries=[(0, R, UNARY), (0, R, UNARY), (1, R, UNARY)])
    if k == 3:
        edges = [(i, j) for i in range(2) for j in range(3)]
        return _g("absorbR3", 2, 3, edges, [], unaries=[(j, R, UNARY) for j in range(3)])
    raise ValueError(f"no absorption gadget R{k}")


def pin_rhs_unary_gadget() -> Gadget:
    """An RHS unary attached to one square: a symmetric LHS binary."""
    return _g("pinL", 1, 0, [], [(0, L), (0, L)], unaries=[(0, L, UNARY)])


def pin_lhs_unary_gadget() -> Gadget:
    """An LHS unary attached to one circle: a symmetric RHS binary."""
    return _g("pinR", 0, 1, [], [(0, R), (0, R)], unaries=[(0, R, UNARY)])


LIBRARY: dict[str, Callable[[], Gadget]] = {
    "G1": g1_gadget,
    "G2": g2_gadget,
    "G3": g3_gadget,
    "G4": g4_gadget,
    "Gaux": gaux_gadget,
    "nonlin": nonlin_gadget,
    "absorbL1": lambda: absorb_lhs_gadget(1),
    "absorbL2": lambda: absorb_lhs_gadget(2),
    "absorbL3": lambda: absorb_lhs_gadget(3),
    "absorbL4": lambda: absorb_lhs_gadget(4),
    "absorbR1": lambda: absorb_rhs_gadget(1),
    "absorbR2": lambda: absorb_rhs_gadget(2),
    "absorbR3": lambda: absorb_rhs_gadget(3),
}


def gadget(name: str) -> Gadget:
    try:
        return LIBRARY[name]()
    except KeyError:
        raise KeyError(f"unknown gadget {name!r}; known: {', '.join(LIBRARY)}") from None


# ---------------------------------------------------------------------------
# closed forms (f normalized to [1, a, b, c])


def _abc(f) -> tuple[Scalar, Scalar, Scalar]:
    f = f if isinstance(f, SymSig3) else SymSig3(*f)
    if f.f0 != 1:
        raise ValueError(f"closed form expects a normalized signature [1, a, b, c], got {f}")
    return f.f1, f.f2, f.f3


def g1_matrix(f) -> Mat2:
    a, b, c = _abc(f)
    return Mat2.of([[1, b], [a, c]])


def g2_matrix(f) -> Mat2:
    a, b, c = _abc(f)
    w = 1 + 2 * a**3 + b**3
    a2 = a + 2 * a**2 * b + b**2 * c
    b2 = a**2 + 2 * a * b**2 + b * c**2
    c2 = a**3 + 2 * b**3 + c**3
    return Mat2.of([[w, b2], [a2, c2]])


def g3_matrix(f) -> Mat2:
    a, b, c = _abc(f)
    return Mat2.of([[1 + a * b, a**2 + b * c], [a + b**2, a * b + c**2]])


def g4_apply(f) -> SymSig3:
    """Ternary signature of G4 for a general ``[w, x, y, z]``."""
    w, x, y, z = (f if isinstance(f, SymSig3) else SymSig3(*f)).values
    return SymSig3(
        w**4 + 3 * w * x**3 + 3 * x**2 * y**2 + y**3 * z,
        w**3 * x + 2 * w * x**2 * y + x**4 + x**2 * y * z + 2 * x * y**3 + y**2 * z**2,
        w**2 * x**2 + w * x * y**2 + 2 * x**3 * y + 2 * x * y**2 * z + y**4 + y * z**3,
        w * x**3 + 3 * x**2 * y**2 + 3 * y**3 * z + z**4,
    )


def gaux_apply(f) -> SymSig3:
    w, x, y, z = (f if isinstance(f, SymSig3) else SymSig3(*f)).values
    return SymSig3(
        w**3 + 2 * x**3 + y**3,
        w**2 * x + 2 * x**2 * y + y**2 * z,
        w * x**2 + 2 * x * y**2 + y * z**2,
        x**3 + 2 * y**3 + z**3,
    )


def nonlinearity_apply(f, y: Scalar) -> tuple[Scalar, Scalar]:
    a, b, c = _abc(f)
    return (y * y + y * b, y * a + c)


def absorb_factor_lhs(f, x: Scalar) -> tuple[Scalar, Scalar, Scalar, Scalar]:
    """Global factors of the four absorption gadgets closed by ``[1, x]``.

    These are the polynomials the wirings actually produce.  Compared with
    the commonly quoted forms, the cubic coefficient of f2 is ``ab + c^2``,
    that of f3 is ``a^3 + 2b^3 + c^3``, and f4 carries ``3bc^2`` at ``x^2``.
    """
    a, b, c = _abc(f)
    f1 = c * x**3 + 3 * b * x**2 + 3 * a * x + 1
    f2 = (
        (a * b + c * c) * x**3
        + (3 * b * c + 2 * a * a + b) * x**2
        + (2 * b * b + a * c + 3 * a) * x
        + a * b + 1
    )
    f3 = (
        (a**3 + 2 * b**3 + c**3) * x**3
        + 3 * (a**2 + 2 * a * b**2 + b * c**2) * x**2
        + 3 * (a + 2 * a**2 * b + b**2 * c) * x
        + 1 + 2 * a**3 + b**3
    )
    f4 = (
        (a * b + 2 * a * b * c + c**3) * x**3
        + (2 * a**2 + b + 2 * a**2 * c + 3 * a * b**2 + b * c + 3 * b * c**2) * x**2
        + (3 * a + 3 * a**2 * b + a * c + 2 * b**2 + 2 * b**2 * c + a * c**2) * x
        + 1 + 2 * a * b + a * b * c
    )
    return f1, f2, f3, f4


def absorb_factor_rhs(f, y: Scalar) -> tuple[Scalar, Scalar, Scalar]:
    """Global factors of the three absorption gadgets closed by ``[y, 1]``."""
    a, b, c = _abc(f)
    g1 = y**3 + 1
    g2 = y**3 + b * y**2 + a * y + c
    g3 = y**3 + 3 * a**2 * y**2 + 3 * b**2 * y + c**2
    return g1, g2, g3


# ---------------------------------------------------------------------------
# cross-checks


def proportional(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar | None:
    """Return k != 0 with ``u == k * v``, or None."""
    i = next((k for k, x in enumerate(v) if x != 0), None)
    if i is None or u[i] == 0:
        return None
    k = u[i] / v[i]
    return k if all(x == k * y for x, y in zip(u, v)) else None


@dataclass
class ClosedFormReport:
    trials: int
    checks: int
    gadgets: tuple[str, ...]


def _closed_form_cases(f: SymSig3, x: Scalar, y: Scalar):
    yield "G1", lambda: contract(g1_gadget(), f).matrix(), lambda: g1_matrix(f)
    yield "G2", lambda: contract(g2_gadget(), f).matrix(), lambda: g2_matrix(f)
    yield "G3", lambda: contract(g3_gadget(), f).matrix(), lambda: g3_matrix(f)
    yield "G4", lambda: SymSig3(*contract(g4_gadget(), f).symmetric()), lambda: g4_apply(f)
    yield "Gaux", lambda: SymSig3(*contract(gaux_gadget(), f).symmetric()), lambda: gaux_apply(f)
    yield "nonlin", lambda: tuple(contract(nonlin_gadget(), f, (y, 1)).dense.values), lambda: nonlinearity_apply(f, y)
    for k in range(1, 5):
        yield (
            f"absorbL{k}",
            lambda k=k: contract(absorb_lhs_gadget(k), f, (1, x)).dense.values[0],
            lambda k=k: absorb_factor_lhs(f, x)[k - 1],
        )
    for k in range(1, 4):
        yield (
            f"absorbR{k}",
            lambda k=k: contract(absorb_rhs_gadget(k), f, (y, 1)).dense.values[0],
            lambda k=k: absorb_factor_rhs(f, y)[k - 1],
        )


def verify_closed_forms(trials: int = 100, seed: int = 0, height: int = 50,
                        extra: Sequence[SymSig3] = ()) -> ClosedFormReport:
    """Compare every closed form with generic contraction on random normalized f.

    Raises AssertionError naming the gadget and the signature on mismatch.
    """
    rng = random.Random(seed)
    samples = [SymSig3(*f) for f in extra]
    samples += [
        SymSig3(1, *(random_rational(rng, height) for _ in range(3))) for _ in range(trials)
    ]
    checks = 0
    names: list[str] = []
    for f in samples:
        x = random_rational(rng, height)
        y = random_rational(rng, height)
        for name, generic, closed in _closed_form_cases(f, x, y):
            got, want = generic(), closed()
            if got != want:
                raise AssertionError(f"{name}: contraction {got} != closed form {want} for f={f}, x={x}, y={y}")
            checks += 1
            if name not in names:
                names.append(name)
    return ClosedFormReport(len(samples), checks, tuple(names))
