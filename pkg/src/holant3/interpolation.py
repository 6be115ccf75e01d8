"""Interpolation of the degenerate straddled signature and of unaries.

A :class:`SlottedGrid` marks some edges of a grid as slots.  A slot joins an
LHS port ``l`` to an RHS port ``r``; a straddled binary ``M[i][j]`` placed in
the slot reads ``i`` on the edge to ``r`` (its LHS-exposed side) and ``j`` on
the edge to ``l``.  Replacing every slot by ``s`` chained copies of G1 gives
the grids ``Omega_s``; their Holant values are a Vandermonde combination of
the stratified sums, which recovers the value with ``D`` in every slot.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import EigenData, Mat2, Scalar, eigen2, ratio_is_root_of_unity, solve_fraction_free
from .gadgets import g1_matrix
from .holant import SignatureGrid, eval_brute
from .network import Factor, sum_product
from .signatures import EQ3, DenseSig, Side, SymSig3, as_dense


class InterpolationError(ValueError):
    pass


@dataclass(frozen=True)
class SlottedGrid:
    """A canonical grid whose edges ``slots`` (indices into ``grid.edges``) host straddled binaries."""

    grid: SignatureGrid
    slots: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(self.slots))
        if len(set(self.slots)) != len(self.slots):
            raise ValueError("slots must be distinct edges")
        for k in self.slots:
            if not 0 <= k < len(self.grid.edges):
                raise ValueError(f"slot {k} is not an edge of the grid")


def omega(sg: SlottedGrid, s: int) -> SignatureGrid:
    """Replace every slot by ``s`` chained G1 gadgets (a plain edge when s = 0)."""
    g = sg.grid
    f = g.lhs[0]
    eq = as_dense(EQ3, Side.RHS)
    lhs, rhs = list(g.lhs), list(g.rhs)
    edges = [e for k, e in enumerate(g.edges) if k not in sg.slots]
    for k in sg.slots:
        l, lp, r, rp = g.edges[k]
        if s == 0:
            edges.append((l, lp, r, rp))
            continue
        squares = list(range(len(lhs), len(lhs) + s))
        circles = list(range(len(rhs), len(rhs) + s))
        lhs += [f] * s
        rhs += [eq] * s
        # square t: port 0 toward the previous circle (or host r), ports 1, 2 to its own circle
        edges.append((squares[0], 0, r, rp))
        for t in range(s):
            edges.append((squares[t], 1, circles[t], 0))
            edges.append((squares[t], 2, circles[t], 1))
            if t + 1 < s:
                edges.append((squares[t + 1], 0, circles[t], 2))
        edges.append((l, lp, circles[-1], 2))
    return SignatureGrid(tuple(lhs), tuple(rhs), tuple(edges))


def eval_with_straddled(sg: SlottedGrid, m: Mat2) -> Scalar:
    """Holant with the straddled binary ``m`` in every slot (brute force)."""
    g = sg.grid
    factors = []
    base = g.factors()
    n_vars = len(g.edges)
    # each slot edge k keeps variable k at the r end and gets a fresh variable at the l end
    remap: dict[int, int] = {}
    sig = DenseSig(2, (m.m00, m.m01, m.m10, m.m11), Side.STRADDLED, (1, 1))
    for k in sg.slots:
        remap[k] = n_vars
        factors.append(Factor((k, n_vars), sig))
        n_vars += 1
    for idx, fac in enumerate(base):
        if idx < len(g.lhs):
            factors.append(Factor(tuple(remap.get(v, v) for v in fac.scope), fac.sig))
        else:
            factors.append(fac)
    return sum_product(factors)


def _require_works(f: SymSig3) -> tuple[Mat2, EigenData]:
    if f.f0 != 1:
        raise InterpolationError(f"interpolation expects a normalized signature, got {f}")
    m = g1_matrix(f)
    if m.det() == 0:
        raise InterpolationError(f"G1 of {f} is degenerate")
    rou, cond = ratio_is_root_of_unity(m)
    if rou:
        raise InterpolationError(f"G1 of {f} does not work: eigenvalue ratio is a root of unity ({cond})")
    ed = eigen2(m)
    if ed.x is None or ed.lam == ed.mu:
        raise InterpolationError(f"G1 of {f} has no real Jordan factorization")
    return m, ed


def degenerate_binary(ed: EigenData) -> tuple[Mat2, Scalar]:
    """``(D, x + y)`` with ``D = (x+y)^-1 [[y, xy], [1, x]]``."""
    x, y = ed.x, ed.y
    k = x + y
    return Mat2(y / k, x * y / k, 1 / k, x / k), k


@dataclass(frozen=True)
class DirectResult:
    value: Scalar
    scaling: Scalar  # the unnormalized matrix gives value * scaling


def direct_with_D(sg: SlottedGrid, f: SymSig3) -> DirectResult:
    f = f if isinstance(f, SymSig3) else SymSig3(*f)
    _, ed = _require_works(f)
    d, k = degenerate_binary(ed)
    return DirectResult(eval_with_straddled(sg.__class__(sg.grid.with_lhs(f), sg.slots), d), k ** len(sg.slots))


@dataclass(frozen=True)
class VandermondeResult:
    value: Scalar  # c_{0,n}
    nodes: tuple[Scalar, ...]  # lambda^i mu^(n-i), i = 0..n
    omega_values: tuple[Scalar, ...]
    coefficients: tuple[Scalar, ...]  # c_{i, n-i}
    scaling: Scalar


def vandermonde_recover(sg: SlottedGrid, f: SymSig3) -> VandermondeResult:
    f = f if isinstance(f, SymSig3) else SymSig3(*f)
    sg = SlottedGrid(sg.grid.with_lhs(f), sg.slots)
    n = len(sg.slots)
    if n == 0:
        v = eval_brute(sg.grid)
        return VandermondeResult(v, (Fraction(1),), (v,), (v,), Fraction(1))
    _, ed = _require_works(f)
    nodes = tuple(ed.lam**i * ed.mu ** (n - i) for i in range(n + 1))
    if len(set(nodes)) != len(nodes):
        raise AssertionError("repeated Vandermonde nodes although the ratio is not a root of unity")
    values = tuple(eval_brute(omega(sg, s)) for s in range(n + 1))
    matrix = [[node**s for node in nodes] for s in range(n + 1)]
    coeffs = tuple(solve_fraction_free(matrix, list(values)))
    _, k = degenerate_binary(ed)
    return VandermondeResult(coeffs[0], nodes, values, coeffs, k**n)


# ---------------------------------------------------------------------------
# unary interpolation


@dataclass(frozen=True)
class UnaryCertificate:
    """``target = alpha * s M^j1 + beta * s M^j2`` with the two rows independent."""

    matrix: Mat2
    start: tuple[Scalar, Scalar]
    exponents: tuple[int, int]
    rows: tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]
    combos: dict  # label -> (alpha, beta)

    def replay(self) -> bool:
        r = [_row_times_pow(self.start, self.matrix, j) for j in self.exponents]
        if tuple(tuple(x) for x in r) != self.rows:
            return False
        targets = {"pin0": (1, 0), "pin1": (0, 1)}
        for label, (alpha, beta) in self.combos.items():
            want = targets.get(label, label)
            got = tuple(alpha * r[0][k] + beta * r[1][k] for k in range(2))
            if tuple(want) != got:
                return False
        return True


def _row_times_pow(s: Sequence[Scalar], m: Mat2, j: int) -> tuple[Scalar, Scalar]:
    v = tuple(s)
    for _ in range(j):
        v = (v[0] * m.m00 + v[1] * m.m10, v[0] * m.m01 + v[1] * m.m11)
    return v


def unary_interp_coeffs(m: Mat2, s: Sequence, target: Sequence | None = None) -> UnaryCertificate:
    """Show that ``{s M^j}`` spans all unaries, via j = 0 and j = 1."""
    if m.det() == 0:
        raise InterpolationError("matrix is singular")
    ed = eigen2(m)
    if ed.discriminant == 0:
        raise InterpolationError("repeated eigenvalues")
    s = tuple(s)
    r0, r1 = _row_times_pow(s, m, 0), _row_times_pow(s, m, 1)
    det = r0[0] * r1[1] - r0[1] * r1[0]
    if det == 0:
        if s == (0, 0):
            raise InterpolationError("the zero unary spans nothing")
        k = r1[0] / r0[0] if r0[0] != 0 else r1[1] / r0[1]
        which = "lambda" if ed.lam is not None and k == ed.lam else "mu" if ed.mu is not None and k == ed.mu else str(k)
        raise InterpolationError(f"{s} is a row eigenvector of M (eigenvalue {which})")
    combos = {}
    wanted = {"pin0": (1, 0), "pin1": (0, 1)}
    if target is not None:
        wanted[tuple(target)] = tuple(target)
    for label, (t0, t1) in wanted.items():
        alpha = (t0 * r1[1] - t1 * r1[0]) / det
        beta = (t1 * r0[0] - t0 * r0[1]) / det
        combos[label] = (alpha, beta)
    return UnaryCertificate(m, s, (0, 1), (r0, r1), combos)


# ---------------------------------------------------------------------------
# fixtures


def four_vertex_grid(f=SymSig3(1, 2, 3, 5)) -> SignatureGrid:
    """u1 = v1 doubled, u1 - v2, u2 - v1, u2 = v2 doubled."""
    return SignatureGrid.from_pairs([(0, 0), (0, 0), (0, 1), (1, 0), (1, 1), (1, 1)], f)


def slotted_fixture(n_slots: int, f=SymSig3(1, 2, 3, 5)) -> SlottedGrid:
    g = four_vertex_grid(f)
    if n_slots not in (0, 1, 2):
        raise ValueError("the four-vertex fixture has 0, 1 or 2 slots")
    return SlottedGrid(g, (2, 3)[:n_slots])
