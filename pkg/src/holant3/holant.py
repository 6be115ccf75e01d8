"""Signature grids, exact Holant evaluation, set systems and grid-level transforms."""

from __future__ import annotations

import os
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import Mat2, Scalar, as_rat, product
from .network import CapExceeded, Factor, eliminate, sum_product
from .signatures import (
    EQ3,
    DenseSig,
    Side,
    SigKind,
    SymSig3,
    as_dense,
    classify_form,
    holo_transform_col,
    holo_transform_row,
)

LEAFLESS = SymSig3(1, 0, -1, 2)
BRUTE_CAP_ENV = "HOLANT3_BRUTE_CAP"
DEFAULT_BRUTE_CAP = 28
DEFAULT_DP_CAP = 20
DEFAULT_COVER_CAP = 24


def brute_cap() -> int:
    raw = os.environ.get(BRUTE_CAP_ENV)
    return int(raw) if raw else DEFAULT_BRUTE_CAP


class MalformedGrid(ValueError):
    pass


@dataclass(frozen=True)
class SignatureGrid:
    """A bipartite multigraph with a signature on every vertex.

    ``edges`` holds ``(l, lport, r, rport)``; each port of each vertex is used
    exactly once.  Ports index the inputs of the vertex's DenseSig.
    """

    lhs: tuple[DenseSig, ...]
    rhs: tuple[DenseSig, ...]
    edges: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(as_dense(s, Side.LHS) for s in self.lhs))
        object.__setattr__(self, "rhs", tuple(as_dense(s, Side.RHS) for s in self.rhs))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        self.validate()

    def validate(self) -> None:
        used: set[tuple[str, int, int]] = set()
        for l, lp, r, rp in self.edges:
            if not (0 <= l < len(self.lhs) and 0 <= r < len(self.rhs)):
                raise MalformedGrid(f"edge {(l, lp, r, rp)} references a missing vertex")
            for key, arity in ((("L", l, lp), self.lhs[l].arity), (("R", r, rp), self.rhs[r].arity)):
                if not 0 <= key[2] < arity:
                    raise MalformedGrid(f"port {key[2]} out of range for vertex {key[:2]}")
                if key in used:
                    raise MalformedGrid(f"port {key} used twice")
                used.add(key)
        for side, sigs in (("L", self.lhs), ("R", self.rhs)):
            for v, s in enumerate(sigs):
                for p in range(s.arity):
                    if (side, v, p) not in used:
                        raise MalformedGrid(f"port {p} of {side}{v} is unused")

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[int, int]], lhs_sig=LEAFLESS, rhs_sig=EQ3,
                   n_lhs: int | None = None, n_rhs: int | None = None) -> SignatureGrid:
        """Grid from an edge list of (l, r) pairs, ports assigned in list order."""
        n_lhs = n_lhs if n_lhs is not None else 1 + max((l for l, _ in pairs), default=-1)
        n_rhs = n_rhs if n_rhs is not None else 1 + max((r for _, r in pairs), default=-1)
        lc, rc = Counter(), Counter()
        edges = []
        for l, r in pairs:
            edges.append((l, lc[l], r, rc[r]))
            lc[l] += 1
            rc[r] += 1
        lhs = [as_dense(lhs_sig, Side.LHS)] * n_lhs
        rhs = [as_dense(rhs_sig, Side.RHS)] * n_rhs
        return cls(tuple(lhs), tuple(rhs), tuple(edges))

    def pairs(self) -> list[tuple[int, int]]:
        return [(l, r) for l, _, r, _ in self.edges]

    def with_lhs(self, sig) -> SignatureGrid:
        d = as_dense(sig, Side.LHS)
        return SignatureGrid(tuple(d for _ in self.lhs), self.rhs, self.edges)

    def common_lhs(self) -> SymSig3 | None:
        """The shared LHS signature when all LHS vertices carry one symmetric ternary."""
        if not self.lhs or any(s != self.lhs[0] for s in self.lhs):
            return None
        s = self.lhs[0]
        if s.arity != 3 or not s.is_symmetric():
            return None
        return s.to_sym3()

    def is_canonical(self) -> bool:
        eq = as_dense(EQ3, Side.RHS)
        return (
            len(self.lhs) == len(self.rhs)
            and all(s.arity == 3 for s in self.lhs)
            and all(s == eq for s in self.rhs)
        )

    def factors(self) -> list[Factor]:
        lports: dict[int, dict[int, int]] = {v: {} for v in range(len(self.lhs))}
        rports: dict[int, dict[int, int]] = {v: {} for v in range(len(self.rhs))}
        for k, (l, lp, r, rp) in enumerate(self.edges):
            lports[l][lp] = k
            rports[r][rp] = k
        out = []
        for v, s in enumerate(self.lhs):
            out.append(Factor(tuple(lports[v][p] for p in range(s.arity)), s))
        for v, s in enumerate(self.rhs):
            out.append(Factor(tuple(rports[v][p] for p in range(s.arity)), s))
        return out


def eval_brute(g: SignatureGrid, cap: int | None = None) -> Scalar:
    """Holant value by enumerating every edge assignment (with zero pruning)."""
    cap = brute_cap() if cap is None else cap
    if len(g.edges) > cap:
        raise CapExceeded(f"{len(g.edges)} edges exceed the brute-force cap {cap} (set {BRUTE_CAP_ENV})")
    return sum_product(g.factors())


def eval_dp(g: SignatureGrid, width_cap: int = DEFAULT_DP_CAP) -> Scalar:
    """Holant value by variable elimination over sparse tables."""
    return eliminate(g.factors(), width_cap)


# ---------------------------------------------------------------------------
# set systems


@dataclass(frozen=True)
class SetSystem:
    """A 3-uniform, 3-regular family of multisets over ``elements``."""

    elements: tuple
    sets: tuple[tuple, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "sets", tuple(tuple(s) for s in self.sets))
        self.validate()

    def validate(self) -> None:
        index = set(self.elements)
        if len(index) != len(self.elements):
            raise MalformedGrid("duplicate element ids")
        slots: Counter = Counter()
        for k, s in enumerate(self.sets):
            if len(s) != 3:
                raise MalformedGrid(f"set {k} has {len(s)} slots, expected 3")
            for e in s:
                if e not in index:
                    raise MalformedGrid(f"set {k} mentions unknown element {e!r}")
                slots[e] += 1
        for e in self.elements:
            if slots[e] != 3:
                raise MalformedGrid(f"element {e!r} occupies {slots[e]} slots, expected 3")


def from_set_system(s: SetSystem, lhs_sig=LEAFLESS) -> SignatureGrid:
    pos = {e: i for i, e in enumerate(s.elements)}
    pairs = [(pos[e], k) for k, members in enumerate(s.sets) for e in members]
    return SignatureGrid.from_pairs(pairs, lhs_sig, EQ3, len(s.elements), len(s.sets))


def to_set_system(g: SignatureGrid) -> SetSystem:
    members: list[list[int]] = [[] for _ in g.rhs]
    for l, _, r, _ in sorted(g.edges, key=lambda e: (e[2], e[3])):
        members[r].append(l)
    return SetSystem(tuple(range(len(g.lhs))), tuple(tuple(m) for m in members))


def cover_value(s: SetSystem, cap: int = DEFAULT_COVER_CAP) -> Fraction:
    """Sum of ``(-1)^l 2^h`` over leafless subfamilies.

    Coverage counts slots, so an element listed twice in a chosen set is
    covered twice by it.  ``l`` counts elements covered exactly twice and
    ``h`` those covered three times.
    """
    n = len(s.sets)
    if n > cap:
        raise CapExceeded(f"{n} sets exceed the cover enumeration cap {cap}")
    pos = {e: i for i, e in enumerate(s.elements)}
    set_idx = [[pos[e] for e in members] for members in s.sets]
    cover = [0] * len(s.elements)
    total = 0
    weight = (1, 0, -1, 2)

    def rec(k: int) -> None:
        nonlocal total
        if k == n:
            total += product(weight[c] for c in cover) if cover else 1
            return
        rec(k + 1)
        for e in set_idx[k]:
            cover[e] += 1
        rec(k + 1)
        for e in set_idx[k]:
            cover[e] -= 1

    rec(0)
    return Fraction(total)


# ---------------------------------------------------------------------------
# holographic transformation of a whole grid


@dataclass
class ScalarLedger:
    """An exact product ``rational_factor * prod(base ** exponent)``."""

    rational_factor: Fraction = Fraction(1)
    power_terms: list[tuple[Fraction, int]] = field(default_factory=list)

    def add_power(self, base, exponent: int) -> None:
        base = as_rat(base)
        if exponent == 0 or base == 1:
            return
        for k, (b, e) in enumerate(self.power_terms):
            if b == base:
                self.power_terms[k] = (b, e + exponent)
                return
        self.power_terms.append((base, exponent))

    def merge(self, other: ScalarLedger) -> ScalarLedger:
        out = ScalarLedger(self.rational_factor * other.rational_factor, list(self.power_terms))
        for b, e in other.power_terms:
            out.add_power(b, e)
        return out

    def value(self) -> Fraction:
        v = self.rational_factor
        for b, e in self.power_terms:
            v *= b**e
        return v

    def __str__(self):
        parts = [str(self.rational_factor)] if self.rational_factor != 1 or not self.power_terms else []
        parts += [f"({b})^{e}" for b, e in self.power_terms]
        return " * ".join(parts)


def apply_holo_to_grid(g: SignatureGrid, m: Mat2) -> tuple[SignatureGrid, ScalarLedger]:
    """Transform LHS by ``m`` and RHS by ``m^-1``; Holant(g) = ledger * Holant(result)."""
    if m.det() == 0:
        raise ValueError("holographic transformation needs a nonsingular matrix")
    lhs_cache: dict[DenseSig, DenseSig] = {}
    rhs_cache: dict[DenseSig, tuple[DenseSig, Fraction]] = {}
    new_lhs = []
    for s in g.lhs:
        if s not in lhs_cache:
            lhs_cache[s] = holo_transform_row(s, m)
        new_lhs.append(lhs_cache[s])
    ledger = ScalarLedger()
    scalars: Counter = Counter()
    new_rhs = []
    for s in g.rhs:
        if s not in rhs_cache:
            rhs_cache[s] = holo_transform_col(s, m)
        t, k = rhs_cache[s]
        new_rhs.append(t)
        scalars[k] += 1
    for k, e in scalars.items():
        ledger.add_power(k, e)
    return SignatureGrid(tuple(new_lhs), tuple(new_rhs), g.edges), ledger


# ---------------------------------------------------------------------------
# tractable cases


def _components(g: SignatureGrid) -> list[tuple[int, int]]:
    """(|lhs_c|, |rhs_c|) per connected component."""
    parent = list(range(len(g.lhs) + len(g.rhs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for l, _, r, _ in g.edges:
        a, b = find(l), find(len(g.lhs) + r)
        if a != b:
            parent[a] = b
    sizes: dict[int, list[int]] = {}
    for v in range(len(parent)):
        c = sizes.setdefault(find(v), [0, 0])
        c[0 if v < len(g.lhs) else 1] += 1
    return [tuple(c) for c in sizes.values()]


def tractable_eval(g: SignatureGrid) -> Scalar:
    """Closed-form Holant for a degenerate or Gen-Eq common LHS signature over ``=3``."""
    f = g.common_lhs()
    eq = as_dense(EQ3, Side.RHS)
    if f is None or any(s != eq for s in g.rhs):
        raise ValueError("tractable_eval needs one symmetric ternary on every LHS vertex and =3 on the RHS")
    cls = classify_form(f)
    if cls.kind is SigKind.DEGENERATE:
        (u0, u1), k = cls.detail
        return k ** len(g.lhs) * (u0**3 + u1**3) ** len(g.rhs)
    if cls.kind is SigKind.GEN_EQ:
        return product(f.f0**nl + f.f3**nl for nl, _ in _components(g))
    raise ValueError(f"{f} is {cls}; no closed form here")


# ---------------------------------------------------------------------------
# grid constructors


def k33_grid(sig=LEAFLESS) -> SignatureGrid:
    return SignatureGrid.from_pairs([(i, j) for i in range(3) for j in range(3)], sig)


def random_cubic_bipartite(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Edge list of a random 3-regular bipartite multigraph on n + n vertices."""
    rhs_slots = [r for r in range(n) for _ in range(3)]
    rng.shuffle(rhs_slots)
    return [(l, rhs_slots[3 * l + k]) for l in range(n) for k in range(3)]


def random_grid(n: int, sig, rng: random.Random) -> SignatureGrid:
    return SignatureGrid.from_pairs(random_cubic_bipartite(n, rng), sig, EQ3, n, n)


def random_set_system(n: int, rng: random.Random) -> SetSystem:
    pairs = random_cubic_bipartite(n, rng)
    sets: list[list[int]] = [[] for _ in range(n)]
    for l, r in pairs:
        sets[r].append(l)
    return SetSystem(tuple(range(n)), tuple(tuple(s) for s in sets))


def disjoint_union(g: SignatureGrid, h: SignatureGrid) -> SignatureGrid:
    nl, nr = len(g.lhs), len(g.rhs)
    edges = g.edges + tuple((l + nl, lp, r + nr, rp) for l, lp, r, rp in h.edges)
    return SignatureGrid(g.lhs + h.lhs, g.rhs + h.rhs, edges)


__all__ = [
    "CapExceeded",
    "LEAFLESS",
    "MalformedGrid",
    "ScalarLedger",
    "SetSystem",
    "SignatureGrid",
    "apply_holo_to_grid",
    "cover_value",
    "eval_brute",
    "eval_dp",
    "from_set_system",
    "k33_grid",
    "random_grid",
    "random_set_system",
    "tractable_eval",
]
