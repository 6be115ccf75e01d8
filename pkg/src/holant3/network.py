"""Exact sum-product over networks of signatures on Boolean edge variables.

A network is a list of :class:`Factor` objects; each factor reads a tuple of
variable ids in the input order of its :class:`DenseSig`.  Two evaluators are
provided: exhaustive enumeration with zero pruning, and greedy variable
elimination over sparse intermediate tables.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Scalar
from .signatures import DenseSig


class CapExceeded(RuntimeError):
    """An evaluator refused an instance beyond its configured size cap."""


@dataclass(frozen=True)
class Factor:
    scope: tuple[int, ...]
    sig: DenseSig

    def __post_init__(self):
        if len(self.scope) != self.sig.arity:
            raise ValueError(f"scope {self.scope} does not match arity {self.sig.arity}")


def _variables(factors: Sequence[Factor]) -> list[int]:
    seen: dict[int, None] = {}
    for fac in factors:
        for v in fac.scope:
            seen.setdefault(v, None)
    return list(seen)


def _elimination_order(factors: Sequence[Factor], free: Sequence[int]) -> list[int]:
    """Order free variables so that factors complete as early as possible."""
    by_var = defaultdict(list)
    for k, fac in enumerate(factors):
        for v in fac.scope:
            by_var[v].append(k)
    free_set = set(free)
    order: list[int] = []
    placed: set[int] = set()
    # walk factors, emitting their unplaced variables; prefer factors sharing the most placed vars
    remaining = list(range(len(factors)))
    while remaining:
        best = max(
            remaining,
            key=lambda k: (
                sum(v in placed or v not in free_set for v in factors[k].scope),
                -len(factors[k].scope),
            ),
        )
        remaining.remove(best)
        for v in factors[best].scope:
            if v in free_set and v not in placed:
                placed.add(v)
                order.append(v)
    for v in free:
        if v not in placed:
            order.append(v)
    return order


def sum_product(
    factors: Sequence[Factor],
    fixed: dict[int, int] | None = None,
    cap: int | None = None,
) -> Scalar:
    """Exhaustive sum over all assignments of the non-fixed variables.

    Factors are evaluated as soon as their scope is assigned, and branches
    with a zero partial product are abandoned.  ``cap`` bounds the number of
    free variables.
    """
    fixed = dict(fixed or {})
    free = [v for v in _variables(factors) if v not in fixed]
    if cap is not None and len(free) > cap:
        raise CapExceeded(f"{len(free)} free edge variables exceed the brute-force cap {cap}")
    order = _elimination_order(factors, free)
    pos = {v: i for i, v in enumerate(order)}

    # factors fully determined by the fixed assignment
    const: Scalar = Fraction(1)
    ready: list[list[Factor]] = [[] for _ in order]
    for fac in factors:
        last = max((pos[v] for v in fac.scope if v in pos), default=-1)
        if last < 0:
            const = const * fac.sig[[fixed[v] for v in fac.scope]]
            if const == 0:
                return Fraction(0)
        else:
            ready[last].append(fac)

    assign = dict(fixed)
    n = len(order)

    def rec(i: int, acc: Scalar) -> Scalar:
        if i == n:
            return acc
        v = order[i]
        total: Scalar = Fraction(0)
        for bit in (0, 1):
            assign[v] = bit
            val = acc
            for fac in ready[i]:
                val = val * fac.sig[[assign[u] for u in fac.scope]]
                if val == 0:
                    break
            if val != 0:
                total = total + rec(i + 1, val)
        del assign[v]
        return total

    return rec(0, const)


# ---------------------------------------------------------------------------
# variable elimination


class _Table:
    __slots__ = ("scope", "entries")

    def __init__(self, scope: tuple[int, ...], entries: dict[tuple[int, ...], Scalar]):
        self.scope = scope
        self.entries = entries

    @classmethod
    def from_factor(cls, fac: Factor) -> _Table:
        # repeated variables in a scope (self-loops) are collapsed consistently
        scope: list[int] = []
        for v in fac.scope:
            if v not in scope:
                scope.append(v)
        entries: dict[tuple[int, ...], Scalar] = {}
        for bits, val in fac.sig.support():
            a: dict[int, int] = {}
            ok = True
            for v, b in zip(fac.scope, bits):
                if a.setdefault(v, b) != b:
                    ok = False
                    break
            if ok:
                key = tuple(a[v] for v in scope)
                entries[key] = entries.get(key, Fraction(0)) + val
        return cls(tuple(scope), entries)

    def multiply(self, other: _Table) -> _Table:
        shared = [v for v in self.scope if v in other.scope]
        extra = [v for v in other.scope if v not in self.scope]
        idx_self = [self.scope.index(v) for v in shared]
        idx_other_shared = [other.scope.index(v) for v in shared]
        idx_other_extra = [other.scope.index(v) for v in extra]
        buckets: dict[tuple, list] = defaultdict(list)
        for key, val in other.entries.items():
            buckets[tuple(key[i] for i in idx_other_shared)].append(
                (tuple(key[i] for i in idx_other_extra), val)
            )
        out: dict[tuple[int, ...], Scalar] = {}
        for key, val in self.entries.items():
            for ext, oval in buckets.get(tuple(key[i] for i in idx_self), ()):
                prod = val * oval
                if prod != 0:
                    out[key + ext] = prod
        return _Table(self.scope + tuple(extra), out)

    def sum_out(self, v: int) -> _Table:
        i = self.scope.index(v)
        out: dict[tuple[int, ...], Scalar] = {}
        for key, val in self.entries.items():
            k2 = key[:i] + key[i + 1 :]
            out[k2] = out.get(k2, Fraction(0)) + val
        return _Table(self.scope[:i] + self.scope[i + 1 :], {k: x for k, x in out.items() if x != 0})


def eliminate(factors: Sequence[Factor], width_cap: int = 20) -> Scalar:
    """Sum out every variable by greedy min-width variable elimination."""
    tables = [_Table.from_factor(f) for f in factors]
    remaining = set(v for t in tables for v in t.scope)
    while remaining:
        best_v, best_w = None, None
        for v in remaining:
            scope: set[int] = set()
            for t in tables:
                if v in t.scope:
                    scope.update(t.scope)
            w = len(scope) - 1
            if best_w is None or w < best_w:
                best_v, best_w = v, w
        if best_w > width_cap:
            raise CapExceeded(f"intermediate arity {best_w} exceeds the elimination cap {width_cap}")
        touching = [t for t in tables if best_v in t.scope]
        rest = [t for t in tables if best_v not in t.scope]
        merged = touching[0]
        for t in touching[1:]:
            merged = merged.multiply(t)
        rest.append(merged.sum_out(best_v))
        tables = rest
        remaining.discard(best_v)
    total: Scalar = Fraction(1)
    for t in tables:
        total = total * t.entries.get((), Fraction(0))
    return total
