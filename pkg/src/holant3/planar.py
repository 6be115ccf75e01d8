"""Planar embeddings, Kasteleyn orientations, Pfaffian matching counts, and
the polynomial-time evaluation of the planar-tractable family.

The family is ``f = [3a+b, -a-b, -a+b, 3a-b]``.  Under the Hadamard basis it
becomes ``[0, 0, 8a, 8b]`` against ``(1/4)[1, 0, 1, 0]``; every surviving edge
assignment has exactly one 0-edge per vertex, so the 0-edges form a perfect
matching and the Holant is ``ledger * (8a)^|U| * PM``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import HADAMARD, Scalar, as_rat, bareiss_det, exact_isqrt
from .holant import SignatureGrid, apply_holo_to_grid
from .network import CapExceeded
from .signatures import EQ3, SymSig3


class NotPlanarEmbedding(ValueError):
    """The rotation system does not describe a planar embedding."""


@dataclass(frozen=True)
class PlanarGraph:
    """A multigraph with a rotation system.

    ``rotation[v]`` lists the ids of the edges at ``v`` in cyclic order.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "rotation", tuple(tuple(r) for r in self.rotation))
        if len(self.rotation) != self.n:
            raise ValueError("one rotation per vertex is required")
        seen = [0] * len(self.edges)
        for v, rot in enumerate(self.rotation):
            for e in rot:
                if v not in self.edges[e]:
                    raise ValueError(f"edge {e} listed at vertex {v} but not incident to it")
                seen[e] += 1
        for e, (u, v) in enumerate(self.edges):
            if u == v:
                raise ValueError("self-loops are not supported")
            if seen[e] != 2:
                raise ValueError(f"edge {e} appears {seen[e]} times in the rotation system")

    def components(self) -> int:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            parent[find(u)] = find(v)
        return len({find(v) for v in range(self.n)})


Dart = tuple[int, int]  # (edge id, tail vertex)


def _head(g: PlanarGraph, d: Dart) -> int:
    u, v = g.edges[d[0]]
    return v if d[1] == u else u


def faces(g: PlanarGraph) -> list[list[Dart]]:
    """Trace the faces of the embedding; each face is a cyclic list of darts.

    After entering ``v`` along edge ``e`` the walk leaves along the edge that
    follows ``e`` in the rotation at ``v``.  Isolated vertices contribute one
    face each.  Raises NotPlanarEmbedding when Euler's formula fails.
    """
    pos = [{e: i for i, e in enumerate(rot)} for rot in g.rotation]
    visited: set[Dart] = set()
    out: list[list[Dart]] = []
    for e, (u, v) in enumerate(g.edges):
        for start in ((e, u), (e, v)):
            if start in visited:
                continue
            face = []
            d = start
            while d not in visited:
                visited.add(d)
                face.append(d)
                w = _head(g, d)
                rot = g.rotation[w]
                nxt = rot[(pos[w][d[0]] + 1) % len(rot)]
                d = (nxt, w)
            out.append(face)
    isolated = sum(1 for rot in g.rotation if not rot)
    f = len(out) + isolated
    c = g.components()
    if g.n - len(g.edges) + f != 2 * c:
        raise NotPlanarEmbedding(
            f"V - E + F = {g.n} - {len(g.edges)} + {f} != 2 * {c}: the rotation system is not planar"
        )
    return out


@dataclass(frozen=True)
class KasteleynOrientation:
    """``tail[e]`` is the vertex edge ``e`` leaves from; ``outer`` is the exempt face."""

    tail: tuple[int, ...]
    outer: int

    def along(self, d: Dart) -> bool:
        return self.tail[d[0]] == d[1]


def _outer_face(fs: list[list[Dart]]) -> int:
    return max(range(len(fs)), key=lambda i: len(fs[i]))


def kasteleyn_orient(g: PlanarGraph, outer: int | None = None) -> KasteleynOrientation:
    """Orient so that every face except ``outer`` has an odd number of edges
    oriented against its boundary walk.

    A spanning forest is oriented arbitrarily; the remaining edges form a
    spanning tree of the dual and are fixed leaf-first towards the outer face.
    Requires a connected embedding.
    """
    if g.components() > 1:
        raise ValueError("kasteleyn_orient needs a connected graph")
    fs = faces(g)
    outer = _outer_face(fs) if outer is None else outer
    face_of: dict[Dart, int] = {d: i for i, f in enumerate(fs) for d in f}

    tail: list[int | None] = [None] * len(g.edges)
    # spanning tree by BFS
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        adj[u].append((e, v))
        adj[v].append((e, u))
    seen = [False] * g.n
    if g.n:
        seen[0] = True
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for e, v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    tail[e] = u
                    queue.append(v)

    def pending(i: int) -> list[int]:
        return [d[0] for d in fs[i] if tail[d[0]] is None]

    remaining = {i: len(pending(i)) for i in range(len(fs))}
    queue = deque(i for i in range(len(fs)) if i != outer and remaining[i] == 1)
    while queue:
        i = queue.popleft()
        if remaining[i] != 1:
            continue
        (e,) = pending(i)
        against = sum(1 for d in fs[i] if tail[d[0]] is not None and tail[d[0]] != d[1])
        d_here = next(d for d in fs[i] if d[0] == e)
        # orient e against the walk iff that makes the count odd
        if against % 2 == 0:
            tail[e] = _head(g, d_here)
        else:
            tail[e] = d_here[1]
        remaining[i] = 0
        other = face_of[(e, _head(g, d_here))]
        if other != i:
            remaining[other] -= 1
            if other != outer and remaining[other] == 1:
                queue.append(other)
    if any(t is None for t in tail):
        raise NotPlanarEmbedding("non-tree edges do not form a dual spanning tree")
    orient = KasteleynOrientation(tuple(tail), outer)
    audit = face_parity_audit(g, orient, fs)
    if not audit:
        raise AssertionError("Kasteleyn parity audit failed")
    return orient


def face_parity_audit(g: PlanarGraph, orient: KasteleynOrientation, fs=None) -> bool:
    fs = faces(g) if fs is None else fs
    for i, f in enumerate(fs):
        if i == orient.outer:
            continue
        against = sum(1 for d in f if not orient.along(d))
        if against % 2 == 0:
            return False
    return True


def kasteleyn_matrix(g: PlanarGraph, orient: KasteleynOrientation) -> list[list[int]]:
    a = [[0] * g.n for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        t = orient.tail[e]
        h = v if t == u else u
        a[t][h] += 1
        a[h][t] -= 1
    return a


def _components_vertices(g: PlanarGraph) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _subgraph(g: PlanarGraph, verts: Sequence[int]) -> PlanarGraph:
    index = {v: i for i, v in enumerate(verts)}
    eids = sorted({e for v in verts for e in g.rotation[v]})
    eindex = {e: i for i, e in enumerate(eids)}
    edges = [(index[g.edges[e][0]], index[g.edges[e][1]]) for e in eids]
    rotation = [[eindex[e] for e in g.rotation[v]] for v in verts]
    return PlanarGraph(len(verts), tuple(edges), tuple(tuple(r) for r in rotation))


def pfaffian_det(g: PlanarGraph) -> int:
    """det of the Kasteleyn matrix of a connected embedding."""
    return bareiss_det(kasteleyn_matrix(g, kasteleyn_orient(g)))


def count_pm(g: PlanarGraph) -> int:
    """Perfect matchings via ``sqrt(det K)`` per connected component."""
    if g.n % 2:
        return 0
    total = 1
    for comp in _components_vertices(g):
        if len(comp) % 2:
            return 0
        sub = _subgraph(g, comp)
        det = pfaffian_det(sub)
        root = exact_isqrt(det)
        if root * root != det:
            raise AssertionError(f"Kasteleyn determinant {det} is not a perfect square")
        total *= root
    return total


def count_pm_brute(g: PlanarGraph | tuple[int, Sequence[tuple[int, int]]], cap: int = 30) -> int:
    """Perfect matchings by enumeration; accepts a PlanarGraph or ``(n, edges)``."""
    n, edges = (g.n, g.edges) if isinstance(g, PlanarGraph) else g
    if len(edges) > cap:
        raise CapExceeded(f"{len(edges)} edges exceed the matching enumeration cap {cap}")
    if n % 2:
        return 0
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u, v in edges:
        inc[u].append(v)
        inc[v].append(u)
    used = [False] * n

    def rec() -> int:
        try:
            u = used.index(False)
        except ValueError:
            return 1
        used[u] = True
        total = 0
        for v in inc[u]:
            if not used[v]:
                used[v] = True
                total += rec()
                used[v] = False
        used[u] = False
        return total

    return rec()


# ---------------------------------------------------------------------------
# planar grids and the tractable family


@dataclass(frozen=True)
class PlanarGrid:
    """An embedded cubic bipartite graph; ``lhs`` lists the LHS vertices in order."""

    graph: PlanarGraph
    lhs: tuple[int, ...]
    name: str = ""

    @property
    def rhs(self) -> tuple[int, ...]:
        left = set(self.lhs)
        return tuple(v for v in range(self.graph.n) if v not in left)

    def to_grid(self, sig) -> SignatureGrid:
        li = {v: i for i, v in enumerate(self.lhs)}
        ri = {v: i for i, v in enumerate(self.rhs)}
        pairs = []
        for u, v in self.graph.edges:
            if u in li and v in ri:
                pairs.append((li[u], ri[v]))
            elif v in li and u in ri:
                pairs.append((li[v], ri[u]))
            else:
                raise ValueError(f"edge ({u}, {v}) does not cross the bipartition")
        return SignatureGrid.from_pairs(pairs, sig, EQ3, len(self.lhs), len(ri))


def family_signature(a, b) -> SymSig3:
    a, b = as_rat(a), as_rat(b)
    return SymSig3(3 * a + b, -a - b, -a + b, 3 * a - b)


def family_params(f: SymSig3) -> tuple[Fraction, Fraction] | None:
    """``(a, b)`` with ``f == [3a+b, -a-b, -a+b, 3a-b]``, or None."""
    a = (f.f0 + f.f1) / 2
    b = (f.f2 - f.f1) / 2
    return (a, b) if family_signature(a, b) == f else None


@dataclass(frozen=True)
class PlanarEvaluation:
    value: Scalar
    ledger: Fraction
    lhs_weight: Scalar
    matchings: int
    closed_form: Scalar


def planar_family_eval(a, b, pg: PlanarGrid) -> PlanarEvaluation:
    """Holant of the family member ``(a, b)`` on a planar grid, via matchings."""
    f = family_signature(a, b)
    grid = pg.to_grid(f)
    faces(pg.graph)  # embedding certificate
    transformed, ledger = apply_holo_to_grid(grid, HADAMARD)
    lhs = transformed.lhs[0]
    expect_lhs = SymSig3(0, 0, 8 * as_rat(a), 8 * as_rat(b)).dense()
    if any(s != expect_lhs for s in transformed.lhs):
        raise AssertionError("Hadamard image of the family is not [0, 0, 8a, 8b]")
    if any(tuple(s.symmetric_values()) != (1, 0, 1, 0) for s in transformed.rhs):
        raise AssertionError("Hadamard image of =3 is not proportional to [1, 0, 1, 0]")
    pm = count_pm(pg.graph)
    w2 = lhs.symmetric_values()[2]
    value = ledger.value() * w2 ** len(pg.lhs) * pm
    n_l, n_r = len(pg.lhs), len(pg.rhs)
    closed = Fraction(8) ** n_l * Fraction(1, 4) ** n_r * as_rat(a) ** n_l * pm
    return PlanarEvaluation(value, ledger.value(), w2, pm, closed)


# ---------------------------------------------------------------------------
# embedded fixtures


def triple_pair() -> PlanarGrid:
    g = PlanarGraph(2, ((0, 1),) * 3, ((0, 1, 2), (2, 1, 0)))
    return PlanarGrid(g, (0,), "triple-pair")


def doubled_cycle(k: int) -> PlanarGrid:
    """A 2k-cycle with every other edge doubled (cubic, bipartite, planar)."""
    if k < 1:
        raise ValueError("k >= 1")
    if k == 1:
        return triple_pair()
    n = 2 * k
    edges: list[tuple[int, int]] = []
    tags: list[dict[str, int]] = [{} for _ in range(n)]
    for i in range(k):
        u, v, w = 2 * i, 2 * i + 1, (2 * i + 2) % n
        # the doubled pair bulges outward and inward; the single edge closes the cycle
        tags[u]["out"] = tags[v]["out"] = len(edges)
        tags[u]["in"] = tags[v]["in"] = len(edges) + 1
        tags[v]["next"] = tags[w]["prev"] = len(edges) + 2
        edges += [(u, v), (u, v), (v, w)]
    rotation = []
    for v in range(n):
        t = tags[v]
        rotation.append((t["out"], t["in"], t["prev"]) if v % 2 == 0 else (t["next"], t["in"], t["out"]))
    g = PlanarGraph(n, tuple(edges), tuple(rotation))
    return PlanarGrid(g, tuple(range(0, n, 2)), f"doubled-C{n}")


def prism(k: int) -> PlanarGrid:
    """The k-prism C_k x K_2 (bipartite for even k); k = 4 is the cube Q3."""
    n = 2 * k
    edges: list[tuple[int, int]] = []
    outer_e, inner_e, spoke_e = [], [], []
    for i in range(k):
        outer_e.append(len(edges))
        edges.append((i, (i + 1) % k))
    for i in range(k):
        inner_e.append(len(edges))
        edges.append((k + i, k + (i + 1) % k))
    for i in range(k):
        spoke_e.append(len(edges))
        edges.append((i, k + i))
    rotation = []
    for i in range(k):
        rotation.append((outer_e[i], spoke_e[i], outer_e[(i - 1) % k]))
    for i in range(k):
        rotation.append((spoke_e[i], inner_e[i], inner_e[(i - 1) % k]))
    g = PlanarGraph(n, tuple(edges), tuple(rotation))
    lhs = tuple(v for v in range(n) if (v % k + v // k) % 2 == 0)
    return PlanarGrid(g, lhs, "Q3" if k == 4 else f"prism-{k}")


def cycle_graph(n: int) -> PlanarGraph:
    edges = tuple((i, (i + 1) % n) for i in range(n))
    rotation = tuple(((i - 1) % n, i) for i in range(n))
    return PlanarGraph(n, edges, rotation)


def k4_graph() -> PlanarGraph:
    """K4 drawn with vertex 3 inside triangle 0-1-2."""
    edges = ((0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3))
    rotation = ((0, 3, 2), (1, 4, 0), (2, 5, 1), (3, 4, 5))
    return PlanarGraph(4, edges, rotation)


def planar_fixtures() -> list[PlanarGrid]:
    out = [triple_pair()] + [doubled_cycle(k) for k in (2, 3, 4, 5)]
    out += [prism(4), prism(6), prism(8)]
    return out
