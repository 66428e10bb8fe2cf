"""Painted Dynkin diagrams, the split R = R_K | R_M, and t-root structure.

Painting a subset of simple roots declares the complementary roots R_M; the
restriction map kappa just slices root coordinates at the painted indices.
Fibers of kappa over the positive t-roots index the irreducible isotropy
summands, and the adjacency graph on t-roots drives the connectedness
arguments used by the geodesic-orbit checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .chevalley import CompactAlgebra, Generator, build_compact_algebra
from .rootsys import (
    IndexOutOfRange,
    Root,
    RootSystem,
    RootSystemType,
    build_root_system,
)


class EmptyPainted(ValueError):
    pass


class NotATRoot(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class PaintedDiagram:
    algebra: RootSystemType
    painted: tuple[int, ...]  # 1-based simple-root indices, sorted

    def __post_init__(self):
        if not self.painted:
            raise EmptyPainted("painting no node leaves K = G")
        if list(self.painted) != sorted(set(self.painted)):
            object.__setattr__(self, "painted", tuple(sorted(set(self.painted))))
        if self.painted[0] < 1 or self.painted[-1] > self.algebra.rank:
            raise IndexOutOfRange(f"painted indices {self.painted} out of range")

    def __str__(self) -> str:
        return f"{self.algebra}/{','.join(map(str, self.painted))}"


@dataclass(frozen=True, slots=True)
class TRoot:
    coords: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.coords)

    @property
    def is_positive(self) -> bool:
        return any(self.coords) and all(c >= 0 for c in self.coords)

    def __neg__(self) -> "TRoot":
        return TRoot(tuple(-c for c in self.coords))

    def sort_key(self):
        return (self.height, self.coords)

    def __repr__(self) -> str:
        return "TRoot" + str(self.coords)


@dataclass(frozen=True)
class FlagManifold:
    diagram: PaintedDiagram
    rs: RootSystem
    R_K: tuple[Root, ...]  # both signs
    R_K_plus: tuple[Root, ...]
    R_M: tuple[Root, ...]
    R_M_plus: tuple[Root, ...]
    troots_plus: tuple[TRoot, ...]
    fibers: dict[TRoot, tuple[Root, ...]]
    s_count: int
    _troot_set: frozenset[TRoot] = field(repr=False)

    @property
    def unpainted(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.rs.rank + 1) if j not in self.diagram.painted)

    def kappa(self, alpha: Root) -> TRoot:
        return TRoot(tuple(alpha.coeffs[j - 1] for j in self.diagram.painted))

    def troots(self) -> tuple[TRoot, ...]:
        """All t-roots, positive then negative, canonical order."""
        return self.troots_plus + tuple(-x for x in self.troots_plus)

    def contains_troot(self, xi: TRoot) -> bool:
        return xi in self._troot_set

    def algebra(self) -> CompactAlgebra:
        return build_compact_algebra(self.rs)


@dataclass(frozen=True)
class TRootGraph:
    nodes: tuple[TRoot, ...]
    edges: tuple[tuple[TRoot, TRoot], ...]
    components: tuple[tuple[TRoot, ...], ...]

    @property
    def r_count(self) -> int:
        return len(self.components)

    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1


@lru_cache(maxsize=None)
def build_flag(d: PaintedDiagram) -> FlagManifold:
    rs = build_root_system(d.algebra)
    painted = d.painted
    rk_plus, rm_plus = [], []
    for alpha in rs.positive_roots:
        if any(alpha.coeffs[j - 1] for j in painted):
            rm_plus.append(alpha)
        else:
            rk_plus.append(alpha)

    fibers: dict[TRoot, list[Root]] = {}
    for alpha in rm_plus:
        xi = TRoot(tuple(alpha.coeffs[j - 1] for j in painted))
        fibers.setdefault(xi, []).append(alpha)
    troots_plus = tuple(sorted(fibers, key=TRoot.sort_key))

    f = FlagManifold(
        diagram=d,
        rs=rs,
        R_K=tuple(rk_plus) + tuple(-r for r in rk_plus),
        R_K_plus=tuple(rk_plus),
        R_M=tuple(rm_plus) + tuple(-r for r in rm_plus),
        R_M_plus=tuple(rm_plus),
        troots_plus=troots_plus,
        fibers={xi: tuple(roots) for xi, roots in fibers.items()},
        s_count=len(troots_plus),
        _troot_set=frozenset(troots_plus) | frozenset(-x for x in troots_plus),
    )
    return f


def _is_multiple(xi: TRoot, eta: TRoot) -> bool:
    """eta = c * xi for a (nonzero) rational c?"""
    num = den = None
    for a, b in zip(xi.coords, eta.coords):
        if (a == 0) != (b == 0):
            return False
        if a != 0:
            if num is None:
                num, den = b, a
            elif b * den != a * num:
                return False
    return num is not None


def adjacency(f: FlagManifold, xi: TRoot, eta: TRoot) -> bool:
    """Adjacency of two distinct t-roots: proportional ones are adjacent
    unless the ratio is +-2; otherwise the sum or difference must again be a
    t-root."""
    if not f.contains_troot(xi) or not f.contains_troot(eta):
        raise NotATRoot(f"{xi} or {eta} not a t-root of {f.diagram}")
    if xi == eta:
        return False
    if _is_multiple(xi, eta):
        two_xi = TRoot(tuple(2 * c for c in xi.coords))
        two_eta = TRoot(tuple(2 * c for c in eta.coords))
        if eta in (two_xi, -two_xi) or xi in (two_eta, -two_eta):
            return False
        return True
    s = TRoot(tuple(a + b for a, b in zip(xi.coords, eta.coords)))
    d = TRoot(tuple(a - b for a, b in zip(xi.coords, eta.coords)))
    return f.contains_troot(s) or f.contains_troot(d)


def connected_components(f: FlagManifold) -> TRootGraph:
    nodes = f.troots()
    n = len(nodes)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if adjacency(f, nodes[i], nodes[j]):
                edges.append((nodes[i], nodes[j]))
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj

    comps: dict[int, list[TRoot]] = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(nodes[i])
    components = tuple(
        tuple(sorted(c, key=TRoot.sort_key))
        for c in sorted(comps.values(), key=lambda c: min(x.sort_key() for x in c))
    )
    return TRootGraph(nodes=nodes, edges=tuple(edges), components=components)


def summand_basis(f: FlagManifold, i: int) -> list[Generator]:
    """Generators {A_a, B_a} over the kappa-fiber of the i-th positive t-root
    (1-based, canonical t-root order)."""
    if not 1 <= i <= f.s_count:
        raise IndexOutOfRange(f"summand index {i} out of 1..{f.s_count}")
    xi = f.troots_plus[i - 1]
    out: list[Generator] = []
    for alpha in f.fibers[xi]:
        out.append(Generator("A", root=alpha))
        out.append(Generator("B", root=alpha))
    return out


def extremal_roots(f: FlagManifold, i: int) -> tuple[list[Root], list[Root]]:
    """All candidates for the lowest/highest root of the i-th fiber."""
    if not 1 <= i <= f.s_count:
        raise IndexOutOfRange(f"summand index {i} out of 1..{f.s_count}")
    fiber = f.fibers[f.troots_plus[i - 1]]
    lows = [a for a in fiber if not any(f.rs.contains(a.minus(g)) for g in f.R_K_plus)]
    highs = [a for a in fiber if not any(f.rs.contains(a.plus(g)) for g in f.R_K_plus)]
    return lows, highs


def lowest_highest(f: FlagManifold, i: int) -> tuple[Root, Root]:
    """Lowest and highest roots of the fiber: nothing in R_K+ can be
    subtracted (resp. added) while staying a root.  First candidate in
    canonical order if ever non-unique."""
    lows, highs = extremal_roots(f, i)
    return lows[0], highs[0]
