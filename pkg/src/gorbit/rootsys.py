"""Root systems of the simple Lie algebras, over exact rational arithmetic.

Roots are stored as integer coordinate vectors in the simple-root basis; the
whole system is enumerated from the Cartan matrix by root-string closure.
The symmetric pairing carries two normalizations: `gram` scales long roots to
squared length 2, while `pair_B` rescales by `killing_scale` so that it
matches the trace-form pairing of the compact algebra built downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .linalg import invert, matvec

ADMISSIBLE_RANKS = {
    "A": lambda l: l >= 1,
    "B": lambda l: l >= 2,
    "C": lambda l: l >= 3,
    "D": lambda l: l >= 4,
    "E": lambda l: l in (6, 7, 8),
    "F": lambda l: l == 4,
    "G": lambda l: l == 2,
}

ROOT_COUNTS = {
    "A": lambda l: l * (l + 1),
    "B": lambda l: 2 * l * l,
    "C": lambda l: 2 * l * l,
    "D": lambda l: 2 * l * (l - 1),
    "E": lambda l: {6: 72, 7: 126, 8: 240}[l],
    "F": lambda l: 48,
    "G": lambda l: 12,
}


class InvalidType(ValueError):
    """Raised for (family, rank) pairs that name no simple Lie algebra."""


class NotARoot(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True, slots=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self):
        check = ADMISSIBLE_RANKS.get(self.family)
        if check is None or not check(self.rank):
            raise InvalidType(f"no simple algebra of type {self.family}{self.rank}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True, slots=True)
class Root:
    """A root in simple-root coordinates (all-integer, uniform sign)."""

    coeffs: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    @property
    def is_positive(self) -> bool:
        return self.height > 0

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coeffs))

    def plus(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def minus(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def sort_key(self) -> tuple:
        return (self.height, self.coeffs)

    def __repr__(self) -> str:
        return "Root" + str(self.coeffs)


def cartan_matrix(t: RootSystemType) -> list[list[int]]:
    """Cartan matrix C[i][j] = <alpha_i, alpha_j-coroot> (Bourbaki numbering)."""
    l = t.rank
    c = [[2 if i == j else 0 for j in range(l)] for i in range(l)]

    def link(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    f = t.family
    if f in ("A", "B", "C", "F", "G"):
        for i in range(l - 1):
            link(i, i + 1)
        if f == "B":
            link(l - 2, l - 1, -2, -1)  # alpha_l short
        elif f == "C":
            link(l - 2, l - 1, -1, -2)  # alpha_l long
        elif f == "F":
            link(1, 2, -2, -1)  # alpha_1, alpha_2 long
        elif f == "G":
            link(0, 1, -1, -3)  # alpha_1 short
    elif f == "D":
        for i in range(l - 2):
            link(i, i + 1)
        link(l - 3, l - 1)
    elif f == "E":
        # chain 1-3-4-5-...; node 2 hangs off node 4
        chain = [0, 2, 3, 4, 5, 6, 7][: l - 1]
        for a, b in zip(chain, chain[1:]):
            link(a, b)
        link(1, 3)
    return c


def _simple_half_lengths(t: RootSystemType, cartan: list[list[int]]) -> list[Fraction]:
    """d_i = (alpha_i, alpha_i)/2 with long roots normalized to length^2 = 2."""
    l = t.rank
    d = [Fraction(0)] * l
    d[0] = Fraction(1)
    # Propagate along edges using symmetry d_i * C[j][i] = d_j * C[i][j].
    todo = [0]
    seen = {0}
    while todo:
        i = todo.pop()
        for j in range(l):
            if j not in seen and cartan[i][j] != 0:
                # gram symmetry: C[i][j] d_j = C[j][i] d_i
                d[j] = d[i] * cartan[j][i] / cartan[i][j]
                seen.add(j)
                todo.append(j)
    top = max(d)
    return [x / top for x in d]


@dataclass(frozen=True)
class RootSystem:
    type: RootSystemType
    positive_roots: tuple[Root, ...]
    cartan: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[Fraction, ...], ...]
    killing_scale: Fraction
    _pos_set: frozenset[Root] = field(repr=False)
    _root_set: frozenset[Root] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def roots(self) -> frozenset[Root]:
        return self._root_set

    def contains(self, r: Root) -> bool:
        return r in self._root_set

    def simple_root(self, i: int) -> Root:
        """The i-th simple root, 1-based."""
        if not 1 <= i <= self.rank:
            raise IndexOutOfRange(f"simple root index {i} out of 1..{self.rank}")
        return Root(tuple(1 if k == i - 1 else 0 for k in range(self.rank)))

    def coroot_pairing(self, alpha: Root, j: int) -> int:
        """<alpha, alpha_j-coroot>, 1-based j."""
        if not 1 <= j <= self.rank:
            raise IndexOutOfRange(f"coroot index {j} out of 1..{self.rank}")
        return sum(c * self.cartan[i][j - 1] for i, c in enumerate(alpha.coeffs))

    def eval_on_cartan(self, alpha: Root, coweight: Sequence[Fraction]) -> Fraction:
        """alpha(h) for h given in simple-coroot coordinates."""
        return sum(
            (Fraction(g) * self.coroot_pairing(alpha, j + 1) for j, g in enumerate(coweight)),
            Fraction(0),
        )

    def gram_pair(self, u: Sequence, v: Sequence) -> Fraction:
        acc = Fraction(0)
        for i, a in enumerate(u):
            if a:
                row = self.gram[i]
                acc += Fraction(a) * sum((Fraction(b) * row[j] for j, b in enumerate(v) if b), Fraction(0))
        return acc

    def half_length(self, alpha: Root) -> Fraction:
        """(alpha, alpha)/2 in the gram normalization."""
        return self.gram_pair(alpha.coeffs, alpha.coeffs) / 2

    def coroot_coords(self, alpha: Root) -> tuple[int, ...]:
        """Expansion of the coroot of alpha over the simple coroots (integers)."""
        d_alpha = self.half_length(alpha)
        coords = []
        for i, m in enumerate(alpha.coeffs):
            x = Fraction(m) * (self.gram[i][i] / 2) / d_alpha
            assert x.denominator == 1
            coords.append(int(x))
        return tuple(coords)


@lru_cache(maxsize=None)
def build_root_system(t: RootSystemType) -> RootSystem:
    """Enumerate the full root system by root-string closure from the Cartan matrix.

    Positive roots come out in a fixed height-then-lexicographic order, which
    every later module treats as canonical.
    """
    l = t.rank
    cartan = cartan_matrix(t)
    d = _simple_half_lengths(t, cartan)
    gram = [[Fraction(cartan[i][j]) * d[j] for j in range(l)] for i in range(l)]

    simple = [Root(tuple(1 if k == i else 0 for k in range(l))) for i in range(l)]
    positives: set[Root] = set(simple)
    frontier = list(simple)
    while frontier:
        new_frontier = []
        for beta in frontier:
            for i, alpha in enumerate(simple):
                if beta == alpha:
                    continue
                p = 0
                cur = beta.minus(alpha)
                # the descending string through a positive root stays positive
                while cur in positives:
                    p += 1
                    cur = cur.minus(alpha)
                pairing = sum(c * cartan[k][i] for k, c in enumerate(beta.coeffs))
                q = p - pairing
                if q > 0:
                    cand = beta.plus(alpha)
                    if cand not in positives:
                        positives.add(cand)
                        new_frontier.append(cand)
        frontier = new_frontier

    ordered = tuple(sorted(positives, key=Root.sort_key))
    expected = ROOT_COUNTS[t.family](l)
    assert 2 * len(ordered) == expected, (t, len(ordered), expected)

    # killing_scale: the Cartan-restricted trace form satisfies
    # sum_{alpha in R} (alpha,beta)(alpha,gamma) = c * (beta,gamma); the
    # trace-dual pairing of roots is then gram/c.
    beta = simple[0]

    def gp(u: Root, v: Root) -> Fraction:
        return sum(
            Fraction(a) * gram[i][j] * b
            for i, a in enumerate(u.coeffs)
            for j, b in enumerate(v.coeffs)
            if a and b
        )

    c = sum((gp(alpha, beta) ** 2 for alpha in ordered), Fraction(0)) * 2 / gp(beta, beta)
    rs = RootSystem(
        type=t,
        positive_roots=ordered,
        cartan=tuple(tuple(row) for row in cartan),
        gram=tuple(tuple(row) for row in gram),
        killing_scale=1 / c,
        _pos_set=frozenset(ordered),
        _root_set=frozenset(ordered) | frozenset(-r for r in ordered),
    )
    return rs


def root_string(rs: RootSystem, alpha: Root, beta: Root) -> tuple[int, int]:
    """Largest (p, q) with beta - p*alpha ... beta + q*alpha all roots."""
    if not rs.contains(alpha) or not rs.contains(beta):
        raise NotARoot("root string endpoints must lie in R")
    if beta == alpha or beta == -alpha:
        raise NotARoot("root string through +-alpha itself is not defined")
    p = 0
    cur = beta.minus(alpha)
    while rs.contains(cur):
        p += 1
        cur = cur.minus(alpha)
    q = 0
    cur = beta.plus(alpha)
    while rs.contains(cur):
        q += 1
        cur = cur.plus(alpha)
    return p, q


def pair_B(rs: RootSystem, alpha: Iterable, beta: Iterable) -> Fraction:
    """Exact pairing of root-space vectors, in the trace-form normalization."""
    a = alpha.coeffs if isinstance(alpha, Root) else tuple(alpha)
    b = beta.coeffs if isinstance(beta, Root) else tuple(beta)
    return rs.killing_scale * rs.gram_pair(a, b)


CartanVector = tuple[Fraction, ...]


def fundamental_coweight(rs: RootSystem, j: int) -> CartanVector:
    """Coordinates over the simple coroots of the vector dual to the j-th
    fundamental weight: alpha_i evaluates on it to delta_ij * (alpha_i,alpha_i)/2."""
    if not 1 <= j <= rs.rank:
        raise IndexOutOfRange(f"fundamental coweight index {j} out of 1..{rs.rank}")
    cinv = invert(rs.cartan)
    d_j = rs.gram[j - 1][j - 1] / 2
    col = [row[j - 1] * d_j for row in cinv]
    return tuple(col)


def fundamental_weight_root_coords(rs: RootSystem, j: int) -> CartanVector:
    """The j-th fundamental weight expanded over the simple roots."""
    if not 1 <= j <= rs.rank:
        raise IndexOutOfRange(f"fundamental weight index {j} out of 1..{rs.rank}")
    ginv = invert(rs.gram)
    rhs = [Fraction(0)] * rs.rank
    rhs[j - 1] = rs.gram[j - 1][j - 1] / 2
    return tuple(matvec(ginv, rhs))
