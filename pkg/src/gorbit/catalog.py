"""The fixed scan catalog: every painted diagram over the rank <= 4 simple
algebras plus a selection of F4 paintings.

Scan-style tests and the acceptance suite iterate this list; it is small
enough for exact arithmetic at desk scale yet hits every structural case the
instance verifiers need (two-summand spaces with zero, one or two reducible
summands; a one-dimensional torus with s >= 3; split halves of every parity).
"""

from __future__ import annotations

from itertools import combinations

from .flag import PaintedDiagram
from .rootsys import RootSystemType

CATALOG_TYPES = (
    ("A", 1),
    ("A", 2),
    ("A", 3),
    ("A", 4),
    ("B", 2),
    ("B", 3),
    ("B", 4),
    ("C", 3),
    ("C", 4),
    ("D", 4),
    ("G", 2),
)

F4_PAINTINGS = ((1,), (2,), (4,), (1, 4))


def catalog_diagrams() -> list[PaintedDiagram]:
    out: list[PaintedDiagram] = []
    for family, rank in CATALOG_TYPES:
        t = RootSystemType(family, rank)
        for size in range(1, rank + 1):
            for painted in combinations(range(1, rank + 1), size):
                out.append(PaintedDiagram(t, painted))
    f4 = RootSystemType("F", 4)
    for painted in F4_PAINTINGS:
        out.append(PaintedDiagram(f4, painted))
    return out


def catalog_algebra_types() -> list[RootSystemType]:
    return [RootSystemType(f, r) for f, r in CATALOG_TYPES] + [RootSystemType("F", 4)]
