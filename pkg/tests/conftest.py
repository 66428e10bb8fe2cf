import random
from fractions import Fraction

import pytest

from gorbit.chevalley import build_compact_algebra
from gorbit.flag import PaintedDiagram, build_flag
from gorbit.mspace import build_mspace
from gorbit.rootsys import RootSystemType, build_root_system

SMALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 3), ("G", 2)]
EXACT_SWEEP_TYPES = SMALL_TYPES + [("A", 4), ("B", 3), ("B", 4), ("C", 4), ("D", 4)]


def rs_of(family, rank):
    return build_root_system(RootSystemType(family, rank))


def alg_of(family, rank):
    return build_compact_algebra(rs_of(family, rank))


def space_of(family, rank, painted):
    return build_mspace(build_flag(PaintedDiagram(RootSystemType(family, rank), tuple(painted))))


def random_element(alg, rng, *, span=None):
    gens = span if span is not None else alg.generators
    terms = {}
    for g in gens:
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if c:
            terms[g] = c
    return alg.element(terms)


def random_n_vector(m, rng):
    while True:
        coords = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(m.dim_n)]
        if any(coords):
            return m.from_n_coords(coords)


def random_k1_vector(m, rng):
    x = m.alg.zero()
    for kb in m.k1_basis:
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if c:
            x = x + c * kb
    return x


@pytest.fixture
def rng():
    return random.Random(20240626)
