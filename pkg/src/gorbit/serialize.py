"""JSON encodings shared by the CLI and the reports.

Rationals travel as decimal-free "p/q" strings (plain "p" when integral) so
every report round-trips bit-exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .chevalley import AlgebraElement, CompactAlgebra, Generator
from .rootsys import Root, RootSystemType


def frac_str(x) -> str:
    return str(Fraction(x))


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


def algebra_type_to_json(t: RootSystemType) -> dict:
    return {"family": t.family, "rank": t.rank}


def algebra_type_from_json(data: dict) -> RootSystemType:
    return RootSystemType(str(data["family"]), int(data["rank"]))


def root_to_json(r: Root) -> list[int]:
    return list(r.coeffs)


def element_to_json(x: AlgebraElement) -> list[dict]:
    """Sorted sparse encoding of an algebra element."""
    out = []
    for g in x.algebra.generators:
        c = x.terms.get(g)
        if c:
            entry: dict = {"gen": g.kind, "coeff": frac_str(c)}
            if g.kind == "IH":
                entry["index"] = g.index
            else:
                entry["root"] = list(g.root.coeffs)
            out.append(entry)
    return out


def element_from_json(alg: CompactAlgebra, data: list[dict]) -> AlgebraElement:
    terms = {}
    for entry in data:
        kind = entry["gen"]
        if kind == "IH":
            g = Generator("IH", index=int(entry["index"]))
        else:
            g = Generator(kind, root=Root(tuple(int(c) for c in entry["root"])))
        terms[g] = parse_frac(entry["coeff"])
    return alg.element(terms)


def dumps(data) -> str:
    """Deterministic JSON with a trailing newline."""
    return json.dumps(data, indent=2, sort_keys=False) + "\n"
