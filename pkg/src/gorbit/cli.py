"""Command-line front end.

Subcommands: describe | troots | decompose | check-go | find-geodesic |
refute | graph.  All reports are deterministic JSON (rationals as "p/q"
strings); `graph` emits DOT.  Exit codes: 0 = consistent, 1 = an
inconsistency with the claimed classification was found, 2 = usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .flag import PaintedDiagram, adjacency, build_flag, connected_components
from .geocheck import ProbeSet, check_go_metric, go_feasibility, is_geodesic_vector
from .metric import MetricOperator, MetricSpec, standard_metric, validate
from .mspace import MSpace, build_mspace
from .serialize import algebra_type_from_json, dumps, element_from_json, element_to_json
from .theorems import THEOREMS, verify_theorem


class UsageError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _parse_painted(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted(int(tok) for tok in text.split(",") if tok))
    except ValueError as exc:
        raise UsageError(f"bad painted list {text!r}") from exc


def _space(args) -> MSpace:
    data = _load_json(args.algebra)
    try:
        t = algebra_type_from_json(data)
        d = PaintedDiagram(t, _parse_painted(args.painted))
    except Exception as exc:
        raise UsageError(str(exc)) from exc
    return build_mspace(build_flag(d))


def _metric(args, m: MSpace) -> MetricOperator:
    if getattr(args, "metric", None):
        spec = MetricSpec.from_json(_load_json(args.metric))
        try:
            return validate(spec, m)
        except Exception as exc:
            raise UsageError(f"invalid metric: {exc}") from exc
    return standard_metric(m)


def _probes(args) -> ProbeSet:
    return ProbeSet(random_count=args.probes, seed=args.seed)


def _summand_info(m: MSpace, i: int) -> dict:
    xi = m.flag.troots_plus[i - 1]
    info = {
        "index": i,
        "troot": list(xi.coords),
        "dim": m.summand_dim(i),
        "fiber": [list(a.coeffs) for a in m.flag.fibers[xi]],
        "reducible": m.is_reducible(i),
    }
    if info["reducible"]:
        sp = m.split_summand(i)
        info["split_dims"] = [len(sp.n1_basis), len(sp.n2_basis)]
        info["seed_roots"] = [list(sp.seed_low.coeffs), list(sp.seed_high.coeffs)]
    return info


def cmd_describe(args) -> int:
    m = _space(args)
    f = m.flag
    report = {
        "space": str(f.diagram),
        "algebra": {"family": f.diagram.algebra.family, "rank": f.diagram.algebra.rank},
        "painted": list(f.diagram.painted),
        "dim_g": m.alg.dim,
        "dim_k1": len(m.k1_basis),
        "dim_n": m.dim_n,
        "dim_s": len(m.s_basis),
        "R_K_plus": len(f.R_K_plus),
        "R_M_plus": len(f.R_M_plus),
        "s": f.s_count,
        "k1": {
            "trivial": not m.k1_basis,
            "rank": len(f.unpainted),
            "dim": len(m.k1_basis),
            "simple_roots": [list(m.flag.rs.simple_root(j).coeffs) for j in f.unpainted],
        },
        "summands": [_summand_info(m, i) for i in range(1, f.s_count + 1)],
    }
    sys.stdout.write(dumps(report))
    return 0


def cmd_troots(args) -> int:
    m = _space(args)
    f = m.flag
    graph = connected_components(f)
    report = {
        "space": str(f.diagram),
        "s": f.s_count,
        "fibers": [
            {
                "troot": list(xi.coords),
                "roots": [list(a.coeffs) for a in f.fibers[xi]],
            }
            for xi in f.troots_plus
        ],
        "components": [
            [list(x.coords) for x in comp] for comp in graph.components
        ],
    }
    finding = f.s_count >= 3 and not graph.is_connected
    if finding:
        report["finding"] = "disconnected t-root set with s >= 3"
    sys.stdout.write(dumps(report))
    return 1 if finding else 0


def cmd_decompose(args) -> int:
    m = _space(args)
    report = {
        "space": str(m.flag.diagram),
        "summands": [_summand_info(m, i) for i in range(1, m.s_count + 1)],
    }
    sys.stdout.write(dumps(report))
    return 0


def cmd_check_go(args) -> int:
    m = _space(args)
    op = _metric(args, m)
    verdict = check_go_metric(m, op, _probes(args))
    report = {
        "space": str(m.flag.diagram),
        "metric": op.spec.to_json(),
        **verdict.to_json(),
        "probes_run": verdict.count,
    }
    sys.stdout.write(dumps(report))
    return 0


def cmd_find_geodesic(args) -> int:
    m = _space(args)
    op = _metric(args, m)
    results = []
    if args.vector:
        vectors = [element_from_json(m.alg, _load_json(args.vector))]
    else:
        vectors = ProbeSet(random_count=args.probes, seed=args.seed, include_structured=False).vectors(m)
    for x in vectors:
        v = go_feasibility(m, op, x)
        entry = {"x": element_to_json(x), "status": v.status}
        if v.status == "FEASIBLE":
            entry["witness"] = element_to_json(v.witness)
            entry["geodesic_vector_check"] = is_geodesic_vector(m, op, v.witness + x).status
        results.append(entry)
    sys.stdout.write(dumps({"space": str(m.flag.diagram), "results": results}))
    return 0


def cmd_refute(args) -> int:
    m = _space(args)
    rep = verify_theorem(m, args.theorem, _probes(args))
    sys.stdout.write(dumps(rep.to_json()))
    return 0 if (not rep.applicable or rep.consistent) else 1


def cmd_graph(args) -> int:
    m = _space(args)
    f = m.flag
    nodes = list(f.troots())
    nodes.sort(key=lambda x: x.sort_key())
    names = {x: f'"{",".join(map(str, x.coords))}"' for x in nodes}
    lines = ["graph troots {"]
    for x in nodes:
        lines.append(f"  {names[x]};")
    for a in range(len(nodes)):
        for b in range(a + 1, len(nodes)):
            if adjacency(f, nodes[a], nodes[b]):
                lines.append(f"  {names[nodes[a]]} -- {names[nodes[b]]};")
    lines.append("}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gorbit",
        description="Exact geodesic-orbit analysis of flag-manifold M-spaces",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_space_args(sp):
        sp.add_argument("--algebra", required=True, help="path to {family, rank} JSON")
        sp.add_argument("--painted", required=True, help="comma-separated painted node indices")

    def add_probe_args(sp):
        sp.add_argument("--probes", type=int, default=200, help="random probe count")
        sp.add_argument("--seed", type=int, default=42, help="probe RNG seed")

    for name, fn in (
        ("describe", cmd_describe),
        ("troots", cmd_troots),
        ("decompose", cmd_decompose),
    ):
        sp = sub.add_parser(name)
        add_space_args(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("check-go")
    add_space_args(sp)
    sp.add_argument("--metric", help="metric JSON path (omit for the standard metric)")
    add_probe_args(sp)
    sp.set_defaults(func=cmd_check_go)

    sp = sub.add_parser("find-geodesic")
    add_space_args(sp)
    sp.add_argument("--metric", help="metric JSON path (omit for the standard metric)")
    sp.add_argument("--vector", help="JSON path of a tangent vector")
    sp.add_argument("--probes", type=int, default=5)
    sp.add_argument("--seed", type=int, default=42)
    sp.set_defaults(func=cmd_find_geodesic)

    sp = sub.add_parser("refute")
    add_space_args(sp)
    sp.add_argument("--theorem", required=True, choices=list(THEOREMS))
    add_probe_args(sp)
    sp.set_defaults(func=cmd_refute)

    sp = sub.add_parser("graph")
    add_space_args(sp)
    sp.add_argument("--dot", action="store_true", default=True, help="emit DOT (default)")
    sp.set_defaults(func=cmd_graph)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except Exception as exc:  # malformed inputs surface as usage errors
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
