"""Instance-level verification of the classification statements.

Each verifier takes one M-space, checks the structural hypotheses of the
statement (raising NotApplicable otherwise), sweeps a small metric grid, and
demands the behaviour the statement predicts: metrics outside the admitted
shape must be exactly refuted, and the admitted family must survive the
probe battery.  The outcome is a replayable report; `consistent=False` means
the instance contradicts the claimed classification, which a caller should
treat as a finding.

"Standard" is always read up to homothety: every positive multiple of the
trace-form metric is naturally reductive, hence unconditionally expected to
pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from .geocheck import (
    NotApplicable,
    ProbeSet,
    Verdict,
    check_go_metric,
    go_feasibility,
)
from .linalg import solve
from .metric import (
    MetricOperator,
    MetricSpec,
    ScalarBlock,
    SplitBlock,
    is_standard_multiple,
    s_gram,
    validate,
)
from .mspace import MSpace

VALS = (Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2))

THEOREMS = ("T1", "T2_1", "T2_2", "T2_3", "T3_2", "CC1", "C2")


@dataclass
class MetricOutcome:
    label: str
    spec: MetricSpec
    expectation: str  # "refuted" | "passes" | "recorded"
    status: str
    consistent: bool
    detail: str = ""
    verdict: Optional[Verdict] = None  # kept for replay, not serialized

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "metric": self.spec.to_json(),
            "expectation": self.expectation,
            "status": self.status,
            "consistent": self.consistent,
            **({"detail": self.detail} if self.detail else {}),
        }


@dataclass
class TheoremReport:
    theorem: str
    diagram: str
    applicable: bool
    reason: str = ""
    outcomes: list[MetricOutcome] = field(default_factory=list)
    findings: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return all(o.consistent for o in self.outcomes) and not self.findings

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem,
            "space": self.diagram,
            "applicable": self.applicable,
        }
        if not self.applicable:
            out["reason"] = self.reason
            return out
        out["consistent"] = self.consistent
        out["metrics"] = [o.to_json() for o in self.outcomes]
        if self.findings:
            out["findings"] = list(self.findings)
        if self.extra:
            out["extra"] = self.extra
        return out


def _gram(m: MSpace) -> list[list[Fraction]]:
    return s_gram(m)


def _sblock_variants(m: MSpace) -> list[tuple[str, tuple[tuple[Fraction, ...], ...]]]:
    r = len(m.s_basis)
    out = [("s=Id", tuple(tuple(Fraction(1 if i == j else 0) for j in range(r)) for i in range(r)))]
    if r >= 2:
        d = [[Fraction(1 if i == j else 0) for j in range(r)] for i in range(r)]
        d[1][1] = Fraction(2)
        out.append(("s=diag(1,2)", tuple(tuple(row) for row in d)))
        o = [[Fraction(1 if i == j else 0) for j in range(r)] for i in range(r)]
        o[0][1] = o[1][0] = Fraction(1, 2)
        out.append(("s=offdiag(1/2)", tuple(tuple(row) for row in o)))
    else:
        out.append(("s=[2]", ((Fraction(2),),)))
    return out


def _lambda_grid(s: int) -> list[tuple[Fraction, ...]]:
    if 4**s <= 256:
        return [tuple(c) for c in product(VALS, repeat=s)]
    grid = [tuple([v] * s) for v in VALS]
    for i in range(s):
        for v in VALS[1:]:
            lam = [Fraction(1)] * s
            lam[i] = v
            grid.append(tuple(lam))
    return grid


def _diag_spec(sb, lams) -> MetricSpec:
    return MetricSpec(s_block=sb, summand_params=tuple(ScalarBlock(v) for v in lams))


def _scaled_standard_spec(m: MSpace, t: Fraction) -> MetricSpec:
    return MetricSpec(
        s_block=tuple(tuple(t * x for x in row) for row in _gram(m)),
        summand_params=tuple(ScalarBlock(t) for _ in range(m.s_count)),
    )


def _run_metric(
    m: MSpace,
    spec: MetricSpec,
    label: str,
    expectation: str,
    probes: ProbeSet,
) -> MetricOutcome:
    op = validate(spec, m)
    verdict = check_go_metric(m, op, probes)
    if expectation == "refuted":
        ok = verdict.status == "REFUTED"
    elif expectation == "passes":
        ok = verdict.status == "PASSED_SAMPLES"
    else:
        ok = True
    return MetricOutcome(
        label=label,
        spec=spec,
        expectation=expectation,
        status=verdict.status,
        consistent=ok,
        verdict=verdict,
    )


def _require(cond: bool, msg: str):
    if not cond:
        raise NotApplicable(msg)


# -- individual statements --------------------------------------------------


def _verify_t1(m: MSpace, probes: ProbeSet) -> TheoremReport:
    """s >= 3: a geodesic-orbit metric must weight every summand equally."""
    rep = TheoremReport("T1", str(m.flag.diagram), True)
    _require(m.s_count >= 3, f"needs s >= 3, found s = {m.s_count}")
    lam_grid = _lambda_grid(m.s_count)
    for sb_label, sb in _sblock_variants(m):
        for lams in lam_grid:
            unequal = len(set(lams)) > 1
            spec = _diag_spec(sb, lams)
            expectation = "refuted" if unequal else (
                "passes" if is_standard_multiple(spec, m) else "recorded"
            )
            rep.outcomes.append(
                _run_metric(m, spec, f"{sb_label}, lam={lams}", expectation, probes)
            )
    for t in VALS:
        rep.outcomes.append(
            _run_metric(m, _scaled_standard_spec(m, t), f"{t}*standard", "passes", probes)
        )
    return rep


def _s2_labels(m: MSpace) -> tuple[int, int]:
    """Summand labels for the two-summand conventions: the doubled t-root
    (when present) and any 2-dimensional summand go second."""
    assert m.s_count == 2
    x1, x2 = m.flag.troots_plus
    if tuple(2 * c for c in x1.coords) == x2.coords:
        return 1, 2
    d1, d2 = m.summand_dim(1), m.summand_dim(2)
    if d1 == 2 and d2 != 2:
        return 2, 1
    return 1, 2


def _sampled_triples(m: MSpace, i1: int, i2: int, count: int, seed: int):
    import random

    rng = random.Random(seed)
    alg = m.alg
    triples = []
    for _ in range(count):
        v = alg.zero()
        for sb in m.s_basis:
            v = v + Fraction(rng.randint(-5, 5), rng.randint(1, 5)) * sb
        x1 = alg.zero()
        for g in m.summand_gens[i1 - 1]:
            x1 = x1 + Fraction(rng.randint(-5, 5), rng.randint(1, 5)) * alg.element({g: Fraction(1)})
        x2 = alg.zero()
        for g in m.summand_gens[i2 - 1]:
            x2 = x2 + Fraction(rng.randint(-5, 5), rng.randint(1, 5)) * alg.element({g: Fraction(1)})
        if v.is_zero and x1.is_zero and x2.is_zero:
            continue
        triples.append((v, x1, x2))
    return triples


def _k_joint_solve(m: MSpace, eqs: list[tuple[Fraction, "object", "object"]]) -> bool:
    """Solvability of a stacked system sum over equations of
    [c*k + w, y] = 0, unknown k in span(k1)."""
    alg = m.alg
    nk = len(m.k1_basis)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for c, w, y in eqs:
        cols = [alg.bracket(kb, y).dense() for kb in m.k1_basis]
        target = alg.bracket(w, y).dense()
        for i in range(alg.dim):
            row = [c * cols[g][i] for g in range(nk)]
            rows.append(row)
            rhs.append(-target[i])
    if not rows:
        return True
    sol, _, _ = solve(rows, rhs)
    return sol is not None


def _verify_t2_1(m: MSpace, probes: ProbeSet) -> TheoremReport:
    """s = 2, both summands irreducible: the stated pair of bracket equations
    characterizes the geodesic-orbit property probe by probe."""
    rep = TheoremReport("T2_1", str(m.flag.diagram), True)
    _require(m.s_count == 2, f"needs s = 2, found s = {m.s_count}")
    i1, i2 = _s2_labels(m)
    _require(
        not m.is_reducible(i1) and not m.is_reducible(i2),
        "needs both summands Ad(K1)-irreducible",
    )
    triples = _sampled_triples(m, i1, i2, 12, probes.seed)
    gram = _gram(m)
    agree_all = True
    for mu, mu1, mu2 in product((Fraction(1), Fraction(2), Fraction(1, 2)), repeat=3):
        sb = tuple(tuple(mu * x for x in row) for row in gram)
        params = [None, None]
        params[i1 - 1] = ScalarBlock(mu1)
        params[i2 - 1] = ScalarBlock(mu2)
        spec = MetricSpec(s_block=sb, summand_params=tuple(params))
        op = validate(spec, m)
        agree = 0
        for v, x1, x2 in triples:
            joint = _k_joint_solve(
                m,
                [
                    (mu1, (mu1 - mu) * v + (mu1 - mu2) * x2, x1),
                    (mu2, (mu2 - mu) * v, x2),
                ],
            )
            x = v + x1 + x2
            if x.is_zero:
                continue
            go = go_feasibility(m, op, x).status == "FEASIBLE"
            if joint == go:
                agree += 1
            else:
                agree_all = False
        rep.outcomes.append(
            MetricOutcome(
                label=f"mu={mu}, mu1={mu1}, mu2={mu2}",
                spec=spec,
                expectation="recorded",
                status=f"criterion agreement {agree}/{len(triples)}",
                consistent=agree == len(triples),
            )
        )
    if not agree_all:
        rep.findings.append("bracket-pair criterion disagreed with direct feasibility")
    return rep


def _split_variants() -> list[tuple[str, SplitBlock]]:
    return [
        ("split(1,1,0)", SplitBlock(Fraction(1), Fraction(1), Fraction(0))),
        ("split(2,2,0)", SplitBlock(Fraction(2), Fraction(2), Fraction(0))),
        ("split(1,2,0)", SplitBlock(Fraction(1), Fraction(2), Fraction(0))),
        ("split(1,1,1/2)", SplitBlock(Fraction(1), Fraction(1), Fraction(1, 2))),
    ]


def _verify_t2_2(m: MSpace, probes: ProbeSet) -> TheoremReport:
    """s = 2, exactly one summand reducible: geodesic-orbit forces the metric
    to fuse s with the reducible summand (necessary form only)."""
    rep = TheoremReport("T2_2", str(m.flag.diagram), True)
    _require(m.s_count == 2, f"needs s = 2, found s = {m.s_count}")
    red = [i for i in (1, 2) if m.is_reducible(i)]
    _require(len(red) == 1, f"needs exactly one reducible summand, found {len(red)}")
    j = red[0]
    i = 3 - j
    gram = _gram(m)
    for mu in (Fraction(1), Fraction(2)):
        for jl, jblk in _split_variants():
            for lam_i in (Fraction(1), Fraction(2), Fraction(3)):
                sb = tuple(tuple(mu * x for x in row) for row in gram)
                params: list = [None, None]
                params[j - 1] = jblk
                params[i - 1] = ScalarBlock(lam_i)
                spec = MetricSpec(s_block=sb, summand_params=tuple(params))
                fused = jblk.coupling == 0 and jblk.mu1 == jblk.mu2 == mu
                if fused:
                    expectation = "passes" if lam_i == mu else "recorded"
                else:
                    expectation = "refuted"
                rep.outcomes.append(
                    _run_metric(
                        m,
                        spec,
                        f"mu={mu}, {jl} on m{j}, lam={lam_i} on m{i}",
                        expectation,
                        probes,
                    )
                )
    return rep


def _verify_t2_3(m: MSpace, probes: ProbeSet) -> TheoremReport:
    """s = 2, both summands reducible: only the standard metric survives."""
    rep = TheoremReport("T2_3", str(m.flag.diagram), True)
    _require(m.s_count == 2, f"needs s = 2, found s = {m.s_count}")
    _require(
        m.is_reducible(1) and m.is_reducible(2),
        "needs both summands Ad(K1)-reducible",
    )
    gram = _gram(m)
    for mu in (Fraction(1), Fraction(2)):
        sb = tuple(tuple(mu * x for x in row) for row in gram)
        for l1, b1 in _split_variants():
            for l2, b2 in _split_variants():
                spec = MetricSpec(s_block=sb, summand_params=(b1, b2))
                expectation = "passes" if is_standard_multiple(spec, m) else "refuted"
                rep.outcomes.append(
                    _run_metric(m, spec, f"mu={mu}, {l1}, {l2}", expectation, probes)
                )
    return rep


def _verify_t3_2(m: MSpace, probes: ProbeSet) -> TheoremReport:
    """s = 1 with a reducible summand: only the standard metric survives."""
    rep = TheoremReport("T3_2", str(m.flag.diagram), True)
    _require(m.s_count == 1, f"needs s = 1, found s = {m.s_count}")
    _require(m.is_reducible(1), "needs the single summand Ad(K1)-reducible")
    g0 = _gram(m)[0][0]
    for sval in (Fraction(1), Fraction(2), g0, 2 * g0):
        sb = ((sval,),)
        for lbl, blk in _split_variants():
            spec = MetricSpec(s_block=sb, summand_params=(blk,))
            expectation = "passes" if is_standard_multiple(spec, m) else "refuted"
            rep.outcomes.append(
                _run_metric(m, spec, f"s=[{sval}], {lbl}", expectation, probes)
            )
    return rep


def _verify_cc1(m: MSpace, probes: ProbeSet) -> TheoremReport:
    """s >= 3, one-dimensional s, some summand reducible: only standard."""
    rep = TheoremReport("CC1", str(m.flag.diagram), True)
    _require(m.s_count >= 3, f"needs s >= 3, found s = {m.s_count}")
    _require(len(m.s_basis) == 1, f"needs dim s = 1, found {len(m.s_basis)}")
    red = [i for i in range(1, m.s_count + 1) if m.is_reducible(i)]
    _require(bool(red), "needs some Ad(K1)-reducible summand")
    g0 = _gram(m)[0][0]
    lam_grid = _lambda_grid(m.s_count)
    for sval in (Fraction(1), g0, 2 * g0):
        sb = ((sval,),)
        for lams in lam_grid:
            spec = _diag_spec(sb, lams)
            expectation = "passes" if is_standard_multiple(spec, m) else "refuted"
            rep.outcomes.append(
                _run_metric(m, spec, f"s=[{sval}], lam={lams}", expectation, probes)
            )
    j = red[0]
    for lbl, blk in _split_variants():
        if blk.mu1 == blk.mu2 and blk.coupling == 0:
            continue
        params: list = [ScalarBlock(Fraction(1)) for _ in range(m.s_count)]
        params[j - 1] = blk
        spec = MetricSpec(s_block=((g0,),), summand_params=tuple(params))
        rep.outcomes.append(
            _run_metric(m, spec, f"standard s, {lbl} on m{j}", "refuted", probes)
        )
    return rep


def _verify_c2(m: MSpace, probes: ProbeSet) -> TheoremReport:
    """s = 2 with a 2-dimensional second summand: feasibility of
    [k + V + X2, X1] = 0 tracks the geodesic-orbit property of the fused
    metrics probe by probe."""
    rep = TheoremReport("C2", str(m.flag.diagram), True)
    _require(m.s_count == 2, f"needs s = 2, found s = {m.s_count}")
    i1, i2 = _s2_labels(m)
    _require(m.summand_dim(i2) == 2, "needs dim m_2 = 2")
    triples = _sampled_triples(m, i1, i2, 12, probes.seed)
    gram = _gram(m)
    pairs = [(a, b) for a in VALS for b in VALS if a != b][:8]
    agree_all = True
    for mu, mu1 in pairs:
        sb = tuple(tuple(mu * x for x in row) for row in gram)
        params: list = [None, None]
        params[i1 - 1] = ScalarBlock(mu1)
        params[i2 - 1] = ScalarBlock(mu)
        spec = MetricSpec(s_block=sb, summand_params=tuple(params))
        op = validate(spec, m)
        agree = 0
        for v, x1, x2 in triples:
            cond = _k_joint_solve(m, [(Fraction(1), v + x2, x1)])
            x = v + x1 + x2
            if x.is_zero:
                continue
            go = go_feasibility(m, op, x).status == "FEASIBLE"
            if cond == go:
                agree += 1
            else:
                agree_all = False
        rep.outcomes.append(
            MetricOutcome(
                label=f"mu={mu}, mu1={mu1}",
                spec=spec,
                expectation="recorded",
                status=f"criterion agreement {agree}/{len(triples)}",
                consistent=agree == len(triples),
            )
        )
    if not agree_all:
        rep.findings.append("fused-metric criterion disagreed with direct feasibility")
    return rep


_VERIFIERS = {
    "T1": _verify_t1,
    "T2_1": _verify_t2_1,
    "T2_2": _verify_t2_2,
    "T2_3": _verify_t2_3,
    "T3_2": _verify_t3_2,
    "CC1": _verify_cc1,
    "C2": _verify_c2,
}


def verify_theorem(m: MSpace, which: str, probes: Optional[ProbeSet] = None) -> TheoremReport:
    """Run one instance verifier; raises NotApplicable when the space does
    not satisfy the statement's hypotheses."""
    if which not in _VERIFIERS:
        raise ValueError(f"unknown statement {which!r}; choose from {THEOREMS}")
    if probes is None:
        probes = ProbeSet(random_count=60, seed=42)
    try:
        return _VERIFIERS[which](m, probes)
    except NotApplicable as exc:
        return TheoremReport(
            theorem=which,
            diagram=str(m.flag.diagram),
            applicable=False,
            reason=str(exc),
        )
