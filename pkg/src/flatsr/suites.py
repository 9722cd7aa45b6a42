"""Named verification suites run by ``flatsr verify``.

Each check carries an anchor: a short key naming the result it exercises.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable

from .config import DEFAULT_BOUNDS, Bounds
from .constructors import (
    cycle_semiring,
    from_graph,
    omega_direct_union,
    path_semiring,
    s7,
    words_semiring,
)
from .enumerate import check_records, enumerate_3nilpotent
from .errors import InputError
from .graphs import DiGraph, components, graphs_up_to_iso
from .semiring import FiniteSemiring, find_isomorphism, flat_profile, is_flat_addition, find_zero, verify_axioms
from .subpower import LOWER_BOUNDS, Case, lemma_construction
from .terms import Family, identity_family, satisfies
from .variety import classify_acyclic, decide_membership, in_nf_k, parse_descriptor, vn_generator


@dataclass
class Check:
    id: str
    anchor: str
    passed: bool
    witness: str = ""


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def totals(self) -> tuple[int, int]:
        return sum(c.passed for c in self.checks), len(self.checks)

    def add(self, id: str, anchor: str, passed: bool, witness: str = "") -> None:
        self.checks.append(Check(id, anchor, bool(passed), witness))

    def to_text(self) -> str:
        ok, total = self.totals
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'} ({ok}/{total})"]
        for c in self.checks:
            line = f"  [{'pass' if c.passed else 'FAIL'}] {c.id} <{c.anchor}>"
            if c.witness:
                line += f" {c.witness}"
            lines.append(line)
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "pass": self.passed,
            "checks": [{"id": c.id, "anchor": c.anchor, "pass": c.passed, "witness": c.witness} for c in self.checks],
        }


def _sat(S: FiniteSemiring, fam: Family, n: int | None, bounds: Bounds) -> bool:
    return satisfies(S, identity_family(fam, n), max_vars=bounds.max_vars, budget=bounds.eval_budget).holds


# ---------------------------------------------------------------------------


def mutation_survivors(S: FiniteSemiring) -> list[str]:
    """Single-cell table changes that still give a flat semiring."""
    survivors = []
    for which in ("add", "mul"):
        for a, b in itertools.product(S.elements(), repeat=2):
            for v in S.elements():
                table = [list(row) for row in getattr(S, which)]
                if table[a][b] == v:
                    continue
                table[a][b] = v
                kw = {"add": S.add, "mul": S.mul, which: table}
                T = FiniteSemiring(S.order, kw["add"], kw["mul"], S.labels)
                if not verify_axioms(T).ok:
                    continue
                z = find_zero(T)
                if z is not None and is_flat_addition(T, z):
                    survivors.append(f"{which}[{S.labels[a]}][{S.labels[b]}]={S.labels[v]}")
    return survivors


def suite_s7(bounds: Bounds) -> SuiteResult:
    res = SuiteResult("s7-sanity")
    S = s7()
    rep = verify_axioms(S)
    for ax, w in rep.witnesses.items():
        res.add(f"axiom {ax}", "s7-cayley-tables", w is None, "" if w is None else f"witness {w}")
    res.add("flat", "s7-cayley-tables", flat_profile(S).is_flat)
    surv = mutation_survivors(S)
    res.add("every single-cell mutation detected", "s7-cayley-tables", not surv, " ".join(surv))
    return res


def suite_scnm(bounds: Bounds) -> SuiteResult:
    res = SuiteResult("scnm-grid")
    for n in range(1, bounds.scnm_n + 1):
        S = cycle_semiring(n)
        for m in range(1, bounds.scnm_m + 1):
            got = _sat(S, Family.CN_X3, m, bounds)
            want = m % n != 0
            res.add(f"S_c{n} |= c{m}≈x^3 is {want}", "cycle-divisibility-lemma", got == want, f"got {got}")
    return res


def suite_sisg(bounds: Bounds) -> SuiteResult:
    res = SuiteResult("sisg-enum")
    recs = enumerate_3nilpotent(bounds.sisg_order, bound=max(bounds.enum_order, bounds.sisg_order))
    problems = check_records(recs)
    for n in range(1, bounds.sisg_order + 1):
        here = [r for r in recs if r.order == n]
        si = [r for r in here if r.is_si]
        ok = all(r.graph is not None for r in si)
        res.add(f"order {n}: {len(here)} classes, {len(si)} SI, all SI matched to graphs", "si-iff-graph-semiring", ok)
        # the SI classes of order n are exactly the graphs on n-2 vertices without isolated vertices
        if n >= 2:
            expected = len(graphs_up_to_iso(n - 2, exact=n - 2))
            res.add(f"order {n}: SI count equals graph count {expected}", "si-iff-graph-semiring", expected == len(si), f"got {len(si)}")
    res.add("SI iff unique annihilator iff graph match; pairwise non-isomorphic", "si-iff-graph-semiring", not problems, "; ".join(problems))
    return res


def suite_remark(bounds: Bounds) -> SuiteResult:
    res = SuiteResult("remark-isos")
    pairs = [
        ("S_p2 ≅ S(ab)", path_semiring(2), words_semiring("ab")),
        ("S_c1 ≅ S(a^2)", cycle_semiring(1), words_semiring("a^2")),
        ("S_c2 ≅ S_c(ab)", cycle_semiring(2), words_semiring("ab", commutative=True)),
    ]
    for cid, A, B in pairs:
        cert = find_isomorphism(A, B)
        wit = "" if cert is None else " ".join(f"{A.labels[i]}->{B.labels[j]}" for i, j in enumerate(cert.mapping))
        res.add(cid, "small-graph-semiring-isos", cert is not None, wit)
    big = omega_direct_union([words_semiring("a^2b"), words_semiring("a^2")])
    small = omega_direct_union([words_semiring("a^2"), words_semiring("a^2")])
    res.add("S(a^2b)∘S(a^2) |= x^2+y^2≈x^2+y^2+xy", "omega-union-subalgebra-remark", _sat(big, Family.X2Y2_XY, None, bounds))
    v = satisfies(small, identity_family(Family.X2Y2_XY))
    res.add("S(a^2)∘S(a^2) fails x^2+y^2≈x^2+y^2+xy", "omega-union-subalgebra-remark", not v.holds,
            v.describe(small, identity_family(Family.X2Y2_XY)) if not v.holds else "")
    return res


def suite_nf(bounds: Bounds) -> SuiteResult:
    res = SuiteResult("nf-chain")
    for k in (1, 2, 3):
        S = words_semiring("a" * k)
        inside = in_nf_k(S, k + 1, bounds).member
        outside = not in_nf_k(S, k, bounds).member
        res.add(f"S(a^{k}) in NF_{k + 1} but not NF_{k}", "power-word-not-k-nilpotent", inside and outside)
    for S in (s7(), path_semiring(3), cycle_semiring(2), words_semiring("a^2b")):
        for k in (1, 2, 3):
            ok = (not in_nf_k(S, k, bounds).member) or in_nf_k(S, k + 1, bounds).member
            res.add(f"{S.name}: NF_{k} membership implies NF_{k + 1}", "nilpotent-chain", ok)
    return res


def construction_grid() -> list[tuple[Case, dict]]:
    out = []
    for case in (Case.I, Case.II, Case.III, Case.IV, Case.V):
        keys = list(LOWER_BOUNDS[case])
        for vals in itertools.product((1, 2, 3), repeat=len(keys)):
            params = dict(zip(keys, vals))
            if all(params[k] >= LOWER_BOUNDS[case][k] for k in keys):
                out.append((case, params))
    return out


def suite_constructions(bounds: Bounds) -> SuiteResult:
    res = SuiteResult("lemma-constructions")
    for case, params in construction_grid():
        r = lemma_construction(case, bound=bounds.subpower_size, **params)
        ps = " ".join(f"{k}={v}" for k, v in params.items())
        res.add(f"case {case.value} {ps}", "cyclic-shift-construction", r.holds,
                f"|A|={r.size_A} |A/J|={r.quotient.order} target={r.target.order}" + (f" ({r.note})" if r.note else ""))
    for cyc, pth, m in (((2,), (2,), 2), ((3,), (), 2), ((2, 3), (3,), 2), ((), (2,), 3)):
        r = lemma_construction(Case.P32i, m=m, cycles=cyc, paths=pth, bound=bounds.subpower_size)
        res.add(f"case P32i cycles={cyc} paths={pth} m={m} (reconstruction)", "modified-base-construction", r.holds, r.note)
    for cyc, pth, m in (((1,), (), 2), ((1, 2), (2,), 2), ((1,), (3,), 3)):
        r = lemma_construction(Case.P32ii, m=m, cycles=cyc, paths=pth, bound=bounds.subpower_size)
        res.add(f"case P32ii cycles={cyc} paths={pth} m={m} (reconstruction)", "modified-base-construction", r.holds, r.note)
    return res


def suite_vn(bounds: Bounds) -> SuiteResult:
    res = SuiteResult("vn-generator")
    for n in range(2, min(4, bounds.vn_n) + 1):
        V = vn_generator(n, bound=bounds.vn_n)
        res.add(f"generator for n={n} |= p{n}≈c{n}", "vn-generator", _sat(V, Family.PN_CN, n, bounds))
        res.add(f"generator for n={n} lies in VN({n}) structurally", "vn-generator",
                decide_membership(V, parse_descriptor(f"VN:{n}"), bounds).member)
    return res


def suite_vi(bounds: Bounds) -> SuiteResult:
    res = SuiteResult("vi-distinct")
    S = cycle_semiring(5)
    for q in (2, 3):
        res.add(f"S_c5 |= c{q}≈x^3", "vi-distinct", _sat(S, Family.CN_X3, q, bounds))
    res.add("S_c5 fails c5≈x^3", "vi-distinct", not _sat(S, Family.CN_X3, 5, bounds))
    res.add("S_c5 in VI(2,3), not in VI(2,5)", "vi-distinct",
            decide_membership(S, parse_descriptor("VI:2,3"), bounds).member
            and not decide_membership(S, parse_descriptor("VI:2,5"), bounds).member)
    return res


def suite_x2x3(bounds: Bounds) -> SuiteResult:
    res = SuiteResult("x2x3-example")
    U = omega_direct_union([cycle_semiring(n) for n in range(2, 6)])
    res.add("∘ of S_c2..S_c5 |= x^2≈x^3", "square-cube-example", _sat(U, Family.X2_X3, None, bounds))
    res.add("S_c1 fails x^2≈x^3", "square-cube-example", not _sat(cycle_semiring(1), Family.X2_X3, None, bounds))
    return res


def acyclic_corpus(size: int = 20) -> list[DiGraph]:
    """The first ``size`` nonempty acyclic graphs on at most 6 vertices
    (isolated vertices allowed) whose paths have at most 3 edges.

    The edge cap keeps PATH_SWAP(n) within 8 variables.
    """
    out = []
    for g in graphs_up_to_iso(6, allow_isolated=True):
        cs = components(g)
        if g.vertices and cs.is_acyclic and cs.max_path_edges <= 3:
            out.append(g)
    return out[:size]


def suite_vac_chain(bounds: Bounds) -> SuiteResult:
    res = SuiteResult("vac-chain")
    for n in (2, 3):
        P = path_semiring(n)
        PP = omega_direct_union([P, P])
        P1 = path_semiring(n + 1)
        res.add(f"S_p{n} |= PATH_SWAP({n})", "acyclic-chain", _sat(P, Family.PATH_SWAP, n, bounds))
        res.add(f"S_p{n}∘S_p{n} fails PATH_SWAP({n})", "acyclic-chain", not _sat(PP, Family.PATH_SWAP, n, bounds))
        res.add(f"S_p{n}∘S_p{n} |= p{n + 1}≈x^3", "acyclic-chain", _sat(PP, Family.PN_X3, n + 1, bounds))
        res.add(f"S_p{n + 1} fails p{n + 1}≈x^3", "acyclic-chain", not _sat(P1, Family.PN_X3, n + 1, bounds))
    for G in acyclic_corpus():
        pos = classify_acyclic(G)
        d = pos.descriptor
        n = d.n
        inside = decide_membership(G, d, bounds).member
        below = True
        if pos.rank > 0:
            prev = parse_descriptor(f"VPN:{n}") if d.tag.value == "VPNPN" else parse_descriptor(f"VPNPN:{n - 1}")
            below = not decide_membership(G, prev, bounds).member
        S = from_graph(G)
        ids_ok = _sat(S, Family.PN_X3, n + 1, bounds)
        if n >= 2:
            ids_ok = ids_ok and (_sat(S, Family.PATH_SWAP, n, bounds) == (d.tag.value == "VPN"))
        res.add(f"{components(G)} -> {pos}", "acyclic-chain", inside and below and ids_ok)
    return res


def suite_vac_bases(bounds: Bounds) -> SuiteResult:
    res = SuiteResult("vac-bases")
    graphs = graphs_up_to_iso(min(bounds.oracle_graph_vertices, 4))
    for n in (2, 3):
        bad_pp, bad_p = [], []
        for G in graphs:
            S = from_graph(G)
            pn = _sat(S, Family.PN_X3, n + 1, bounds)
            sw = _sat(S, Family.PATH_SWAP, n, bounds)
            if decide_membership(G, parse_descriptor(f"VPNPN:{n}"), bounds).member != pn:
                bad_pp.append(str(components(G)))
            if decide_membership(G, parse_descriptor(f"VPN:{n}"), bounds).member != (pn and sw):
                bad_p.append(str(components(G)))
        res.add(f"VPNPN({n}) = p{n + 1}≈x^3 on {len(graphs)} graphs", "acyclic-bases", not bad_pp, " ".join(bad_pp))
        res.add(f"VPN({n}) = p{n + 1}≈x^3 + PATH_SWAP({n}) on {len(graphs)} graphs", "acyclic-bases", not bad_p, " ".join(bad_p))
    return res


SUITES: dict[str, Callable[[Bounds], SuiteResult]] = {
    "s7-sanity": suite_s7,
    "scnm-grid": suite_scnm,
    "sisg-enum": suite_sisg,
    "remark-isos": suite_remark,
    "nf-chain": suite_nf,
    "lemma-constructions": suite_constructions,
    "vn-generator": suite_vn,
    "vi-distinct": suite_vi,
    "x2x3-example": suite_x2x3,
    "vac-chain": suite_vac_chain,
    "vac-bases": suite_vac_bases,
}


def run_suite(name: str, bounds: Bounds = DEFAULT_BOUNDS) -> SuiteResult:
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    t0 = time.perf_counter()
    res = SUITES[name](bounds)
    res.elapsed = time.perf_counter() - t0
    return res
