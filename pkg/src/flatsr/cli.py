"""Command line interface.

Exit codes: 0 holds / passes / member, 1 refuted / fails / non-member,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructors as C
from .config import DEFAULT_BOUNDS, Bounds, load_bounds
from .enumerate import enumerate_3nilpotent
from .errors import FlatsrError
from .graphs import DiGraph, components, loads_graph
from .semiring import AXIOMS, FiniteSemiring, dumps, find_isomorphism, flat_profile, loads, verify_axioms
from .subpower import Case, lemma_construction
from .suites import SUITES, run_suite
from .terms import find_separating_identity, parse_identity, satisfies
from .variety import classify_acyclic, decide_membership, parse_descriptor, vn_generator


def _named(token: str) -> FiniteSemiring:
    """``p3``, ``c2``, ``s7``, ``vn4`` or a path to a semiring / graph file."""
    if token == "s7":
        return C.s7()
    for prefix, make in (("vn", vn_generator), ("p", C.path_semiring), ("c", C.cycle_semiring)):
        if token.startswith(prefix) and token[len(prefix):].isdigit():
            return make(int(token[len(prefix):]))
    return read_algebra(token)


def build_from_spec(text: str) -> FiniteSemiring:
    """Build from a ``words``, ``graph``, ``union`` or ``named`` spec."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise C.InputError("empty spec")
    head = lines[0].split()[0]
    if head == "words":
        return C.from_words(C.parse_words_spec(lines[0]))
    if head == "graph":
        return C.from_graph(loads_graph(text))
    if head == "union":
        toks = lines[0].split()
        if len(toks) < 3 or toks[1] not in ("zero", "omega"):
            raise C.InputError("union spec: 'union zero|omega <part> <part> ...'")
        parts = [_named(t) for t in toks[2:]]
        return C.zero_direct_union(parts) if toks[1] == "zero" else C.omega_direct_union(parts)
    if head == "named":
        toks = lines[0].split()
        if len(toks) != 2:
            raise C.InputError("named spec: 'named <s7|pN|cN|vnN>'")
        return _named(toks[1])
    raise C.InputError(f"unknown spec kind {head!r}")


def _first_keyword(text: str) -> str:
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            return ln.split()[0]
    return ""


def read_input(path: str) -> FiniteSemiring | DiGraph:
    text = Path(path).read_text()
    kw = _first_keyword(text)
    if kw == "semiring":
        return loads(text)
    if kw == "graph":
        return loads_graph(text)
    return build_from_spec(text)


def read_algebra(path: str) -> FiniteSemiring:
    x = read_input(path)
    return C.from_graph(x) if isinstance(x, DiGraph) else x


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_build(args, bounds: Bounds) -> int:
    S = build_from_spec(Path(args.spec).read_text())
    out = dumps(S)
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return 0


def cmd_check(args, bounds: Bounds) -> int:
    S = read_algebra(args.file)
    rep = verify_axioms(S, bound=bounds.axiom_order)
    if args.what == "axioms":
        lines = []
        for ax in AXIOMS:
            w = rep.witnesses[ax]
            lines.append(f"{ax}: " + ("ok" if w is None else "fails at " + " ".join(S.labels[i] for i in w)))
        payload = {ax: (None if w is None else [S.labels[i] for i in w]) for ax, w in rep.witnesses.items()}
        _emit(args, payload, "\n".join(lines))
        return 0 if rep.ok else 1
    if not rep.ok:
        ax, w = rep.failures()[0]
        print(f"not a semiring: {ax} fails at " + " ".join(S.labels[i] for i in w))
        return 1
    prof = flat_profile(S)
    lab = lambda xs: sorted(S.labels[i] for i in xs)
    payload = {
        "order": S.order,
        "zero": None if prof.zero is None else S.labels[prof.zero],
        "flat": prof.is_flat,
        "zero_cancellative": prof.is_zero_cancellative,
        "nilpotency_class": prof.nilpotency_class,
        "annihilators": lab(prof.annihilators),
        "subdirectly_irreducible": prof.is_si,
        "least_nonzero_ideal": None if prof.least_nonzero_ideal is None else lab(prof.least_nonzero_ideal),
    }
    if args.what == "flat":
        _emit(args, {"flat": prof.is_flat}, "flat" if prof.is_flat else "not flat")
        return 0 if prof.is_flat else 1
    _emit(args, payload, "\n".join(f"{k}: {v}" for k, v in payload.items()))
    return 0


def cmd_sat(args, bounds: Bounds) -> int:
    S = read_algebra(args.file)
    e = parse_identity(args.identity)
    v = satisfies(S, e, max_vars=bounds.max_vars, budget=bounds.eval_budget)
    payload = {"identity": str(e), "holds": v.holds,
               "counterexample": None if v.holds else {n: S.labels[x] for n, x in zip(e.names, v.counterexample)}}
    _emit(args, payload, f"{e}: " + ("holds" if v.holds else v.describe(S, e)))
    return 0 if v.holds else 1


def cmd_iso(args, bounds: Bounds) -> int:
    A, B = read_algebra(args.first), read_algebra(args.second)
    cert = find_isomorphism(A, B)
    if cert is None:
        _emit(args, {"isomorphic": False}, "not isomorphic")
        return 1
    pairs = {A.labels[a]: B.labels[b] for a, b in enumerate(cert.mapping)}
    _emit(args, {"isomorphic": True, "map": pairs}, "isomorphic: " + " ".join(f"{a}->{b}" for a, b in pairs.items()))
    return 0


def cmd_member(args, bounds: Bounds) -> int:
    x = read_input(args.file)
    d = parse_descriptor(args.descriptor)
    v = decide_membership(x, d, bounds)
    lines = [f"{d}: {'member' if v.member else 'not a member'}", f"reason: {v.reason}"]
    if v.summary is not None:
        lines.append(f"components: {v.summary}")
    if v.identity is not None:
        lines.append(f"failing identity: {v.identity}")
    if v.counterexample:
        lines.append("assignment: " + ", ".join(f"{k}={val}" for k, val in v.counterexample.items()))
    lines += [f"note: {n}" for n in v.notes]
    payload = {"descriptor": str(d), "member": v.member, "reason": v.reason,
               "identity": None if v.identity is None else str(v.identity), "assignment": v.counterexample, "notes": v.notes}
    _emit(args, payload, "\n".join(lines))
    return 0 if v.member else 1


def cmd_classify(args, bounds: Bounds) -> int:
    x = read_input(args.file)
    pos = classify_acyclic(x)
    _emit(args, {"position": str(pos), "rank": pos.rank}, f"{pos} (rank {pos.rank})")
    return 0


def cmd_construct(args, bounds: Bounds) -> int:
    ints = lambda s: tuple(int(t) for t in s.split(",") if t) if s else ()
    r = lemma_construction(args.case, n=args.n, m=args.m, k=args.k, cycles=ints(args.cycles), paths=ints(args.paths),
                           bound=bounds.subpower_size, max_param=bounds.construction_param)
    payload = {"case": r.case.value, "params": r.params, "size_A": r.size_A, "size_J": r.size_J,
               "quotient_order": r.quotient.order, "target_order": r.target.order, "isomorphic": r.holds,
               "reconstruction": r.reconstruction, "note": r.note}
    _emit(args, payload, r.to_text(tables=args.tables).rstrip())
    return 0 if r.holds else 1


def cmd_verify(args, bounds: Bounds) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = [run_suite(n, bounds) for n in names]
    if args.json:
        print(json.dumps([r.to_json() for r in results], ensure_ascii=False, indent=2))
    else:
        print("\n".join(r.to_text() for r in results))
    return 0 if all(r.passed for r in results) else 1


def cmd_enumerate(args, bounds: Bounds) -> int:
    recs = enumerate_3nilpotent(args.order_max, bound=bounds.enum_order)
    if args.json:
        print(json.dumps([
            {"id": r.class_id, "order": r.order, "annihilators": r.annihilator_count, "si": r.is_si,
             "graph": None if r.graph is None else str(components(r.graph)), "mul": [list(row) for row in r.table]}
            for r in recs
        ], indent=2))
        return 0
    for r in recs:
        g = f" graph {components(r.graph)}" if r.graph is not None else ""
        print(f"{r.class_id} order {r.order} annihilators {r.annihilator_count} {'SI' if r.is_si else 'not SI'}{g}")
    by = {}
    for r in recs:
        by.setdefault(r.order, [0, 0])
        by[r.order][0] += 1
        by[r.order][1] += r.is_si
    print("totals: " + ", ".join(f"order {n}: {c} ({s} SI)" for n, (c, s) in sorted(by.items())))
    return 0


def cmd_separate(args, bounds: Bounds) -> int:
    A, B = read_algebra(args.first), read_algebra(args.second)
    e = find_separating_identity(A, B, max_vars=args.max_vars, max_word_len=args.max_len, max_summands=args.max_sums,
                                 budget=bounds.separation_candidates)
    if e is None:
        _emit(args, {"identity": None}, "no separating identity within bounds")
        return 1
    _emit(args, {"identity": str(e)}, f"{e} holds in {args.first} and fails in {args.second}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flatsr", description="Finite flat semirings, graph semirings and their varieties.")
    p.add_argument("--config", help="file of 'key = value' bounds overrides")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    # the global flags are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build", parents=[common], help="build a semiring from a words/graph/union/named spec")
    s.add_argument("spec")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("check", parents=[common], help="axioms, flatness or full profile")
    s.add_argument("file")
    s.add_argument("what", nargs="?", choices=["axioms", "flat", "profile"], default="profile")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("sat", parents=[common], help="does the algebra satisfy an identity")
    s.add_argument("file")
    s.add_argument("identity")
    s.set_defaults(func=cmd_sat)

    s = sub.add_parser("iso", parents=[common], help="isomorphism test")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("member", parents=[common], help="variety membership, e.g. VN:4, VAC, VI:2,3")
    s.add_argument("file")
    s.add_argument("descriptor")
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("classify", parents=[common], help="position of an acyclic graph semiring in the VPN/VPNPN chain")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("construct", parents=[common], help="run a cyclic-shift subpower construction")
    s.add_argument("case", choices=[c.value for c in Case])
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--cycles", help="comma-separated cycle lengths (P32 cases)")
    s.add_argument("--paths", help="comma-separated path sizes (P32 cases)")
    s.add_argument("--tables", action="store_true", help="also print quotient and target tables")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=list(SUITES) + ["all"])
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", parents=[common], help="3-nilpotent flat semirings up to isomorphism")
    s.add_argument("--order-max", type=int, required=True)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("separate", parents=[common], help="find an identity true in the first algebra and false in the second")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--max-vars", type=int, default=2)
    s.add_argument("--max-len", type=int, default=2)
    s.add_argument("--max-sums", type=int, default=2)
    s.set_defaults(func=cmd_separate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        bounds = load_bounds(args.config) if args.config else DEFAULT_BOUNDS
        return args.func(args, bounds)
    except (FlatsrError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
