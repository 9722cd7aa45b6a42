"""Enumerate 3-nilpotent flat semirings of small order up to isomorphism.

A 3-nilpotent flat semiring splits into the zero, a set W of annihilators
and the rest R.  Every product lands in W or the zero, only products of two
elements of R can be nonzero, and 0-cancellativity says that each row and
each column of the R x R block repeats no nonzero value.  Elements of R
must have at least one nonzero product (otherwise they would annihilate).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .config import DEFAULT_BOUNDS
from .constructors import from_graph
from .errors import InputError, ResourceError
from .graphs import DiGraph, semiring_to_graph
from .semiring import FiniteSemiring, find_isomorphism, flat_profile, verify_axioms

Block = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class EnumerationRecord:
    order: int
    table: Block  # full multiplication table, zero first, then R, then W
    annihilator_count: int
    is_si: bool
    graph: DiGraph | None
    class_id: str

    def semiring(self) -> FiniteSemiring:
        return _algebra(self.order, self.table, self.class_id)


def _rows_ok(block: Block, r: int) -> bool:
    for i in range(r):
        row = [v for v in block[i] if v]
        col = [block[j][i] for j in range(r) if block[j][i]]
        if not row and not col:
            return False
        if len(set(row)) != len(row) or len(set(col)) != len(col):
            return False
    return True


def _canonical(block: Block, r: int, s: int) -> Block:
    """Least relabelling of the block over permutations of R.

    Annihilators are renumbered by first appearance, so permutations of W
    need no separate search.
    """
    best = None
    for perm in itertools.permutations(range(r)):
        rename: dict[int, int] = {0: 0}
        rows = []
        for i in range(r):
            row = []
            for j in range(r):
                v = block[perm[i]][perm[j]]
                if v not in rename:
                    rename[v] = len(rename)
                row.append(rename[v])
            rows.append(tuple(row))
        cand = tuple(rows)
        if best is None or cand < best:
            best = cand
    return best


def _full_table(block: Block, r: int, s: int) -> Block:
    """Embed the R x R block: index 0 is zero, 1..r is R, r+1..r+s is W."""
    n = 1 + r + s
    mul = [[0] * n for _ in range(n)]
    for i in range(r):
        for j in range(r):
            v = block[i][j]
            mul[i + 1][j + 1] = r + v if v else 0
    return tuple(tuple(row) for row in mul)


def _algebra(n: int, mul: Block, name: str | None = None) -> FiniteSemiring:
    add = [[a if a == b else 0 for b in range(n)] for a in range(n)]
    r = sum(1 for x in range(1, n) if any(mul[x]) or any(mul[y][x] for y in range(n)))
    labels = ["0"] + [f"r{i}" for i in range(1, r + 1)] + [f"w{i}" for i in range(1, n - r)]
    return FiniteSemiring(n, add, mul, labels, name)


def enumerate_order(n: int) -> list[EnumerationRecord]:
    """All 3-nilpotent flat semirings of order exactly ``n``, one per class."""
    if n < 1:
        raise InputError("order must be positive")
    if n == 1:
        return [EnumerationRecord(1, ((0,),), 0, False, None, "1.0.0")]
    out = []
    for s in range(1, n):
        r = n - 1 - s
        seen: set[Block] = set()
        if r == 0:
            blocks = [()]
        else:
            blocks = (
                tuple(tuple(cells[i * r:(i + 1) * r]) for i in range(r))
                for cells in itertools.product(range(s + 1), repeat=r * r)
            )
        for block in blocks:
            if r and not _rows_ok(block, r):
                continue
            canon = _canonical(block, r, s) if r else ()
            seen.add(canon)
        for idx, canon in enumerate(sorted(seen)):
            mul = _full_table(canon, r, s)
            out.append(_record(n, mul, s, f"{n}.{s}.{idx}"))
    return out


def _record(n: int, mul: Block, s: int, cid: str) -> EnumerationRecord:
    S = _algebra(n, mul, cid)
    if not verify_axioms(S).ok:
        raise AssertionError(f"enumerated table {cid} is not a semiring")
    prof = flat_profile(S)
    if not prof.is_flat or prof.nilpotency_class is None or prof.nilpotency_class > 3:
        raise AssertionError(f"enumerated table {cid} is not a 3-nilpotent flat semiring")
    if len(prof.annihilators) != s:
        raise AssertionError(f"{cid}: expected {s} annihilators, found {len(prof.annihilators)}")
    graph = None
    if prof.is_si:
        graph, cert = semiring_to_graph(S, with_certificate=True)
        graph = DiGraph(graph.vertices, graph.edges, graph.allow_isolated, cid)
    return EnumerationRecord(n, mul, s, prof.is_si, graph, cid)


def enumerate_3nilpotent(order_max: int, bound: int = DEFAULT_BOUNDS.enum_order) -> list[EnumerationRecord]:
    """Records for every order ``1 .. order_max``, pairwise non-isomorphic."""
    if order_max > bound:
        raise ResourceError(f"order {order_max} exceeds the enumeration bound {bound}", order_max, bound)
    out = []
    for n in range(1, order_max + 1):
        out += enumerate_order(n)
    return out


def check_records(records: list[EnumerationRecord]) -> list[str]:
    """Problems found when re-checking records; empty when all is well.

    Checks pairwise non-isomorphism within each order and, for every record,
    that SI, a unique annihilator and a graph match all coincide.
    """
    problems = []
    by_order: dict[int, list[EnumerationRecord]] = {}
    for rec in records:
        by_order.setdefault(rec.order, []).append(rec)
    for n, recs in by_order.items():
        algs = [r.semiring() for r in recs]
        for i, j in itertools.combinations(range(len(algs)), 2):
            if find_isomorphism(algs[i], algs[j]) is not None:
                problems.append(f"{recs[i].class_id} and {recs[j].class_id} are isomorphic")
    for rec in records:
        S = rec.semiring()
        unique = rec.annihilator_count == 1
        if rec.order == 1:
            continue
        try:
            G = semiring_to_graph(S)
            matched = find_isomorphism(from_graph(G), S) is not None
        except Exception:
            matched = False
        if not (rec.is_si == unique == matched):
            problems.append(f"{rec.class_id}: si={rec.is_si} unique_annihilator={unique} graph_match={matched}")
    return problems
