"""Subalgebras of direct powers and the zero-coordinate quotient.

The pattern is always the same: take generators in ``T^m`` (usually the
cyclic shifts of a few tuples), close them under the coordinatewise
operations, collapse every tuple with a zero coordinate to a single zero,
and compare the quotient with a target algebra.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Sequence

from .config import DEFAULT_BOUNDS
from .constructors import cycle_semiring, omega_direct_union, path_semiring
from .errors import InputError, PreconditionError, ResourceError
from .semiring import (
    FiniteSemiring,
    IsoCertificate,
    dumps,
    find_isomorphism,
    find_zero,
    verify_axioms,
)

Tup = tuple[int, ...]


def cyclic_shift(t: Sequence, j: int = 1) -> tuple:
    """Right cyclic shift applied ``j`` times: ``(x1..xm) -> (xm, x1..x(m-1))``."""
    t = tuple(t)
    if not t:
        return t
    j %= len(t)
    return t[len(t) - j:] + t[: len(t) - j]


def shift_orbit(t: Sequence, count: int | None = None) -> list[tuple]:
    """``σ^1 t, ..., σ^count t`` (``count`` defaults to the tuple length)."""
    count = len(t) if count is None else count
    return [cyclic_shift(t, j) for j in range(1, count + 1)]


@dataclass
class TupleAlgebra:
    """Subalgebra of ``base^m`` stored as an explicit list of tuples."""

    base: FiniteSemiring
    m: int
    elements: list[Tup]
    generators: list[Tup] = field(default_factory=list)

    def __len__(self):
        return len(self.elements)

    def label(self, t: Tup) -> str:
        return "(" + ",".join(self.base.labels[x] for x in t) + ")"

    def add(self, s: Tup, t: Tup) -> Tup:
        A = self.base.add
        return tuple(A[x][y] for x, y in zip(s, t))

    def mul(self, s: Tup, t: Tup) -> Tup:
        M = self.base.mul
        return tuple(M[x][y] for x, y in zip(s, t))

    def to_semiring(self, bound: int = DEFAULT_BOUNDS.axiom_order) -> FiniteSemiring:
        """Materialize the Cayley tables (only for small subpowers)."""
        n = len(self.elements)
        if n > bound:
            raise ResourceError(f"subpower has {n} elements, bound is {bound}", n, bound)
        pos = {t: i for i, t in enumerate(self.elements)}
        add = [[pos[self.add(s, t)] for t in self.elements] for s in self.elements]
        mul = [[pos[self.mul(s, t)] for t in self.elements] for s in self.elements]
        return FiniteSemiring(n, add, mul, [self.label(t) for t in self.elements])


def generate_subpower(
    base: FiniteSemiring, m: int, generators: Sequence[Sequence[int]], bound: int = DEFAULT_BOUNDS.subpower_size
) -> TupleAlgebra:
    """Worklist closure of ``generators`` under coordinatewise + and ·.

    Elements are kept in insertion order, generators first.
    """
    gens = [tuple(g) for g in generators]
    if not gens:
        raise InputError("generator list must be nonempty")
    for g in gens:
        if len(g) != m or not all(0 <= x < base.order for x in g):
            raise InputError(f"generator {g} is not an element of the {m}-th power")
    A, M = base.add, base.mul
    members: list[Tup] = list(dict.fromkeys(gens))
    inside = set(members)
    i = 0
    while i < len(members):
        x = members[i]
        for y in members[: i + 1]:
            for v in (
                tuple(A[a][b] for a, b in zip(x, y)),
                tuple(M[a][b] for a, b in zip(x, y)),
                tuple(M[b][a] for a, b in zip(x, y)),
            ):
                if v not in inside:
                    inside.add(v)
                    members.append(v)
                    if len(members) > bound:
                        raise ResourceError(f"subpower closure exceeds {bound} elements", len(members), bound)
        i += 1
    return TupleAlgebra(base, m, members, gens)


def zero_ideal(A: TupleAlgebra) -> list[Tup]:
    zero = find_zero(A.base)
    if zero is None:
        raise PreconditionError("base has no zero element")
    return [t for t in A.elements if zero in t]


def zero_coordinate_collapse(A: TupleAlgebra, name: str | None = None) -> FiniteSemiring:
    """``A / J`` where ``J`` is the set of tuples with a zero coordinate.

    ``J`` absorbs both operations whenever the base zero does, which holds
    for every flat base.  The tables are built on the complement of ``J``
    plus one class, so ``A`` itself is never tabulated.
    """
    base = A.base
    zero = find_zero(base)
    if zero is None:
        raise PreconditionError("base has no zero element")
    for x in base.elements():
        if base.add[x][zero] != zero or base.add[zero][x] != zero:
            raise PreconditionError(f"zero of the base does not absorb addition at {base.labels[x]}", x)
    rest = [t for t in A.elements if zero not in t]
    if len(rest) == len(A.elements):
        elems, jcls = rest, None
    else:
        elems, jcls = rest + [None], len(rest)
    pos = {t: i for i, t in enumerate(rest)}

    def cls(t: Tup) -> int:
        if zero in t:
            return jcls
        return pos[t]

    n = len(elems)
    add = [[0] * n for _ in range(n)]
    mul = [[0] * n for _ in range(n)]
    for i, s in enumerate(elems):
        for j, t in enumerate(elems):
            if s is None or t is None:
                add[i][j] = mul[i][j] = jcls
            else:
                add[i][j] = cls(A.add(s, t))
                mul[i][j] = cls(A.mul(s, t))
    labels = [A.label(t) for t in rest] + (["0"] if jcls is not None else [])
    return FiniteSemiring(n, add, mul, labels, name)


# ---------------------------------------------------------------------------
# the constructions


class Case(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    P32i = "P32i"
    P32ii = "P32ii"


# smallest admissible parameters; a missing key means the case ignores it
LOWER_BOUNDS = {
    Case.I: {"n": 2, "m": 2},
    Case.II: {"n": 2, "m": 2},
    Case.III: {"m": 2},
    Case.IV: {"n": 2, "m": 2},
    Case.V: {"n": 2, "m": 2, "k": 1},
    Case.P32i: {"m": 2},
    Case.P32ii: {"m": 1},
}


@dataclass
class ConstructionReport:
    case: Case
    params: dict
    base: FiniteSemiring
    exponent: int
    generators: list[str]
    size_A: int
    size_J: int
    quotient: FiniteSemiring
    target: FiniteSemiring
    iso: IsoCertificate | None
    elapsed: float
    reconstruction: bool = False
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.iso is not None

    def to_text(self, tables: bool = False) -> str:
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [
            f"construction {self.case.value} {ps}".rstrip(),
            f"base {self.base.name} order {self.base.order} exponent {self.exponent}",
            f"generators {len(self.generators)}: " + " ".join(self.generators),
            f"|A| = {self.size_A}  |J| = {self.size_J}  |A/J| = {self.quotient.order}",
            f"target {self.target.name} order {self.target.order}",
        ]
        if self.iso is not None:
            pairs = " ".join(f"{self.quotient.labels[a]}->{self.target.labels[b]}" for a, b in enumerate(self.iso.mapping))
            lines.append("isomorphic: yes")
            lines.append("map " + pairs)
        else:
            lines.append("isomorphic: NO")
        if self.reconstruction:
            lines.append("generator family: reconstruction")
        if self.note:
            lines.append("note: " + self.note)
        if tables:
            lines += ["", dumps(self.quotient.renamed("quotient")).rstrip(), "", dumps(self.target.renamed("target")).rstrip()]
        return "\n".join(lines) + "\n"


def _union_copies(part: FiniteSemiring, m: int) -> FiniteSemiring:
    if m == 1:
        return part
    return omega_direct_union([part] * m, name=f"∪{m}({part.name})")


def _vertex_names(S: FiniteSemiring) -> list[int]:
    return [x for x in S.elements() if S.labels[x] not in ("0", "ω")]


def _check_params(case: Case, params: dict, high: int) -> None:
    for key, low in LOWER_BOUNDS[case].items():
        v = params.get(key)
        if v is None:
            raise InputError(f"case {case.value} needs parameter {key}")
        if v < low:
            raise InputError(f"case {case.value} needs {key} >= {low}, got {v}")
        if v > high:
            raise ResourceError(f"{key} = {v} exceeds the parameter bound {high}", v, high)


def _cycles_then_paths(cycles: Sequence[int], paths: Sequence[int]):
    """Parts of a graph semiring: cycle algebras, then path algebras."""
    parts = [cycle_semiring(c) for c in sorted(cycles)] + [path_semiring(p) for p in sorted(paths)]
    if not parts:
        raise InputError("need at least one cycle length or path size")
    return parts


def lemma_construction(
    case: Case | str,
    n: int | None = None,
    m: int | None = None,
    k: int | None = None,
    cycles: Sequence[int] = (),
    paths: Sequence[int] = (),
    bound: int = DEFAULT_BOUNDS.subpower_size,
    max_param: int = DEFAULT_BOUNDS.construction_param,
) -> ConstructionReport:
    """Run one of the cyclic-shift constructions and compare with its target.

    ``I``     T = S_pn ∘ S_pn (copies a, b), gens σ^j(a_i, b_i, .., b_i); target ∪^m S_pn.
    ``II``    T = S_p(n+1), gens (a_i, .., a_i) and σ^j(a_i, a_(i+1), .., a_(i+1));
              target S_p(n+1) ∘ ∪^m S_pn.
    ``III``   T = S_c1 ∘ S_c1 (copies a, b), gens σ^j(a, b, .., b); target ∪^m S_c1.
    ``IV``    T = S_cn, gens σ^j(a_i, a_(i+1), .., a_(i+1)); target ∪^m S_cn.
    ``V``     T = S_ck ∘ S_pn, gens σ^j(a_(i mod k), b_i, .., b_i); target ∪^m S_pn.
    ``P32i``  G = cycles ∘ paths with no loop; T = G ∘ P' where P' copies the
              path part; cycle vertices use σ^j(v, succ v, ..), path vertices
              σ^j(v, v', ..); tuples have length max(m, 3); target ∪^m G.
    ``P32ii`` G = cycles ∘ paths containing a loop; T = S_c1(e) ∘ G, gens
              σ^j(v, e, .., e) for every vertex v of G; target ∪^m G.
    """
    case = Case(case)
    params = {key: val for key, val in (("n", n), ("m", m), ("k", k)) if key in LOWER_BOUNDS[case]}
    if case in (Case.P32i, Case.P32ii):
        params["cycles"] = ",".join(map(str, sorted(cycles))) or "-"
        params["paths"] = ",".join(map(str, sorted(paths))) or "-"
    _check_params(case, {"n": n, "m": m, "k": k}, max_param)
    t0 = time.perf_counter()
    reconstruction = False
    exponent = m

    if case is Case.I:
        P = path_semiring(n)
        T, (fa, fb) = omega_direct_union([P, P], return_embeddings=True)
        verts = _vertex_names(P)
        gens = [g for i in range(n) for g in shift_orbit((fa[verts[i]],) + (fb[verts[i]],) * (m - 1))]
        target = _union_copies(P, m)
    elif case is Case.II:
        T = path_semiring(n + 1)
        a = _vertex_names(T)
        gens = [(a[i],) * m for i in range(n + 1)]
        gens += [g for i in range(n) for g in shift_orbit((a[i],) + (a[i + 1],) * (m - 1))]
        target = omega_direct_union([T, _union_copies(path_semiring(n), m)], name=f"S_p{n + 1}∘∪{m}(S_p{n})")
    elif case is Case.III:
        C = cycle_semiring(1)
        T, (fa, fb) = omega_direct_union([C, C], return_embeddings=True)
        (v,) = _vertex_names(C)
        gens = shift_orbit((fa[v],) + (fb[v],) * (m - 1))
        target = _union_copies(C, m)
    elif case is Case.IV:
        T = cycle_semiring(n)
        a = _vertex_names(T)
        gens = [g for i in range(n) for g in shift_orbit((a[i],) + (a[(i + 1) % n],) * (m - 1))]
        target = _union_copies(T, m)
    elif case is Case.V:
        C, P = cycle_semiring(k), path_semiring(n)
        T, (fa, fb) = omega_direct_union([C, P], return_embeddings=True)
        a, b = _vertex_names(C), _vertex_names(P)
        gens = [g for i in range(n) for g in shift_orbit((fa[a[i % k]],) + (fb[b[i]],) * (m - 1))]
        target = _union_copies(P, m)
    elif case is Case.P32i:
        reconstruction = True
        if 1 in cycles:
            raise InputError("P32i needs a cycle set without 1 (use P32ii)")
        if 1 in paths:
            raise InputError("path sizes must be at least 2")
        cparts = [cycle_semiring(c) for c in sorted(cycles)]
        pparts = [path_semiring(p) for p in sorted(paths)]
        G = omega_direct_union(cparts + pparts) if cparts or pparts else None
        if G is None:
            raise InputError("need at least one cycle length or path size")
        T, maps = omega_direct_union(cparts + pparts + pparts, return_embeddings=True)
        exponent = max(m, 3)
        gens = []
        for ci, Cp in enumerate(cparts):
            f = maps[ci]
            vs = _vertex_names(Cp)
            for i, v in enumerate(vs):
                gens += shift_orbit((f[v],) + (f[vs[(i + 1) % len(vs)]],) * (exponent - 1), m)
        for pi, Pp in enumerate(pparts):
            f, g = maps[len(cparts) + pi], maps[len(cparts) + len(pparts) + pi]
            for v in _vertex_names(Pp):
                gens += shift_orbit((f[v],) + (g[v],) * (exponent - 1), m)
        target = _union_copies(G, m)
    else:  # P32ii
        reconstruction = True
        if 1 not in cycles:
            raise InputError("P32ii needs 1 in the cycle set")
        if 1 in paths:
            raise InputError("path sizes must be at least 2")
        G = omega_direct_union(_cycles_then_paths(cycles, paths))
        E = cycle_semiring(1)
        T, (fe, fg) = omega_direct_union([E, G], return_embeddings=True)
        (e,) = _vertex_names(E)
        gens = [t for v in _vertex_names(G) for t in shift_orbit((fg[v],) + (fe[e],) * (m - 1))]
        target = _union_copies(G, m)

    A = generate_subpower(T, exponent, gens, bound)
    size_J = len(zero_ideal(A))
    Q = zero_coordinate_collapse(A, name=f"A/J[{case.value}]")
    iso = find_isomorphism(Q, target)
    for alg in (Q, target):
        if alg.order <= DEFAULT_BOUNDS.axiom_order and not verify_axioms(alg).ok:
            raise AssertionError(f"{alg.name} fails the semiring axioms")
    note = ""
    if iso is None:
        note = f"quotient has order {Q.order}, target has order {target.order}"
        distinct = len(set(gens))
        if distinct < len(gens):
            note += f"; only {distinct} of the {len(gens)} generators are distinct"
    return ConstructionReport(
        case, params, T, exponent, [A.label(g) for g in A.generators], len(A), size_J, Q, target, iso,
        time.perf_counter() - t0, reconstruction, note,
    )
