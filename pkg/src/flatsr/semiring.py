"""Finite semirings given by Cayley tables, and their structural predicates.

Elements are the indices ``0 .. order-1``.  Nothing is assumed about which
index plays the role of the zero; it is detected from the tables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .config import DEFAULT_BOUNDS
from .errors import InputError, PreconditionError, ResourceError

Table = tuple[tuple[int, ...], ...]

_LABEL_RE = re.compile(r"^\S+$")


def _freeze(table, n: int, which: str) -> Table:
    try:
        rows = tuple(tuple(int(v) for v in row) for row in table)
    except (TypeError, ValueError):
        raise InputError(f"{which} table is not a matrix of integers") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InputError(f"{which} table must be {n}x{n}")
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise InputError(f"{which}[{i}][{j}] = {v} is out of range [0, {n})")
    return rows


@dataclass(frozen=True)
class FiniteSemiring:
    """Two binary operations on ``range(order)`` plus optional labels.

    The axioms are *not* assumed; use :func:`verify_axioms`.
    """

    order: int
    add: Table
    mul: Table
    labels: tuple[str, ...] = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        n = self.order
        if not isinstance(n, int) or n < 1:
            raise InputError(f"order must be a positive integer, got {n!r}")
        object.__setattr__(self, "add", _freeze(self.add, n, "add"))
        object.__setattr__(self, "mul", _freeze(self.mul, n, "mul"))
        labels = tuple(str(x) for x in self.labels) if self.labels else tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise InputError(f"expected {n} labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise InputError("labels must be distinct")
        for lab in labels:
            if not _LABEL_RE.match(lab):
                raise InputError(f"label {lab!r} must be nonempty and contain no whitespace")
        object.__setattr__(self, "labels", labels)

    def __repr__(self):
        return f"FiniteSemiring(name={self.name!r}, order={self.order}, labels={list(self.labels)})"

    @cached_property
    def A(self) -> np.ndarray:
        return np.array(self.add, dtype=np.int32)

    @cached_property
    def M(self) -> np.ndarray:
        return np.array(self.mul, dtype=np.int32)

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise InputError(f"no element labelled {label!r} in {self.name or 'semiring'}") from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def elements(self) -> range:
        return range(self.order)

    def renamed(self, name: str | None) -> "FiniteSemiring":
        return FiniteSemiring(self.order, self.add, self.mul, self.labels, name)

    def with_labels(self, labels: Sequence[str]) -> "FiniteSemiring":
        return FiniteSemiring(self.order, self.add, self.mul, tuple(labels), self.name)

    def permuted(self, perm: Sequence[int]) -> "FiniteSemiring":
        """Isomorphic copy in which old element ``i`` gets index ``perm[i]``."""
        n = self.order
        if sorted(perm) != list(range(n)):
            raise InputError("perm must be a permutation of the element indices")
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        add = [[perm[self.add[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
        mul = [[perm[self.mul[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
        labels = [self.labels[inv[a]] for a in range(n)]
        return FiniteSemiring(n, add, mul, labels, self.name)

    def restrict(self, subset: Iterable[int], name: str | None = None) -> "FiniteSemiring":
        """The subalgebra on ``subset`` (kept in increasing index order)."""
        elems = sorted(set(subset))
        if not elems:
            raise InputError("cannot restrict to an empty subset")
        pos = {e: i for i, e in enumerate(elems)}
        try:
            add = [[pos[self.add[a][b]] for b in elems] for a in elems]
            mul = [[pos[self.mul[a][b]] for b in elems] for a in elems]
        except KeyError as exc:
            raise PreconditionError(f"subset is not closed: produces {exc.args[0]}") from None
        return FiniteSemiring(len(elems), add, mul, [self.labels[e] for e in elems], name)


def trivial_semiring(label: str = "0") -> FiniteSemiring:
    return FiniteSemiring(1, [[0]], [[0]], [label], "trivial")


def direct_product(A: FiniteSemiring, B: FiniteSemiring) -> FiniteSemiring:
    """Coordinatewise product; pair ``(a, b)`` has index ``a * |B| + b``."""
    nb = B.order
    n = A.order * nb
    pairs = [(a, b) for a in range(A.order) for b in range(nb)]
    add = [[A.add[a][c] * nb + B.add[b][d] for (c, d) in pairs] for (a, b) in pairs]
    mul = [[A.mul[a][c] * nb + B.mul[b][d] for (c, d) in pairs] for (a, b) in pairs]
    labels = [f"({A.labels[a]},{B.labels[b]})" for a, b in pairs]
    return FiniteSemiring(n, add, mul, labels, f"{A.name or 'A'}x{B.name or 'B'}")


def is_homomorphism(A: FiniteSemiring, B: FiniteSemiring, f: Sequence[int]) -> bool:
    if len(f) != A.order:
        return False
    for a in range(A.order):
        for b in range(A.order):
            if f[A.add[a][b]] != B.add[f[a]][f[b]] or f[A.mul[a][b]] != B.mul[f[a]][f[b]]:
                return False
    return True


# ---------------------------------------------------------------------------
# axioms

AXIOMS = (
    "add_associative",
    "add_commutative",
    "add_idempotent",
    "mul_associative",
    "left_distributive",
    "right_distributive",
)


@dataclass(frozen=True)
class AxiomReport:
    """Verdict per ai-semiring axiom; a failing axiom carries its least witness."""

    witnesses: dict[str, tuple[int, ...] | None]

    @property
    def ok(self) -> bool:
        return all(w is None for w in self.witnesses.values())

    def holds(self, axiom: str) -> bool:
        return self.witnesses[axiom] is None

    def failures(self) -> list[tuple[str, tuple[int, ...]]]:
        return [(k, w) for k, w in self.witnesses.items() if w is not None]


def _first(mask: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def verify_axioms(S: FiniteSemiring, bound: int = DEFAULT_BOUNDS.axiom_order) -> AxiomReport:
    """Exhaustively check the six ai-semiring axioms.

    Witnesses are the lexicographically least failing tuple: ``(x, y, z)`` for
    associativity and distributivity, ``(x, y)`` for commutativity and
    ``(x,)`` for idempotence.
    """
    n = S.order
    if n > bound:
        raise ResourceError(f"axiom check limited to order <= {bound}, got {n}", n, bound)
    A, M = S.A, S.M
    i, j, k = np.indices((n, n, n))
    p, q = np.indices((n, n))
    w = {
        "add_associative": _first(A[A[i, j], k] != A[i, A[j, k]]),
        "add_commutative": _first(A[p, q] != A[q, p]),
        "add_idempotent": _first(A[np.arange(n), np.arange(n)] != np.arange(n)),
        "mul_associative": _first(M[M[i, j], k] != M[i, M[j, k]]),
        "left_distributive": _first(M[i, A[j, k]] != A[M[i, j], M[i, k]]),
        "right_distributive": _first(M[A[i, j], k] != A[M[i, k], M[j, k]]),
    }
    return AxiomReport(w)


def axiom_witness_fails(S: FiniteSemiring, axiom: str, w: tuple[int, ...]) -> bool:
    """Re-evaluate a witness with plain table lookups (independent of numpy)."""
    a, m = S.add, S.mul
    if axiom == "add_associative":
        x, y, z = w
        return a[a[x][y]][z] != a[x][a[y][z]]
    if axiom == "add_commutative":
        x, y = w
        return a[x][y] != a[y][x]
    if axiom == "add_idempotent":
        (x,) = w
        return a[x][x] != x
    if axiom == "mul_associative":
        x, y, z = w
        return m[m[x][y]][z] != m[x][m[y][z]]
    if axiom == "left_distributive":
        x, y, z = w
        return m[x][a[y][z]] != a[m[x][y]][m[x][z]]
    if axiom == "right_distributive":
        x, y, z = w
        return m[a[x][y]][z] != a[m[x][z]][m[y][z]]
    raise InputError(f"unknown axiom {axiom!r}")


def _require_semiring(S: FiniteSemiring) -> None:
    report = verify_axioms(S)
    if not report.ok:
        name, wit = report.failures()[0]
        raise PreconditionError(f"{S.name or 'input'} is not an ai-semiring: {name} fails at {wit}", wit)


# ---------------------------------------------------------------------------
# flatness, nilpotency, annihilators, ideals


def find_zero(S: FiniteSemiring) -> int | None:
    """The element that is both a multiplicative zero and an additive absorber."""
    A, M = S.A, S.M
    for z in range(S.order):
        if (M[z, :] == z).all() and (M[:, z] == z).all() and (A[:, z] == z).all():
            return z
    return None


def zero_cancellative_witness(S: FiniteSemiring, zero: int) -> tuple[int, int, int, str] | None:
    """Least ``(a, b, c, side)`` with ``ab = ac != 0`` (side 'left') or
    ``ba = ca != 0`` (side 'right') and ``b != c``; ``None`` if 0-cancellative."""
    n, m = S.order, S.mul
    for a in range(n):
        seen_row: dict[int, int] = {}
        seen_col: dict[int, int] = {}
        for b in range(n):
            v = m[a][b]
            if v != zero:
                if v in seen_row:
                    return (a, seen_row[v], b, "left")
                seen_row[v] = b
            v = m[b][a]
            if v != zero:
                if v in seen_col:
                    return (a, seen_col[v], b, "right")
                seen_col[v] = b
    return None


def is_flat_addition(S: FiniteSemiring, zero: int) -> bool:
    return all(S.add[a][b] == (a if a == b else zero) for a in range(S.order) for b in range(S.order))


def nilpotency_class(S: FiniteSemiring, zero: int | None = None) -> int | None:
    """Least ``k`` with ``S^k = {zero}``; ``None`` if the powers never collapse."""
    if zero is None:
        zero = find_zero(S)
        if zero is None:
            return None
    M = S.M
    power = np.ones(S.order, dtype=bool)
    for k in range(1, S.order + 2):
        members = np.flatnonzero(power)
        if len(members) == 1 and members[0] == zero:
            return k
        nxt = np.zeros(S.order, dtype=bool)
        nxt[np.unique(M[members, :])] = True
        power = nxt
    return None


def annihilators(S: FiniteSemiring, zero: int | None = None) -> frozenset[int]:
    if zero is None:
        zero = find_zero(S)
        if zero is None:
            return frozenset()
    M = S.M
    return frozenset(
        w for w in range(S.order) if w != zero and (M[w, :] == zero).all() and (M[:, w] == zero).all()
    )


def is_nil(S: FiniteSemiring, zero: int) -> bool:
    """Every element has some power equal to ``zero``."""
    for a in range(S.order):
        seen, x = set(), a
        while x != zero:
            if x in seen:
                return False
            seen.add(x)
            x = S.mul[x][a]
    return True


def principal_ideal(S: FiniteSemiring, a: int) -> frozenset[int]:
    """Smallest multiplicative ideal containing ``a`` (and the zero)."""
    zero = find_zero(S)
    if zero is None:
        raise PreconditionError("principal ideals need a zero element")
    if a == zero:
        return frozenset([zero])
    m = S.mul
    out = {zero, a}
    left = {m[s][a] for s in range(S.order)}
    out |= left
    out |= {m[a][t] for t in range(S.order)}
    out |= {m[x][t] for x in left for t in range(S.order)}
    return frozenset(out)


def _ideal_sort_key(ideal: frozenset[int]):
    return (len(ideal), tuple(sorted(ideal)))


def multiplicative_ideals(S: FiniteSemiring, bound: int = DEFAULT_BOUNDS.ideal_order) -> list[frozenset[int]]:
    """All multiplicative ideals containing the zero, sorted by size.

    Every such ideal is a union of principal ideals, so the lattice is built
    by closing ``{zero}`` under union with principal ideals.
    """
    if S.order > bound:
        raise ResourceError(f"ideal enumeration limited to order <= {bound}, got {S.order}", S.order, bound)
    zero = find_zero(S)
    if zero is None:
        raise PreconditionError("multiplicative ideals need a zero element")
    principals = sorted({sum(1 << x for x in principal_ideal(S, a)) for a in range(S.order) if a != zero})
    start = 1 << zero
    found = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for ideal in frontier:
            for p in principals:
                u = ideal | p
                if u not in found:
                    found.add(u)
                    nxt.append(u)
        frontier = nxt
    ideals = [frozenset(i for i in range(S.order) if mask >> i & 1) for mask in found]
    return sorted(ideals, key=_ideal_sort_key)


def is_multiplicative_ideal(S: FiniteSemiring, J: Iterable[int]) -> bool:
    J = set(J)
    return all(S.mul[x][j] in J and S.mul[j][x] in J for j in J for x in range(S.order))


def least_nonzero_ideal(S: FiniteSemiring) -> frozenset[int] | None:
    """Intersection of all nonzero principal ideals, if it is itself nonzero."""
    zero = find_zero(S)
    if zero is None or S.order == 1:
        return None
    inter = None
    for a in range(S.order):
        if a == zero:
            continue
        p = principal_ideal(S, a)
        inter = p if inter is None else inter & p
    if inter is None or len(inter) == 1:
        return None
    return frozenset(inter)


def principal_congruence(S: FiniteSemiring, a: int, b: int) -> tuple[int, ...]:
    """Cg(a, b) as a tuple mapping each element to its class minimum."""
    n = S.order
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    work = [(a, b)]
    add, mul = S.add, S.mul
    while work:
        x, y = work.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[max(rx, ry)] = min(rx, ry)
        for s in range(n):
            work.append((add[x][s], add[y][s]))
            work.append((mul[x][s], mul[y][s]))
            work.append((mul[s][x], mul[s][y]))
    return tuple(find(x) for x in range(n))


def is_si_by_congruences(S: FiniteSemiring) -> bool:
    """Subdirect irreducibility straight from the definition (a monolith exists)."""
    n = S.order
    if n == 1:
        return False
    cgs = [principal_congruence(S, a, b) for a in range(n) for b in range(a + 1, n)]
    for x in range(n):
        for y in range(x + 1, n):
            if all(c[x] == c[y] for c in cgs):
                return True
    return False


@dataclass(frozen=True)
class FlatProfile:
    zero: int | None
    is_flat: bool
    is_zero_cancellative: bool
    nilpotency_class: int | None
    annihilators: frozenset[int]
    is_si: bool
    least_nonzero_ideal: frozenset[int] | None


def flat_profile(S: FiniteSemiring) -> FlatProfile:
    """Classify ``S``: zero, flatness, 0-cancellativity, nilpotency, SI.

    For flat ``S`` subdirect irreducibility is read off the ideal lattice
    (congruences and multiplicative ideals correspond); otherwise it is
    decided from principal congruences.
    """
    _require_semiring(S)
    zero = find_zero(S)
    if zero is None:
        return FlatProfile(None, False, False, None, frozenset(), is_si_by_congruences(S), None)
    flat = is_flat_addition(S, zero)
    cancel = zero_cancellative_witness(S, zero) is None
    klass = nilpotency_class(S, zero)
    anns = annihilators(S, zero)
    if flat:
        least = least_nonzero_ideal(S)
        si = least is not None
        if klass is not None:
            # nilpotent flat semirings: SI iff exactly one annihilator
            if si != (len(anns) == 1) or (si and least != frozenset({zero, *anns})):
                raise AssertionError(f"SI cross-check failed for {S.name}: least={least}, anns={anns}")
    else:
        least = None
        si = is_si_by_congruences(S)
    if flat and not cancel:
        raise AssertionError(f"flat semiring {S.name} is not 0-cancellative")
    return FlatProfile(zero, flat, cancel, klass, anns, si, least)


def require_flat(S: FiniteSemiring, what: str = "input") -> FlatProfile:
    prof = flat_profile(S)
    if not prof.is_flat:
        raise PreconditionError(f"{what} ({S.name or 'unnamed'}) is not a flat semiring")
    return prof


# ---------------------------------------------------------------------------
# quotients and subalgebras


def quotient_map(S: FiniteSemiring, J: Iterable[int]) -> tuple[list[int], list[int]]:
    """Collapse ``J`` to one class; returns ``(f, representatives)``."""
    J = set(J)
    keep = [x for x in range(S.order) if x not in J]
    jpos = min(J)
    reps = sorted(keep + [jpos])
    pos = {r: i for i, r in enumerate(reps)}
    f = [pos[jpos] if x in J else pos[x] for x in range(S.order)]
    return f, reps


def quotient_by_absorbing_ideal(S: FiniteSemiring, J: Iterable[int], name: str | None = None) -> FiniteSemiring:
    """``S / J`` where ``J`` absorbs both operations.

    Identifying all of ``J`` and nothing else is then a congruence.  The new
    class is labelled by its sole element, or ``0`` when it has several.
    """
    J = frozenset(J)
    if not J:
        raise InputError("J must be nonempty")
    if not all(0 <= j < S.order for j in J):
        raise InputError("J contains an index out of range")
    for j in sorted(J):
        for x in range(S.order):
            for op, v in (("x*j", S.mul[x][j]), ("j*x", S.mul[j][x]), ("x+j", S.add[x][j])):
                if v not in J:
                    raise PreconditionError(
                        f"J is not absorbing: {op} leaves J for x={S.labels[x]}, j={S.labels[j]}", (x, j, op)
                    )
    f, reps = quotient_map(S, J)
    k = len(reps)
    add = [[f[S.add[a][b]] for b in reps] for a in reps]
    mul = [[f[S.mul[a][b]] for b in reps] for a in reps]
    labels = [S.labels[r] for r in reps]
    if len(J) > 1:
        cls = f[min(J)]
        others = {labels[i] for i in range(k) if i != cls}
        labels[cls] = "0" if "0" not in others else "J"
    Q = FiniteSemiring(k, add, mul, labels, name or (f"{S.name}/J" if S.name else None))
    if not is_homomorphism(S, Q, f):
        raise AssertionError("quotient map is not a homomorphism")
    return Q


def subalgebra_closure(S: FiniteSemiring, gens: Iterable[int]) -> tuple[int, ...]:
    """Least subset containing ``gens`` closed under + and ·, in index order."""
    gens = list(dict.fromkeys(gens))
    if not gens:
        raise InputError("generator set must be nonempty")
    for g in gens:
        if not 0 <= g < S.order:
            raise InputError(f"generator {g} out of range")
    members = list(gens)
    inside = set(gens)
    i = 0
    while i < len(members):
        x = members[i]
        for y in members[: i + 1]:
            for v in (S.add[x][y], S.mul[x][y], S.mul[y][x]):
                if v not in inside:
                    inside.add(v)
                    members.append(v)
        i += 1
    return tuple(sorted(inside))


# ---------------------------------------------------------------------------
# isomorphism


@dataclass(frozen=True)
class IsoCertificate:
    """``mapping[a]`` is the image in B of element ``a`` of A."""

    mapping: tuple[int, ...]

    def compose(self, other: "IsoCertificate") -> "IsoCertificate":
        """First self, then other."""
        return IsoCertificate(tuple(other.mapping[x] for x in self.mapping))

    def inverse(self) -> "IsoCertificate":
        inv = [0] * len(self.mapping)
        for a, b in enumerate(self.mapping):
            inv[b] = a
        return IsoCertificate(tuple(inv))

    def check(self, A: FiniteSemiring, B: FiniteSemiring) -> bool:
        return (
            A.order == B.order
            and sorted(self.mapping) == list(range(B.order))
            and is_homomorphism(A, B, self.mapping)
        )


def _initial_colors(S: FiniteSemiring) -> list[tuple]:
    A, M = S.A, S.M
    n = S.order
    out = []
    for x in range(n):
        out.append((
            int(M[x, x] == x),
            int(A[x, x] == x),
            int((M[x, :] == x).sum()),
            int((M[:, x] == x).sum()),
            int((A[x, :] == x).sum()),
            len(set(M[x, :].tolist())),
            len(set(M[:, x].tolist())),
        ))
    return out


def _refine(algs: list[FiniteSemiring]) -> list[list[int]]:
    """Joint colour refinement; equal colours are necessary for matching."""
    raw = [_initial_colors(S) for S in algs]
    palette = {c: i for i, c in enumerate(sorted({c for r in raw for c in r}))}
    colors = [[palette[c] for c in r] for r in raw]
    nclasses = len(palette)
    while True:
        sigs = []
        for S, col in zip(algs, colors):
            n = S.order
            sig = []
            for x in range(n):
                nb = sorted(
                    (col[y], col[S.mul[x][y]], col[S.mul[y][x]], col[S.add[x][y]]) for y in range(n)
                )
                sig.append((col[x], tuple(nb)))
            sigs.append(sig)
        palette = {s: i for i, s in enumerate(sorted({s for r in sigs for s in r}))}
        colors = [[palette[s] for s in r] for r in sigs]
        if len(palette) == nclasses:
            return colors
        nclasses = len(palette)


def find_isomorphism(A: FiniteSemiring, B: FiniteSemiring) -> IsoCertificate | None:
    """Lexicographically least isomorphism ``A -> B``, or ``None``.

    Backtracking over ``f(0), f(1), ...`` with candidates tried in
    increasing order, pruned by colour refinement and by checking every
    table constraint as soon as its three elements are mapped.
    """
    n = A.order
    if n != B.order:
        return None
    ca, cb = _refine([A, B])
    if sorted(ca) != sorted(cb):
        return None
    za, zb = find_zero(A), find_zero(B)
    flat = (
        za is not None and zb is not None and is_flat_addition(A, za) and is_flat_addition(B, zb)
    )
    ops = [(A.mul, B.mul)] if flat else [(A.mul, B.mul), (A.add, B.add)]

    # preimages[r]: pairs (u, v, op) with u op v == r in A
    preimages: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for k, (oa, _) in enumerate(ops):
        for u in range(n):
            for v in range(n):
                preimages[oa[u][v]].append((u, v, k))

    candidates = [[y for y in range(n) if cb[y] == ca[x]] for x in range(n)]
    if flat:
        candidates[za] = [zb]
    f = [-1] * n
    inv = [-1] * n

    def consistent(x: int, y: int) -> bool:
        for k, (oa, ob) in enumerate(ops):
            for u in range(n):
                fu = y if u == x else f[u]
                if fu < 0:
                    continue
                for r, t in ((oa[x][u], ob[y][fu]), (oa[u][x], ob[fu][y])):
                    fr = y if r == x else f[r]
                    if fr >= 0:
                        if fr != t:
                            return False
                    else:
                        if inv[t] >= 0 or (t == y) or cb[t] != ca[r]:
                            return False
        for u, v, k in preimages[x]:
            fu = y if u == x else f[u]
            fv = y if v == x else f[v]
            if fu >= 0 and fv >= 0 and ops[k][1][fu][fv] != y:
                return False
        return True

    def search(x: int) -> bool:
        if x == n:
            return True
        for y in candidates[x]:
            if inv[y] >= 0 or not consistent(x, y):
                continue
            f[x], inv[y] = y, x
            if search(x + 1):
                return True
            f[x], inv[y] = -1, -1
        return False

    if not search(0):
        return None
    cert = IsoCertificate(tuple(f))
    if not cert.check(A, B):
        raise AssertionError("isomorphism search produced an invalid certificate")
    return cert


def is_isomorphic(A: FiniteSemiring, B: FiniteSemiring) -> bool:
    return find_isomorphism(A, B) is not None


# ---------------------------------------------------------------------------
# text format


def dumps(S: FiniteSemiring) -> str:
    lab = S.labels
    lines = [f"semiring {S.name or 'unnamed'}", f"order {S.order}", "elements " + " ".join(lab), "add"]
    lines += [" ".join(lab[v] for v in row) for row in S.add]
    lines.append("mul")
    lines += [" ".join(lab[v] for v in row) for row in S.mul]
    return "\n".join(lines) + "\n"


def loads(text: str) -> FiniteSemiring:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))

    def expect(pos: int, keyword: str) -> str:
        if pos >= len(lines):
            raise InputError(f"unexpected end of input, expected '{keyword}'")
        lineno, line = lines[pos]
        head, _, rest = line.partition(" ")
        if head != keyword:
            raise InputError(f"line {lineno}: expected '{keyword}', got {line!r}")
        return rest.strip()

    name = expect(0, "semiring") or None
    try:
        n = int(expect(1, "order"))
    except ValueError:
        raise InputError("order must be an integer") from None
    labels = expect(2, "elements").split()
    if len(labels) != n:
        raise InputError(f"expected {n} element labels, got {len(labels)}")
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != n:
        raise InputError("element labels must be distinct")

    def table(start: int, keyword: str):
        if expect(start, keyword):
            raise InputError(f"'{keyword}' must be alone on its line")
        rows = []
        for r in range(n):
            if start + 1 + r >= len(lines):
                raise InputError(f"{keyword} table is truncated")
            lineno, line = lines[start + 1 + r]
            cells = line.split()
            if len(cells) != n:
                raise InputError(f"line {lineno}: expected {n} entries, got {len(cells)}")
            try:
                rows.append([index[c] for c in cells])
            except KeyError as exc:
                raise InputError(f"line {lineno}: unknown element {exc.args[0]!r}") from None
        return rows

    add = table(3, "add")
    mul = table(4 + n, "mul")
    if len(lines) != 5 + 2 * n:
        raise InputError("trailing content after mul table")
    return FiniteSemiring(n, add, mul, labels, None if name == "unnamed" else name)
