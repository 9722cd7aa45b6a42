"""Concrete flat semirings: word algebras, graph algebras, unions, S7."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .config import DEFAULT_BOUNDS
from .errors import InputError, PreconditionError, ResourceError
from .graphs import DiGraph, cycle_graph, path_graph, require_valid
from .semiring import (
    FiniteSemiring,
    annihilators,
    flat_profile,
    is_homomorphism,
    is_nil,
    require_flat,
    verify_axioms,
)

ZERO = "0"
OMEGA = "ω"


def _flat_add(n: int, zero: int) -> list[list[int]]:
    return [[a if a == b else zero for b in range(n)] for a in range(n)]


# ---------------------------------------------------------------------------
# word semirings S(W) and S_c(W)

_WORD_RE = re.compile(r"([A-Za-z])(?:\^(\d+))?")


@dataclass(frozen=True)
class WordSetSpec:
    """A finite set of words over single-letter generators.

    Ordered words are tuples of generator names.  In commutative mode each
    word is an exponent vector over ``alphabet``.
    """

    alphabet: tuple[str, ...]
    words: frozenset[tuple]
    commutative: bool = False

    def __post_init__(self):
        if not self.words:
            raise InputError("word set must be nonempty")
        if any(not any(w) if self.commutative else not w for w in self.words):
            raise InputError("words must be nonempty")


def parse_word(text: str) -> tuple[str, ...]:
    """``"a^2b"`` -> ``("a", "a", "b")``."""
    out: list[str] = []
    pos = 0
    while pos < len(text):
        m = _WORD_RE.match(text, pos)
        if not m:
            raise InputError(f"bad word {text!r} at position {pos}")
        k = int(m.group(2) or 1)
        if k < 1:
            raise InputError(f"exponent must be at least 1 in {text!r}")
        out += [m.group(1)] * k
        pos = m.end()
    if not out:
        raise InputError("empty word")
    return tuple(out)


def word_set(words: Iterable[str | Sequence[str]], commutative: bool = False) -> WordSetSpec:
    seqs = [parse_word(w) if isinstance(w, str) else tuple(w) for w in words]
    alphabet = tuple(sorted({g for w in seqs for g in w}))
    if commutative:
        stored = frozenset(tuple(w.count(g) for g in alphabet) for w in seqs)
    else:
        stored = frozenset(seqs)
    return WordSetSpec(alphabet, stored, commutative)


def parse_words_spec(text: str) -> WordSetSpec:
    """Parse ``words [commutative] w1 w2 ...``."""
    toks = text.split("#", 1)[0].split()
    if not toks or toks[0] != "words":
        raise InputError("word-set spec must start with 'words'")
    toks = toks[1:]
    commutative = bool(toks) and toks[0] == "commutative"
    if commutative:
        toks = toks[1:]
    if not toks:
        raise InputError("word set must be nonempty")
    return word_set(toks, commutative)


def format_word(w: Sequence[str]) -> str:
    return "".join(g if len(run) == 1 else f"{g}^{len(run)}" for g, run in ((g, list(r)) for g, r in itertools.groupby(w)))


def _exp_label(vec: Sequence[int], alphabet: Sequence[str]) -> str:
    return "".join(g if k == 1 else f"{g}^{k}" for g, k in zip(alphabet, vec) if k)


def from_words(spec: WordSetSpec, bound: int = DEFAULT_BOUNDS.words_order, name: str | None = None) -> FiniteSemiring:
    """S(W), or S_c(W) in commutative mode.

    The elements are the nonempty subwords of W plus a zero; a product is
    the concatenation when that is again a subword, and zero otherwise.
    """
    if spec.commutative:
        subs = set()
        for w in spec.words:
            for v in itertools.product(*(range(k + 1) for k in w)):
                if any(v):
                    subs.add(v)
        elems = sorted(subs, key=lambda v: (sum(v), [-k for k in v]))
        labels = [_exp_label(v, spec.alphabet) for v in elems]
        concat = lambda u, v: tuple(a + b for a, b in zip(u, v))
    else:
        subs = {w[i:j] for w in spec.words for i in range(len(w)) for j in range(i + 1, len(w) + 1)}
        elems = sorted(subs, key=lambda w: (len(w), w))
        labels = [format_word(w) for w in elems]
        concat = lambda u, v: u + v
    n = len(elems) + 1
    if n > bound:
        raise ResourceError(f"S(W) would have {n} elements, bound is {bound}", n, bound)
    pos = {w: i + 1 for i, w in enumerate(elems)}
    mul = [[0] * n for _ in range(n)]
    for u, v in itertools.product(elems, repeat=2):
        mul[pos[u]][pos[v]] = pos.get(concat(u, v), 0)
    if name is None:
        maximal = sorted(labels[pos[w] - 1] for w in spec.words)
        name = ("S_c" if spec.commutative else "S") + "(" + ",".join(maximal) + ")"
    return FiniteSemiring(n, _flat_add(n, 0), mul, [ZERO] + labels, name)


def words_semiring(*words: str, commutative: bool = False) -> FiniteSemiring:
    return from_words(word_set(words, commutative))


# ---------------------------------------------------------------------------
# graph semirings


def from_graph(G: DiGraph, name: str | None = None) -> FiniteSemiring:
    """S_G: vertices plus 0 and ω, with ``xy = ω`` exactly on edges."""
    require_valid(G)
    for v in G.vertices:
        if v in (ZERO, OMEGA):
            raise InputError(f"vertex name {v!r} is reserved")
    n = len(G.vertices) + 2
    pos = {v: i + 2 for i, v in enumerate(G.vertices)}
    mul = [[0] * n for _ in range(n)]
    for a, b in G.edges:
        mul[pos[a]][pos[b]] = 1
    return FiniteSemiring(n, _flat_add(n, 0), mul, (ZERO, OMEGA) + G.vertices, name or (f"S_{G.name}" if G.name else None))


def path_semiring(m: int) -> FiniteSemiring:
    if m < 2:
        raise InputError(f"path semiring needs m >= 2, got {m}")
    return from_graph(path_graph(m))


def cycle_semiring(n: int) -> FiniteSemiring:
    if n < 1:
        raise InputError(f"cycle semiring needs n >= 1, got {n}")
    return from_graph(cycle_graph(n))


# ---------------------------------------------------------------------------
# unions


def _union_labels(parts_labels: list[list[str]], reserved: set[str]) -> list[list[str]]:
    flat = [lab for labs in parts_labels for lab in labs]
    if len(set(flat)) == len(flat) and not reserved & set(flat):
        return parts_labels
    return [[f"{lab}_{i}" for lab in labs] for i, labs in enumerate(parts_labels, 1)]


def zero_direct_union(parts: Sequence[FiniteSemiring], return_embeddings: bool = False, name: str | None = None):
    """Disjoint union of flat semirings glued along their zeros.

    Products and sums across different parts are zero.  With
    ``return_embeddings`` the result is ``(U, maps)`` where ``maps[i][x]``
    is the image of element ``x`` of part ``i``.
    """
    if not parts:
        raise InputError("need at least one part")
    zeros = []
    for i, P in enumerate(parts, 1):
        zeros.append(require_flat(P, f"part {i}").zero)
    nonzero = [[x for x in P.elements() if x != z] for P, z in zip(parts, zeros)]
    labels = _union_labels([[P.labels[x] for x in nz] for P, nz in zip(parts, nonzero)], {ZERO})
    maps = []
    offset = 1
    for P, z, nz in zip(parts, zeros, nonzero):
        f = [0] * P.order
        for k, x in enumerate(nz):
            f[x] = offset + k
        maps.append(f)
        offset += len(nz)
    n = offset
    mul = [[0] * n for _ in range(n)]
    for P, f, nz in zip(parts, maps, nonzero):
        for x in nz:
            for y in nz:
                mul[f[x]][f[y]] = f[P.mul[x][y]]
    U = FiniteSemiring(
        n, _flat_add(n, 0), mul, [ZERO] + [lab for labs in labels for lab in labs],
        name or " ⊔ ".join(P.name or "?" for P in parts),
    )
    for P, f in zip(parts, maps):
        if not is_homomorphism(P, U, f):
            raise AssertionError("part does not embed in the 0-direct union")
    return (U, maps) if return_embeddings else U


def _omega(P: FiniteSemiring, i: int) -> tuple[int, int]:
    prof = flat_profile(P)
    if not prof.is_flat:
        raise PreconditionError(f"part {i} ({P.name or 'unnamed'}) is not flat", i)
    if not is_nil(P, prof.zero):
        raise PreconditionError(f"part {i} ({P.name or 'unnamed'}) is not nil", i)
    if not prof.is_si:
        raise PreconditionError(f"part {i} ({P.name or 'unnamed'}) is not subdirectly irreducible", i)
    (omega,) = prof.annihilators
    return prof.zero, omega


def omega_direct_union(parts: Sequence[FiniteSemiring], return_embeddings: bool = False, name: str | None = None):
    """Union of SI flat nil semirings glued along both 0 and ω."""
    if not parts:
        raise InputError("need at least one part")
    marks = [_omega(P, i) for i, P in enumerate(parts, 1)]
    rest = [[x for x in P.elements() if x not in zo] for P, zo in zip(parts, marks)]
    labels = _union_labels([[P.labels[x] for x in r] for P, r in zip(parts, rest)], {ZERO, OMEGA})
    maps = []
    offset = 2
    for P, (z, w), r in zip(parts, marks, rest):
        f = [0] * P.order
        f[w] = 1
        for k, x in enumerate(r):
            f[x] = offset + k
        maps.append(f)
        offset += len(r)
    n = offset
    mul = [[0] * n for _ in range(n)]
    for P, f, r in zip(parts, maps, rest):
        for x in r:
            for y in r:
                mul[f[x]][f[y]] = f[P.mul[x][y]]
    U = FiniteSemiring(
        n, _flat_add(n, 0), mul, [ZERO, OMEGA] + [lab for labs in labels for lab in labs],
        name or "∘".join(P.name or "?" for P in parts),
    )
    for P, f in zip(parts, maps):
        if not is_homomorphism(P, U, f):
            raise AssertionError("part does not embed in the {0,ω}-direct union")
    prof = flat_profile(U)
    if not prof.is_si or prof.annihilators != {1}:
        raise AssertionError("{0,ω}-direct union is not subdirectly irreducible")
    return (U, maps) if return_embeddings else U


# ---------------------------------------------------------------------------
# S7 and flat extensions


def s7() -> FiniteSemiring:
    """The three-element flat semiring {∞, a, 1} with a² = ∞ and 1 an identity."""
    inf, a, one = 0, 1, 2
    mul = [
        [inf, inf, inf],
        [inf, inf, a],
        [inf, a, one],
    ]
    return FiniteSemiring(3, _flat_add(3, inf), mul, ("∞", "a", "1"), "S7")


def cancellativity_witness(table: Sequence[Sequence[int]]) -> tuple[int, int, int, str] | None:
    """``(a, b, c, side)`` with ``b != c`` and ``ab = ac`` (left) or ``ba = ca`` (right)."""
    n = len(table)
    for a in range(n):
        for b in range(n):
            for c in range(b + 1, n):
                if table[a][b] == table[a][c]:
                    return a, b, c, "left"
                if table[b][a] == table[c][a]:
                    return a, b, c, "right"
    return None


def flat_extension(table: Sequence[Sequence[int]], labels: Sequence[str] | None = None, name: str | None = None) -> FiniteSemiring:
    """Adjoin a zero to a finite cancellative semigroup and make + flat."""
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise InputError("semigroup table must be a nonempty square matrix")
    if any(not 0 <= v < n for row in table for v in row):
        raise InputError("semigroup table entry out of range")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise InputError(f"semigroup table is not associative at ({a}, {b}, {c})")
    w = cancellativity_witness(table)
    if w is not None:
        a, b, c, side = w
        raise PreconditionError(f"semigroup is not cancellative: {side} multiplication by {a} identifies {b} and {c}", w)
    labels = list(labels) if labels else [f"s{i}" for i in range(n)]
    N = n + 1
    mul = [[0] * N for _ in range(N)]
    for a in range(n):
        for b in range(n):
            mul[a + 1][b + 1] = table[a][b] + 1
    S = FiniteSemiring(N, _flat_add(N, 0), mul, [ZERO] + labels, name)
    if not verify_axioms(S).ok:
        raise AssertionError("flat extension failed the semiring axioms")
    return S


def cyclic_group_table(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def maximal_word_labels(S: FiniteSemiring) -> set[str]:
    """Labels of the annihilators other than zero."""
    return {S.labels[x] for x in annihilators(S)}
