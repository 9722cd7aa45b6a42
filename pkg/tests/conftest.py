import functools
import itertools
import random
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from flatsr.constructors import (
    cycle_semiring, flat_extension, cyclic_group_table, omega_direct_union, path_semiring, s7,
    words_semiring, from_graph, zero_direct_union,
)
from flatsr.graphs import graphs_up_to_iso
from flatsr.enumerate import enumerate_3nilpotent
from flatsr.semiring import FiniteSemiring, direct_product, subalgebra_closure
from flatsr.subpower import Case, lemma_construction
from flatsr.terms import Identity, Term


# ---------------------------------------------------------------------------
# acceptance lines are echoed in the terminal summary so they show up in logs

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


# ---------------------------------------------------------------------------
# independent oracles (plain Python, no numpy evaluation path)


def naive_value(t: Term, S: FiniteSemiring, a) -> int:
    total = None
    for w in t.words:
        r = a[w[0]]
        for v in w[1:]:
            r = S.mul[r][a[v]]
        total = r if total is None else S.add[total][r]
    return total


def naive_satisfies(S: FiniteSemiring, e: Identity):
    """Least failing assignment in lexicographic order, or None."""
    for a in itertools.product(range(S.order), repeat=e.var_count):
        if naive_value(e.lhs, S, a) != naive_value(e.rhs, S, a):
            return a
    return None


def flat_semiring_tables_naive(n: int) -> list[tuple]:
    """Every 3-nilpotent flat multiplication on {0..n-1} with zero 0, one per
    isomorphism class.  Brute force over all (n-1)^2 cells; orders <= 4."""
    if n == 1:
        return [((0,),)]
    k = n - 1
    cells = np.array(list(itertools.product(range(n), repeat=k * k)), dtype=np.int8)
    N = len(cells)
    T = np.zeros((N, n, n), dtype=np.int8)
    T[:, 1:, 1:] = cells.reshape(N, k, k)
    b = np.arange(N)[:, None, None, None]
    x = np.arange(n)[None, :, None, None]
    y = np.arange(n)[None, None, :, None]
    z = np.arange(n)[None, None, None, :]
    xy = T[b, x, y]
    yz = T[b, y, z]
    assoc = (T[b, xy, z] == T[b, x, yz]).all(axis=(1, 2, 3))
    nil3 = (T[b, xy, z] == 0).all(axis=(1, 2, 3))
    # distributivity with the flat addition: y + z is y when y == z, else 0
    ysum = np.where(y == z, y, 0)
    left = T[b, x, ysum]
    xz = T[b, x, z]
    ldist = (left == np.where(xy == xz, xy, 0)).all(axis=(1, 2, 3))
    xsum = np.where(x == y, x, 0)
    right = T[b, xsum, z]
    xz, yz = T[b, x, z], T[b, y, z]
    rdist = (right == np.where(xz == yz, xz, 0)).all(axis=(1, 2, 3))
    keep = T[assoc & nil3 & ldist & rdist]
    seen = set()
    for tab in keep:
        best = None
        for perm in itertools.permutations(range(1, n)):
            p = (0,) + perm
            inv = [0] * n
            for i, v in enumerate(p):
                inv[v] = i
            cand = tuple(tuple(inv[tab[p[i], p[j]]] for j in range(n)) for i in range(n))
            if best is None or cand < best:
                best = cand
        seen.add(best)
    return sorted(seen)


# ---------------------------------------------------------------------------
# a corpus of algebras for the property suites


def random_identity(rng: random.Random, max_vars: int = 3, max_len: int = 3, max_sums: int = 3) -> Identity:
    nv = rng.randint(1, max_vars)

    def term():
        words = {tuple(rng.randrange(nv) for _ in range(rng.randint(1, max_len))) for _ in range(rng.randint(1, max_sums))}
        return Term(tuple(sorted(words)))

    lhs, rhs = term(), term()
    while rhs == lhs:
        rhs = term()
    return Identity(lhs, rhs, tuple(f"x{i}" for i in range(nv)))


WORD_SETS = [
    ("a",), ("a^2",), ("a^3",), ("ab",), ("a^2b",), ("aba",), ("abc",), ("ab", "ba"),
    ("a^2", "b^2"), ("ab", "c"), ("abab",), ("a^2b^2",), ("abc", "cb"), ("a^4",), ("ab", "bc"),
]


def _three_nilpotent_semigroups(rng: random.Random, count: int):
    """Random 3-nilpotent semigroup tables with zero 0; rarely 0-cancellative."""
    out = []
    for _ in range(count):
        r, s = rng.randint(1, 3), rng.randint(1, 2)
        n = 1 + r + s
        mul = [[0] * n for _ in range(n)]
        for i in range(1, r + 1):
            for j in range(1, r + 1):
                v = rng.randrange(s + 1)
                mul[i][j] = r + v if v else 0
        out.append(mul)
    return out


@functools.lru_cache(maxsize=None)
def algebra_corpus() -> tuple[FiniteSemiring, ...]:
    rng = random.Random(20261016)
    algs: list[FiniteSemiring] = [s7()]
    algs += [r.semiring() for r in enumerate_3nilpotent(5)]
    for ws in WORD_SETS:
        algs.append(words_semiring(*ws))
        algs.append(words_semiring(*ws, commutative=True))
    for G in graphs_up_to_iso(4, allow_isolated=True):
        algs.append(from_graph(G))
    for n in (1, 2, 3, 4, 5):
        algs.append(flat_extension(cyclic_group_table(n), name=f"Z{n}^0"))
    algs.append(omega_direct_union([path_semiring(2), cycle_semiring(1)]))
    algs.append(omega_direct_union([words_semiring("a^2b"), words_semiring("a^2")]))
    algs.append(zero_direct_union([words_semiring("ab"), cycle_semiring(2)]))
    algs.append(zero_direct_union([s7(), words_semiring("a^2")]))
    for case, kw in [(Case.I, dict(n=2, m=3)), (Case.III, dict(m=3)), (Case.V, dict(n=2, m=2, k=1))]:
        algs.append(lemma_construction(case, **kw).quotient)
    small = [a for a in algs if a.order <= 4]
    for _ in range(12):
        A, B = rng.choice(small), rng.choice(small)
        if A.order * B.order <= 16:
            algs.append(direct_product(A, B))
    for i, S in enumerate(list(algs)):
        if S.order >= 4 and i % 3 == 0:
            gens = rng.sample(range(S.order), 2)
            sub = subalgebra_closure(S, gens)
            if len(sub) < S.order:
                algs.append(S.restrict(sub, name=f"sub({S.name})"))
    return tuple(algs)


@pytest.fixture(scope="session")
def corpus():
    return algebra_corpus()


@pytest.fixture(scope="session")
def nilpotent_semigroups():
    return _three_nilpotent_semigroups(random.Random(7), 150)
