"""Property checks shared by the property tests and the acceptance suite.

Each check returns ``(instances, violations)`` where ``instances`` counts the
algebras it ran on.
"""

import itertools
import random

from conftest import naive_satisfies, naive_value, random_identity
from flatsr.constructors import parse_word, words_semiring
from flatsr.semiring import (
    FiniteSemiring, annihilators, direct_product, find_zero, flat_profile, is_si_by_congruences,
    multiplicative_ideals, quotient_by_absorbing_ideal, subalgebra_closure, verify_axioms,
)
from flatsr.terms import satisfies


def _identities(rng, S, count=6):
    out = []
    while len(out) < count:
        e = random_identity(rng)
        if S.order ** e.var_count <= 20000:
            out.append(e)
    return out


def preservation(corpus, seed=1):
    """Identities of S hold in its subalgebras and quotients; products satisfy
    exactly the common identities of their factors."""
    rng = random.Random(seed)
    bad, n = [], 0
    for S in corpus:
        n += 1
        ids = _identities(rng, S)
        gens = rng.sample(range(S.order), min(2, S.order))
        sub = S.restrict(subalgebra_closure(S, gens))
        quots = []
        prof = flat_profile(S)
        if prof.is_flat and S.order <= 16:
            for J in multiplicative_ideals(S)[1:3]:
                if len(J) < S.order:
                    quots.append(quotient_by_absorbing_ideal(S, J))
        for e in ids:
            if not satisfies(S, e).holds:
                continue
            for T in [sub] + quots:
                if not satisfies(T, e).holds:
                    bad.append(f"{S.name}: {e} lost in {T.name or 'image'}")
    small = [S for S in corpus if S.order <= 5]
    for _ in range(60):
        A, B = rng.choice(small), rng.choice(small)
        P = direct_product(A, B)
        n += 1
        for e in _identities(rng, P, 3):
            want = satisfies(A, e).holds and satisfies(B, e).holds
            if satisfies(P, e).holds != want:
                bad.append(f"{A.name} x {B.name}: {e}")
    return n, bad


def iso_invariance(corpus, seed=2):
    """Relabelling the elements changes neither the verdict nor, up to the
    relabelling, the failing assignment found by the naive evaluator."""
    rng = random.Random(seed)
    bad = []
    for S in corpus:
        perm = list(range(S.order))
        rng.shuffle(perm)
        T = S.permuted(perm)
        for e in _identities(rng, S, 3):
            v, w = satisfies(S, e), satisfies(T, e)
            if v.holds != w.holds:
                bad.append(f"{S.name}: {e}")
            elif not w.holds:
                # map T's counterexample back to S and re-check it there
                inv = {perm[i]: i for i in range(S.order)}
                back = tuple(inv[x] for x in w.counterexample)
                if naive_value(e.lhs, S, back) == naive_value(e.rhs, S, back):
                    bad.append(f"{S.name}: transported counterexample holds for {e}")
            if v.counterexample != naive_satisfies(S, e):
                bad.append(f"{S.name}: naive evaluator disagrees on {e}")
    return len(corpus), bad


def _cancellative(mul, z):
    n = len(mul)
    for a, b, c in itertools.product(range(n), repeat=3):
        if b != c and mul[a][b] == mul[a][c] != z:
            return False
        if b != c and mul[b][a] == mul[c][a] != z:
            return False
    return True


def flat_iff_cancellative(corpus, semigroups):
    """A semigroup with zero under the flat addition is a semiring exactly
    when it is 0-cancellative."""
    bad, n = [], 0
    tables = list(semigroups)
    for S in corpus:
        z = find_zero(S)
        if z is not None:
            # move the zero to index 0 so the flat addition is the usual one
            order = [z] + [x for x in range(S.order) if x != z]
            pos = {x: i for i, x in enumerate(order)}
            tables.append([[pos[S.mul[a][b]] for b in order] for a in order])
    for mul in tables:
        k = len(mul)
        add = [[a if a == b else 0 for b in range(k)] for a in range(k)]
        ok = verify_axioms(FiniteSemiring(k, add, mul)).ok
        n += 1
        if ok != _cancellative(mul, 0):
            bad.append(f"table {mul}: semiring={ok}")
    return n, bad


def si_iff_unique_annihilator(corpus):
    """For nilpotent flat algebras, a least nontrivial congruence exists
    exactly when there is a single annihilator."""
    bad, n = [], 0
    for S in corpus:
        prof = flat_profile(S)
        if not prof.is_flat or prof.nilpotency_class is None or S.order < 2 or S.order > 16:
            continue
        n += 1
        si = is_si_by_congruences(S)
        if si != (len(annihilators(S)) == 1):
            bad.append(f"{S.name}: si={si} annihilators={len(annihilators(S))}")
    return n, bad


def _is_factor(u, v):
    return any(v[i:i + len(u)] == u for i in range(len(v) - len(u) + 1))


def _divides(u, v):
    return all(u.count(c) <= v.count(c) for c in set(u))


def maximal_words(seed=3, count=80):
    """Annihilators of S(W) / S_c(W) are exactly the maximal words of W."""
    rng = random.Random(seed)
    bad, n = [], 0
    for _ in range(count):
        words = set()
        for _ in range(rng.randint(1, 3)):
            words.add("".join(rng.choice("abc") for _ in range(rng.randint(1, 4))))
        comm = rng.random() < 0.5
        S = words_semiring(*sorted(words), commutative=comm)
        n += 1
        ws = [tuple(w) for w in words]
        if comm:
            maxi = {tuple(sorted(w)) for w in ws if not any(u != w and _divides(w, u) and sorted(u) != sorted(w) for u in ws)}
            got = {tuple(sorted(parse_word(S.labels[a]))) for a in annihilators(S)}
        else:
            maxi = {w for w in ws if not any(u != w and _is_factor(w, u) for u in ws)}
            got = {parse_word(S.labels[a]) for a in annihilators(S)}
        if got != maxi:
            bad.append(f"{S.name}: annihilators {sorted(got)} maximal {sorted(maxi)}")
    return n, bad
