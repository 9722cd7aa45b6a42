import random

import pytest

from conftest import WORD_SETS, random_identity
from flatsr.constructors import from_graph, from_words, omega_direct_union, word_set, cycle_semiring, path_semiring
from flatsr.enumerate import enumerate_3nilpotent
from flatsr.errors import PreconditionError
from flatsr.graphs import components, graphs_up_to_iso, semiring_to_graph
from flatsr.semiring import (
    annihilators, find_isomorphism, find_zero, flat_profile, is_flat_addition, multiplicative_ideals,
    quotient_by_absorbing_ideal, subalgebra_closure, verify_axioms, zero_cancellative_witness,
)
from flatsr.subpower import generate_subpower, lemma_construction, zero_coordinate_collapse, zero_ideal
from flatsr.suites import construction_grid
from flatsr.terms import Term, eval_term, satisfies


def test_closures_are_subalgebras(corpus):
    rng = random.Random(1)
    for S in corpus:
        for _ in range(2):
            gens = rng.sample(range(S.order), min(S.order, rng.randint(1, 3)))
            assert verify_axioms(S.restrict(subalgebra_closure(S, gens))).ok


def test_flat_means_zero_and_cancellative(corpus):
    for S in corpus:
        prof = flat_profile(S)
        z = find_zero(S)
        expected = z is not None and is_flat_addition(S, z) and zero_cancellative_witness(S, z) is None
        assert prof.is_flat == expected, S.name


def test_si_nil_algebras_have_least_ideal_zero_omega(corpus):
    for S in corpus:
        prof = flat_profile(S)
        if prof.is_flat and prof.nilpotency_class is not None and prof.is_si:
            (w,) = prof.annihilators
            assert prof.least_nonzero_ideal == frozenset({prof.zero, w})


def test_quotients_of_flat_algebras_are_flat(corpus):
    for S in corpus:
        prof = flat_profile(S)
        if not prof.is_flat or S.order > 12:
            continue
        for J in multiplicative_ideals(S)[:4]:
            Q = quotient_by_absorbing_ideal(S, J | {prof.zero})
            assert verify_axioms(Q).ok and flat_profile(Q).is_flat


def test_isomorphism_symmetric_and_composable(corpus):
    rng = random.Random(4)
    for S in corpus[:60]:
        perm = list(range(S.order))
        rng.shuffle(perm)
        T = S.permuted(perm)
        f, g = find_isomorphism(S, T), find_isomorphism(T, S)
        assert f is not None and g is not None
        assert f.compose(g).check(S, S)
        assert f.inverse().check(T, S)


def test_term_normalization():
    rng = random.Random(2)
    S = path_semiring(3)
    for _ in range(200):
        words = [tuple(rng.randrange(3) for _ in range(rng.randint(1, 3))) for _ in range(rng.randint(1, 4))]
        shuffled = words[:] + [words[0]]
        rng.shuffle(shuffled)
        a = [rng.randrange(S.order) for _ in range(3)]
        # fold the raw list with the table to compare against the normalized term
        raw = None
        for w in shuffled:
            r = a[w[0]]
            for v in w[1:]:
                r = S.mul[r][a[v]]
            raw = r if raw is None else S.add[raw][r]
        assert eval_term(Term(tuple(shuffled)), S, a) == raw == eval_term(Term(tuple(words)), S, a)


@pytest.mark.parametrize("ws", WORD_SETS, ids=lambda w: "+".join(w))
@pytest.mark.parametrize("comm", [False, True])
def test_word_semirings_are_flat(ws, comm):
    S = from_words(word_set(ws, commutative=comm))
    assert verify_axioms(S).ok and flat_profile(S).is_flat


def test_graph_semirings_are_si_and_three_nilpotent():
    for G in graphs_up_to_iso(5):
        prof = flat_profile(from_graph(G))
        assert prof.is_si and prof.nilpotency_class is not None and prof.nilpotency_class <= 3
        cs = components(G)
        assert sum(len(c.vertices) for c in cs.components) == len(G.vertices)
        assert sorted(v for c in cs.components for v in c.vertices) == sorted(G.vertices)


def test_omega_union_has_unique_annihilator():
    for parts in ([cycle_semiring(1), cycle_semiring(1)], [path_semiring(2), cycle_semiring(3), path_semiring(4)]):
        assert len(annihilators(omega_direct_union(parts))) == 1


def test_enumerated_si_records_are_exactly_the_graph_ones():
    for rec in enumerate_3nilpotent(5):
        if rec.order < 2:
            continue
        S = rec.semiring()
        if rec.is_si:
            G = semiring_to_graph(S)
            assert find_isomorphism(from_graph(G), S) is not None
        else:
            assert rec.annihilator_count != 1
            with pytest.raises(PreconditionError):
                semiring_to_graph(S)


@pytest.mark.parametrize("case,params", construction_grid(), ids=lambda x: str(x))
def test_every_construction_run(case, params):
    rep = lemma_construction(case, **params)
    # the quotient really is a quotient of a semiring; the subpower tables are re-derived here
    B = rep.base
    idx = {lab: i for i, lab in enumerate(B.labels)}
    gens = [tuple(idx[x] for x in g.strip("()").split(",")) for g in rep.generators]
    A = generate_subpower(B, rep.exponent, gens)
    S = A.to_semiring(bound=64)
    assert verify_axioms(S, bound=64).ok
    J = {S.index(A.label(t)) for t in zero_ideal(A)}
    if J:
        assert all(S.add[j][x] in J and S.mul[j][x] in J and S.mul[x][j] in J for j in J for x in range(S.order))
    Q = zero_coordinate_collapse(A)
    rng = random.Random(f"{case.value} {sorted(params.items())}")
    for _ in range(6):
        e = random_identity(rng, max_vars=2)
        if satisfies(S, e).holds:
            assert satisfies(Q, e).holds
