import pytest

from flatsr.constructors import cycle_semiring, path_semiring, s7, words_semiring
from flatsr.errors import InputError, PreconditionError, ResourceError
from flatsr.semiring import (
    AXIOMS, FiniteSemiring, annihilators, axiom_witness_fails, direct_product, dumps, find_isomorphism,
    find_zero, flat_profile, is_homomorphism, is_si_by_congruences, least_nonzero_ideal, loads,
    multiplicative_ideals, nilpotency_class, quotient_by_absorbing_ideal, require_flat,
    subalgebra_closure, trivial_semiring, verify_axioms, zero_cancellative_witness,
)


def test_s7_tables_and_profile():
    S = s7()
    assert S.labels == ("∞", "a", "1")
    assert S.mul == ((0, 0, 0), (0, 0, 1), (0, 1, 2))
    assert verify_axioms(S).ok
    prof = flat_profile(S)
    assert prof.is_flat and prof.zero == 0
    assert prof.nilpotency_class is None
    assert prof.annihilators == frozenset()


def test_axiom_witness_is_least_and_real():
    # 2-element chain with a non-idempotent addition
    S = FiniteSemiring(2, [[0, 1], [1, 0]], [[0, 0], [0, 1]])
    rep = verify_axioms(S)
    assert not rep.ok
    assert rep.witnesses["add_idempotent"] == (1,)
    for ax, w in rep.failures():
        assert ax in AXIOMS
        assert axiom_witness_fails(S, ax, w)


def test_axiom_bound():
    with pytest.raises(ResourceError):
        verify_axioms(path_semiring(3), bound=3)


def test_bad_tables_rejected():
    with pytest.raises(InputError):
        FiniteSemiring(2, [[0, 1]], [[0, 0], [0, 0]])
    with pytest.raises(InputError):
        FiniteSemiring(2, [[0, 2], [2, 0]], [[0, 0], [0, 0]])


def test_zero_and_cancellativity():
    S = path_semiring(2)
    z = find_zero(S)
    assert S.labels[z] == "0"
    assert zero_cancellative_witness(S, z) is None
    # x*a = x*b = x != 0 with a != b
    T = FiniteSemiring(3, [[0, 0, 0], [0, 1, 0], [0, 0, 2]], [[0, 0, 0], [0, 1, 1], [0, 1, 1]])
    assert zero_cancellative_witness(T, 0) is not None


@pytest.mark.parametrize("word,k", [("a", 2), ("a^2", 3), ("a^3", 4), ("ab", 3), ("a^2b", 4)])
def test_nilpotency_of_word_semirings(word, k):
    assert nilpotency_class(words_semiring(word)) == k


def test_annihilators_and_si():
    S = path_semiring(3)
    ann = annihilators(S)
    assert [S.labels[a] for a in ann] == ["ω"]
    assert least_nonzero_ideal(S) == frozenset({S.index("0"), S.index("ω")})
    assert is_si_by_congruences(S)
    T = words_semiring("ab", "c")
    assert len(annihilators(T)) == 2
    assert not flat_profile(T).is_si
    assert not is_si_by_congruences(T)


def test_ideals_and_quotient():
    S = words_semiring("a^3")
    ideals = multiplicative_ideals(S)
    assert ideals[0] == frozenset({0})
    J = frozenset(S.index(x) for x in ("0", "a^2", "a^3"))
    assert J in ideals
    Q = quotient_by_absorbing_ideal(S, J)
    assert Q.order == 2
    assert find_isomorphism(Q, words_semiring("a")) is not None


def test_subalgebra_closure():
    S = words_semiring("a^3")
    sub = subalgebra_closure(S, [S.index("a^2")])
    assert sorted(S.labels[i] for i in sub) == ["0", "a^2"]


def test_product_and_homomorphism():
    A, B = path_semiring(2), cycle_semiring(1)
    P = direct_product(A, B)
    assert P.order == A.order * B.order
    assert verify_axioms(P).ok
    proj = [i // B.order for i in range(P.order)]
    assert is_homomorphism(P, A, proj)


def test_isomorphism_certificate_checks():
    A = cycle_semiring(3)
    B = A.permuted([0, 1, 4, 2, 3])
    cert = find_isomorphism(A, B)
    assert cert is not None and cert.check(A, B)
    assert find_isomorphism(cycle_semiring(3), path_semiring(3)) is None


def test_text_roundtrip():
    S = s7()
    assert loads(dumps(S)) == S
    with pytest.raises(InputError):
        loads("semiring x\norder 2\nelements 0 a\nadd\n0 0\n0 a\nmul\n0 0\n")


def test_require_flat():
    with pytest.raises(PreconditionError):
        require_flat(direct_product(path_semiring(2), path_semiring(2)))
    assert trivial_semiring().order == 1
