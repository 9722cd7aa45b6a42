import pytest

from flatsr.constructors import (
    cyclic_group_table, cycle_semiring, flat_extension, from_words, maximal_word_labels,
    omega_direct_union, parse_word, parse_words_spec, path_semiring, s7, word_set, words_semiring,
    zero_direct_union,
)
from flatsr.errors import InputError, PreconditionError, ResourceError
from flatsr.semiring import annihilators, find_isomorphism, flat_profile, verify_axioms


def test_parse_word():
    assert parse_word("a^2b") == ("a", "a", "b")
    assert parse_word("abc") == ("a", "b", "c")
    with pytest.raises(InputError):
        parse_word("a^0")
    with pytest.raises(InputError):
        parse_word("")


def test_subword_semiring_elements():
    S = words_semiring("aba")
    assert S.labels == ("0", "a", "b", "ab", "ba", "aba")
    assert S.mul[S.index("ab")][S.index("a")] == S.index("aba")
    assert S.mul[S.index("a")][S.index("a")] == S.index("0")
    C = words_semiring("a^2b", commutative=True)
    assert set(C.labels) == {"0", "a", "b", "a^2", "ab", "a^2b"}
    assert C.mul[C.index("b")][C.index("a^2")] == C.index("a^2b")


def test_orders_and_names():
    assert words_semiring("ab").name == "S(ab)"
    assert words_semiring("ab", commutative=True).name == "S_c(ab)"
    assert path_semiring(2).name == "S_p2"
    assert cycle_semiring(3).name == "S_c3"
    assert path_semiring(4).order == 6 and cycle_semiring(4).order == 6


def test_words_bound():
    with pytest.raises(ResourceError):
        from_words(word_set(["abcdefgh"]), bound=10)


def test_parse_words_spec():
    spec = parse_words_spec("words commutative ab a^2")
    assert spec.commutative
    assert from_words(spec).order == 5  # 0, a, b, a^2, ab


def test_omega_union_shares_zero_and_omega():
    U, emb = omega_direct_union([path_semiring(2), cycle_semiring(1)], return_embeddings=True)
    assert U.order == 5
    assert U.name == "S_p2∘S_c1"
    assert emb[0][1] == emb[1][1]  # ω maps to ω in both parts
    assert flat_profile(U).is_si


def test_omega_union_rejects_non_si_parts():
    with pytest.raises(PreconditionError):
        omega_direct_union([words_semiring("ab", "c"), path_semiring(2)])
    with pytest.raises(PreconditionError):
        omega_direct_union([s7(), path_semiring(2)])


def test_zero_union_sizes():
    U = zero_direct_union([path_semiring(2), cycle_semiring(1), s7()])
    assert U.order == 1 + 3 + 2 + 2
    assert verify_axioms(U).ok
    assert len(annihilators(U)) == 2


def test_flat_extension():
    Z3 = flat_extension(cyclic_group_table(3))
    assert Z3.order == 4 and flat_profile(Z3).is_flat
    with pytest.raises(InputError):
        flat_extension([[1, 1], [0, 0]])
    with pytest.raises(PreconditionError):
        flat_extension([[0, 0], [0, 0]])


def test_maximal_words():
    S = words_semiring("ab", "b^2", "abb")
    assert maximal_word_labels(S) == {"ab^2"}
    T = words_semiring("ab", "c")
    assert maximal_word_labels(T) == {"ab", "c"}


def test_small_isomorphisms():
    assert find_isomorphism(path_semiring(2), words_semiring("ab")) is not None
    assert find_isomorphism(cycle_semiring(1), words_semiring("a^2")) is not None
    assert find_isomorphism(cycle_semiring(2), words_semiring("ab", commutative=True)) is not None
