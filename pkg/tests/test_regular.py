import random

import pytest

from oracles import all_words, brute_is_subword_b, nfa_slice, random_ideal, random_nfa
from ptlsep.errors import AlphabetMismatch, PtlsepError
from ptlsep.grammar import diagonal_cfg, nfa_to_rlcfg
from ptlsep.ideals import Block, Ideal, Opt, ideal_contains_word, ideal_leq
from ptlsep.regular import (Nfa, complement, concat, dc_nfa, determinize, diagonal_nfa, empty_nfa, equivalent,
                            exact_alphabet_nfa, ideal_to_nfa, includes, inclusion_counterexample, intersect,
                            is_downward_closed, is_empty, pad, piece_nfa, star_nfa, uc_nfa, union, word_nfa)
from ptlsep.words import is_subword, word

AB = ("a", "b")


def nfa_ab_star():
    return Nfa(AB, 2, [0], [0], [(0, "a", 1), (1, "b", 0)])


def test_intersection_example():
    a_star = star_nfa("a", AB)
    ends_b = concat(star_nfa(AB, AB), word_nfa("b", AB))
    assert is_empty(intersect(a_star, ends_b))


def test_accepts_piece():
    assert piece_nfa("ab", AB).accepts(word("aabb"))
    assert not piece_nfa("ab", AB).accepts(word("ba"))


def test_complement_is_involution():
    rng = random.Random(10)
    for _ in range(100):
        M = random_nfa(rng, max_states=5)
        assert equivalent(complement(complement(M)), M)


def test_inclusion_matches_complement_emptiness():
    rng = random.Random(11)
    for _ in range(60):
        X = random_nfa(rng, max_states=4, letters="ab", min_letters=2)
        Y = random_nfa(rng, max_states=4, letters="ab", min_letters=2)
        assert includes(X, Y) == is_empty(intersect(X, complement(Y)))
        w = inclusion_counterexample(X, Y)
        assert (w is None) == includes(X, Y)
        if w is not None:
            assert X.accepts(w) and not Y.accepts(w)


def test_alphabet_mismatch_is_an_error():
    with pytest.raises(AlphabetMismatch):
        intersect(star_nfa("a", ("a",)), star_nfa("a", AB))
    assert equivalent(pad(star_nfa("a", ("a",)), AB), star_nfa("a", AB))


def test_piece_nfa():
    A = ("a", "b")
    assert equivalent(piece_nfa((), A), star_nfa(A, A))
    M = piece_nfa("ab", A)
    assert M.states == 3
    for w in all_words(A, 5):
        assert M.accepts(w) == brute_is_subword_b(("a", "b"), w, A)
    aa = piece_nfa("aa", A)
    assert not any(aa.accepts(w) for w in [word("ab"), word("ba"), ("b",) * 4])


def test_piece_is_upward_closure_of_word():
    for u in all_words(AB, 3):
        assert equivalent(piece_nfa(u, AB), uc_nfa(word_nfa(u, AB), AB))


def test_exact_alphabet():
    Ma = exact_alphabet_nfa("a")
    assert Ma.accepts(word("a")) and Ma.accepts(word("aa")) and not Ma.accepts(())
    Mab = exact_alphabet_nfa("ab")
    assert all(Mab.accepts(word(w)) for w in ["ab", "ba", "aab"])
    assert not any(Mab.accepts(word(w)) for w in ["", "a", "bb"])
    M = exact_alphabet_nfa("ab", "abc")
    for w in all_words("abc", 4):
        assert M.accepts(w) == (set(w) == {"a", "b"})


def test_dc_examples():
    D = dc_nfa(word_nfa("ab", AB))
    assert nfa_slice(D, 3) == {(), ("a",), ("b",), ("a", "b")}
    assert equivalent(dc_nfa(nfa_ab_star()), star_nfa(AB, AB))


def test_dc_properties_on_random_nfas():
    rng = random.Random(12)
    for _ in range(100):
        M = random_nfa(rng)
        D = dc_nfa(M)
        assert includes(M, D)
        assert equivalent(dc_nfa(D), D)
        assert is_downward_closed(D)
        accepted = nfa_slice(D, 4)
        for w in accepted:
            for v in all_words(M.alphabet, len(w)):
                if is_subword(v, w):
                    assert v in accepted
        assert diagonal_nfa(M) == diagonal_nfa(D)


def test_uc_examples():
    M = uc_nfa(word_nfa("ab", AB), ["c"])
    for w in all_words("abc", 5):
        stripped = tuple(x for x in w if x != "c")
        assert M.accepts(w) == (stripped == ("a", "b"))


def test_uc_agrees_with_b_subword():
    rng = random.Random(13)
    for _ in range(30):
        M = random_nfa(rng, max_states=4, letters="ab")
        U = uc_nfa(M, ["c"])
        base = nfa_slice(M, 4)
        assert includes(pad(M, U.alphabet), U)
        for w in all_words(U.alphabet, 4):
            assert U.accepts(w) == any(brute_is_subword_b(v, w, {"c"}) for v in base)


def test_diagonal_examples():
    assert diagonal_nfa(nfa_ab_star())
    assert not diagonal_nfa(concat(star_nfa("a", AB), word_nfa("b", AB)))
    a_or_b = union(star_nfa("a", AB), star_nfa("b", AB))
    assert not diagonal_nfa(a_or_b)
    assert not diagonal_cfg(nfa_to_rlcfg(a_or_b))
    assert not diagonal_nfa(empty_nfa(AB))


def test_ideal_to_nfa():
    I = Ideal((Block("a"), Block("b")))
    assert equivalent(ideal_to_nfa(I, AB), concat(star_nfa("a", AB), star_nfa("b", AB)))
    assert nfa_slice(ideal_to_nfa(Ideal((Opt("a"),))), 3) == {(), ("a",)}
    rng = random.Random(14)
    for _ in range(50):
        I = random_ideal(rng)
        M = ideal_to_nfa(I, AB)
        assert equivalent(dc_nfa(M), M)
        for w in all_words(AB, 4):
            assert M.accepts(w) == ideal_contains_word(I, w)


def test_ideal_leq_matches_language_inclusion():
    rng = random.Random(15)
    for _ in range(300):
        I, J = random_ideal(rng), random_ideal(rng)
        assert ideal_leq(I, J) == includes(ideal_to_nfa(I, AB), ideal_to_nfa(J, AB)), (I, J)


def test_json_roundtrip_and_validation():
    M = nfa_ab_star()
    again = Nfa.from_json(M.to_json())
    assert again.to_json() == M.to_json()
    with pytest.raises(PtlsepError):
        Nfa(AB, 2, [0], [5], [])
    with pytest.raises(PtlsepError):
        Nfa(AB, 2, [0], [0], [(0, "c", 1)])
    assert "digraph" in M.to_dot()


def test_determinize_is_complete_and_equivalent():
    rng = random.Random(16)
    for _ in range(30):
        M = random_nfa(rng)
        D = determinize(M)
        assert equivalent(D, M)
        assert all(len([1 for p, a, q in D.transitions if p == s and a == x]) == 1
                   for s in range(D.states) for x in D.alphabet)
