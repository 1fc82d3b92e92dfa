import random

import pytest

from oracles import all_words, nfa_slice, random_cfg, random_ideal, random_nfa
from ptlsep.closures import (chain_nfa, dc_cfg, diagonal_via_sup, ideal_decompose, ideal_in_dc, ideals_of_size,
                             sup_decide, union_of_ideals)
from ptlsep.errors import IllFormedSupInstance, NotDownwardClosed
from ptlsep.grammar import diagonal_cfg, nfa_to_rlcfg, parse_cfg, slice_cfg
from ptlsep.ideals import Block, Ideal, Opt, is_canonical
from ptlsep.regular import (Nfa, concat, dc_nfa, diagonal_nfa, empty_nfa, equivalent, ideal_to_nfa, includes,
                            intersect, is_downward_closed, star_nfa, union, word_nfa)
from ptlsep.words import is_subword

AB = ("a", "b")
DYCK = parse_cfg("start S\nS -> a S b |\n")
A_STAR_B_STAR = concat(star_nfa("a", AB), star_nfa("b", AB))


def test_ideal_json():
    I = Ideal((Block("a"), Opt("b"), Block("ab")))
    assert I.to_json() == {"atoms": [{"block": ["a"]}, {"opt": "b"}, {"block": ["a", "b"]}]}
    assert Ideal.from_json(I.to_json()) == I


def test_decompose_examples():
    assert ideal_decompose(A_STAR_B_STAR) == [Ideal((Block("a"), Block("b")))]
    eps_a = Nfa(AB, 2, [0], [0, 1], [(0, "a", 1)])
    assert ideal_decompose(eps_a) == [Ideal((Opt("a"),))]
    ab_star = Nfa(AB, 2, [0], [0], [(0, "a", 1), (1, "b", 0)])
    assert ideal_decompose(dc_nfa(ab_star)) == [Ideal((Block("ab"),))]
    with pytest.raises(NotDownwardClosed):
        ideal_decompose(ab_star)


def test_decompose_roundtrip_on_random_closures():
    rng = random.Random(60)
    for _ in range(60):
        D = dc_nfa(random_nfa(rng))
        ideals = ideal_decompose(D)
        assert equivalent(union_of_ideals(ideals, D.alphabet), D)
        for I in ideals:
            assert is_canonical(I)
            assert includes(ideal_to_nfa(I, D.alphabet), D)
        for I in ideals:
            for J in ideals:
                if I != J:
                    assert not includes(ideal_to_nfa(I, D.alphabet), ideal_to_nfa(J, D.alphabet))


def test_enumerative_decomposition_agrees():
    rng = random.Random(61)
    for _ in range(25):
        D = dc_nfa(random_nfa(rng, max_states=4, letters="ab"))
        fast = ideal_decompose(D)
        slow = ideal_decompose(D, method="enumerate")
        assert set(fast) == set(slow)


def test_ideals_of_size_are_canonical_and_distinct():
    for s in range(1, 5):
        items = ideals_of_size(AB, s)
        assert len(items) == len(set(items))
        assert all(is_canonical(I) and I.size == s for I in items)


def test_ideal_in_dc_examples():
    assert ideal_in_dc(DYCK, Ideal((Block("a"), Block("b"))))
    assert not ideal_in_dc(DYCK, Ideal((Block("b"), Block("a"))))
    assert ideal_in_dc(DYCK, Ideal(()))
    empty = parse_cfg("start S\nS -> a S\n")
    assert not ideal_in_dc(empty, Ideal(()))
    assert ideal_in_dc(DYCK, Ideal((Opt("a"), Block("b"))))
    assert not ideal_in_dc(DYCK, Ideal((Opt("b"), Block("a"))))
    assert not ideal_in_dc(DYCK, Ideal((Opt("b"), Opt("a"))))


def test_ideal_in_dc_matches_nfa_inclusion():
    rng = random.Random(62)
    for _ in range(80):
        M = random_nfa(rng, max_states=4, letters="ab", min_letters=2)
        I = random_ideal(rng)
        expected = includes(ideal_to_nfa(I, AB), dc_nfa(M))
        assert ideal_in_dc(M, I) == expected
        assert ideal_in_dc(nfa_to_rlcfg(M), I) == expected


def test_dc_cfg_examples():
    assert equivalent(dc_cfg(DYCK), A_STAR_B_STAR)
    finite = parse_cfg("start S\nS -> a b\n")
    assert nfa_slice(dc_cfg(finite), 3) == {(), ("a",), ("b",), ("a", "b")}
    assert equivalent(dc_cfg(DYCK, method="enumerate"), A_STAR_B_STAR)


def test_dc_cfg_matches_dc_nfa():
    rng = random.Random(63)
    for _ in range(50):
        M = random_nfa(rng)
        assert equivalent(dc_cfg(nfa_to_rlcfg(M)), dc_nfa(M))


def test_dc_cfg_on_random_grammars():
    rng = random.Random(64)
    for _ in range(40):
        G = random_cfg(rng)
        D = dc_cfg(G)
        assert is_downward_closed(D)
        accepted = nfa_slice(D, 6)
        for w in slice_cfg(G, 6):
            for v in all_words(AB, len(w)):
                if is_subword(v, w):
                    assert v in accepted
        assert diagonal_cfg(G) == diagonal_nfa(D)


def test_dc_cfg_nonlinear():
    G = parse_cfg("start S\nS -> S S | a S b |\n")
    assert equivalent(dc_cfg(G), star_nfa(AB, AB))
    G2 = parse_cfg("start S\nS -> A c B\nA -> a A |\nB -> b B b | b\n")
    D = dc_cfg(G2)
    A = D.alphabet
    expected = concat(concat(star_nfa("a", A), Nfa(A, 2, [0], [0, 1], [(0, "c", 1)])), star_nfa("b", A))
    assert equivalent(D, expected)


def test_sup_examples():
    assert sup_decide(DYCK, "ab")
    a_star_b = concat(star_nfa("a", AB), word_nfa("b", AB))
    assert not sup_decide(a_star_b, "ab")
    ab_star = Nfa(AB, 2, [0], [0], [(0, "a", 1), (1, "b", 0)])
    with pytest.raises(IllFormedSupInstance):
        sup_decide(ab_star, "ab")
    with pytest.raises(IllFormedSupInstance):
        sup_decide(DYCK, "aba")


def test_sup_matches_closure_equality():
    rng = random.Random(65)
    checked = 0
    for _ in range(200):
        M = random_nfa(rng, max_states=4, letters="ab", min_letters=2)
        for order in ("ab", "ba"):
            K = intersect(M, chain_nfa(order, AB))
            assert sup_decide(K, order) == equivalent(dc_nfa(K), chain_nfa(order, AB))
            checked += 1
    assert checked == 400


def test_diagonal_via_sup_examples():
    assert diagonal_via_sup(DYCK)
    assert not diagonal_via_sup(union(star_nfa("a", AB), star_nfa("b", AB)))
    assert not diagonal_via_sup(empty_nfa(AB))


def test_diagonal_via_sup_agrees_with_direct():
    rng = random.Random(66)
    for _ in range(50):
        M = random_nfa(rng)
        assert diagonal_via_sup(M) == diagonal_nfa(M)
    for _ in range(30):
        G = random_cfg(rng)
        assert diagonal_via_sup(G) == diagonal_cfg(G)
