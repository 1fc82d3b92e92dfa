import random

import pytest

from oracles import all_words, random_formula, random_nfa
from ptlsep.errors import GuardError
from ptlsep.ptl import (And, FalseF, Not, Or, Piece, TrueF, canonical_separator, class_formula, eval_formula,
                        formula_from_json, formula_profile_nfa, formula_to_json, formula_to_nfa,
                        profile_automaton)
from ptlsep.regular import Nfa, concat, equivalent, includes, star_nfa
from ptlsep.words import simon_equiv, subwords_upto, word

AB = ("a", "b")


def test_eval_examples():
    assert eval_formula(Piece(word("ab")), word("aabb"))
    f = And((Piece(("a",)), Not(Piece(("b",)))))
    assert eval_formula(f, word("aa"))
    assert not eval_formula(f, word("ab"))


def test_formula_to_nfa_examples():
    assert equivalent(formula_to_nfa(TrueF(), AB), star_nfa(AB, AB))
    assert not formula_to_nfa(FalseF(), AB).accepts(())
    no_ba = formula_to_nfa(Not(Piece(word("ba"))), AB)
    assert equivalent(no_ba, concat(star_nfa("a", AB), star_nfa("b", AB)))


def test_eval_and_nfa_agree_on_random_formulas():
    rng = random.Random(40)
    for _ in range(50):
        f = random_formula(rng)
        M = formula_to_nfa(f, AB)
        P = formula_profile_nfa(f, AB)
        for w in all_words(AB, 4):
            assert M.accepts(w) == eval_formula(f, w) == P.accepts(w)


def test_formula_json_roundtrip():
    rng = random.Random(41)
    for _ in range(30):
        f = random_formula(rng)
        assert formula_from_json(formula_to_json(f)) == f


def test_profile_automaton_examples():
    P = profile_automaton(AB, 1)
    assert P.size == 4
    assert {frozenset(m) for m in P.members} == {
        frozenset({()}), frozenset({(), ("a",)}), frozenset({(), ("b",)}), frozenset({(), ("a",), ("b",)})}
    assert profile_automaton(AB, 0).size == 1


def test_profile_state_is_subword_profile():
    for n in range(4):
        P = profile_automaton(AB, n)
        for w in all_words(AB, 5):
            assert P.members[P.run(w)] == subwords_upto(w, n).members
        for v in all_words(AB, 4):
            for w in all_words(AB, 4):
                assert (P.run(v) == P.run(w)) == simon_equiv(v, w, n)


def test_profile_guard():
    with pytest.raises(GuardError) as exc:
        profile_automaton(tuple("abcdefghij"), 6)
    assert "candidate" in str(exc.value)


def test_class_formula():
    f = class_formula(("a",), 1, AB)
    assert f == And((Piece(("a",)), Not(Piece(("b",)))))
    assert eval_formula(f, word("a")) and eval_formula(f, word("aa"))
    assert not eval_formula(f, ()) and not eval_formula(f, word("ab"))
    eps = class_formula((), 2, AB)
    assert [w for w in all_words(AB, 3) if eval_formula(eps, w)] == [()]
    for n in range(4):
        for v in all_words(AB, 4):
            f = class_formula(v, n, AB)
            for w in all_words(AB, 4):
                assert eval_formula(f, w) == simon_equiv(v, w, n)


def test_canonical_separator_examples():
    P = profile_automaton(AB, 1)
    f, S = canonical_separator(range(P.size), P)
    assert f == TrueF() and equivalent(S, star_nfa(AB, AB))
    f, S = canonical_separator([], P)
    assert f == FalseF() and not S.accepts(())
    a_plus = Nfa(AB, 2, [0], [1], [(0, "a", 1), (1, "a", 1)])
    reached = {P.run(w) for w in all_words(AB, 4) if a_plus.accepts(w)}
    f, S = canonical_separator(reached, P)
    assert equivalent(S, a_plus)
    assert equivalent(formula_to_nfa(f, AB), S)


def test_separator_contains_language_and_shrinks_with_level():
    rng = random.Random(42)
    for _ in range(20):
        M = random_nfa(rng, max_states=4, letters="ab", min_letters=2)
        prev = None
        for n in range(4):
            P = profile_automaton(AB, n)
            reached = {P.run(w) for w in all_words(AB, 6) if M.accepts(w)}
            _, S = canonical_separator(reached, P)
            assert all(S.accepts(w) for w in all_words(AB, 6) if M.accepts(w))
            if prev is not None:
                assert includes(S, prev)
            prev = S


def test_formula_languages_are_unions_of_classes():
    rng = random.Random(43)
    for _ in range(30):
        f = random_formula(rng)
        n = max([len(u) for u in _pieces(f)] + [0])
        for v in all_words(AB, 4):
            for w in all_words(AB, 4):
                if simon_equiv(v, w, n):
                    assert eval_formula(f, v) == eval_formula(f, w)


def _pieces(f):
    if isinstance(f, Piece):
        yield f.word
    elif isinstance(f, Not):
        yield from _pieces(f.arg)
    elif isinstance(f, (And, Or)):
        for g in f.args:
            yield from _pieces(g)
