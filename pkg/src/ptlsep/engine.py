"""Deciding PTL-separability: dovetailed semi-procedures, certificates, validation.

A shared word w is reported at once as the pattern ((w),()) whenever that is
decidable, i.e. when at least one input is regular.  Otherwise round t first
asks whether the canonical level-t separator [I]_t works, then tries every
proper pattern of size t as a common pattern of I and E.  Exactly
one of the two searches succeeds eventually; the round budget bounds the
search and yields a resumable "undecided" outcome.
"""
import threading
from dataclasses import dataclass, field

from .closures import dc_lang, sup_instance
from .errors import GuardError, InvariantViolation, PtlsepError
from .lang import LangRef, common_pad
from .patterns import Pattern, contains_pattern, pattern_lang_nfa, patterns_of_size
from .ptl import (canonical_separator, formula_from_json, formula_profile_nfa,
                  formula_to_json, pieces, profile_automaton)
from .grammar import nfa_to_rlcfg, shortest_cfg_word
from .regular import EPS, Nfa, complement, concat_all, equivalent, intersect, pad
from .transduce import apply_fst_cfg, apply_fst_nfa, cfg_relation, doubling_fst, restrict
from .words import alphabet as make_alphabet, check_user_alphabet

DEFAULT_BUDGET = 8  # rounds; 0 or None means unlimited

__all__ = ["LangRef", "Separable", "Inseparable", "Undecided", "separate", "positive_step",
           "negative_step", "validate", "validation_report", "is_ptl_regular", "sup_via_separability",
           "certificate_from_json", "DEFAULT_BUDGET"]


# ---------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class Separable:
    level: int
    formula: object
    separator: Nfa = field(compare=False)
    verdict = "separable"

    def to_json(self):
        return {"verdict": "separable", "level": self.level,
                "formula": formula_to_json(self.formula), "separator_nfa": self.separator.to_json()}


@dataclass(frozen=True)
class Inseparable:
    pattern: Pattern
    verdict = "inseparable"

    def to_json(self):
        return {"verdict": "inseparable", "pattern": self.pattern.to_json()}


@dataclass(frozen=True)
class Undecided:
    budget: int
    resume: dict
    note: str = ""
    verdict = "undecided"

    def to_json(self):
        out = {"verdict": "undecided", "budget": self.budget, "resume": dict(self.resume)}
        if self.note:
            out["note"] = self.note
        return out


def certificate_from_json(data):
    try:
        v = data["verdict"]
        if v == "separable":
            return Separable(int(data["level"]), formula_from_json(data["formula"]),
                             Nfa.from_json(data["separator_nfa"]))
        if v == "inseparable":
            return Inseparable(Pattern.from_json(data["pattern"]))
        if v == "undecided":
            return Undecided(int(data["budget"]), dict(data["resume"]), data.get("note", ""))
    except (KeyError, TypeError, ValueError) as exc:
        raise PtlsepError(f"malformed certificate JSON: {exc}") from exc
    raise PtlsepError(f"unknown verdict {data.get('verdict')!r}")


# ---------------------------------------------------------------------------
# the two semi-procedures

def reachable_profiles(L: LangRef, P) -> frozenset:
    """Profile states reached by the words of L."""
    pos = {a: k for k, a in enumerate(P.alphabet)}
    if L.is_regular:
        M = L.obj
        start = {(m, 0) for m in M.start()}
        seen, todo = set(start), list(start)
        while todo:
            m, s = todo.pop()
            for a, m2 in M.successors(m):
                nxt = (m2, s) if a == EPS else (m2, P.delta[s][pos[a]])
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return frozenset(s for m, s in seen if m in M.final)
    G = L.obj
    rel = cfg_relation(G, [0], lambda a, s: {P.delta[s][pos[a]]}, lambda s: {s})
    return frozenset(rel[G.start, 0])


def positive_step(I, E, n: int):
    """(formula, separator) if the canonical level-n separator [I]_n works, else None."""
    I, E, A = common_pad(LangRef.of(I), LangRef.of(E))
    P = profile_automaton(A, n)
    pi = reachable_profiles(I, P)
    if pi & reachable_profiles(E, P):
        return None
    return canonical_separator(pi, P)


def negative_step(I, E, P: Pattern):
    """P if both languages contain it, else None."""
    if not P.is_proper():
        raise PtlsepError(f"pattern {P} is not proper")
    if contains_pattern(I, P) and contains_pattern(E, P):
        return P
    return None


# ---------------------------------------------------------------------------
# dovetailing

def _prepare(I, E):
    I, E = LangRef.of(I), LangRef.of(E)
    check_user_alphabet(I.alphabet)
    check_user_alphabet(E.alphabet)
    return common_pad(I.reduced(), E.reduced())


def shared_word(I: LangRef, E: LangRef):
    """Least common word of two padded languages, or None.

    None also when both are context-free: intersection emptiness is then
    undecidable and shared words are left to the pattern search.
    """
    if I.is_regular and E.is_regular:
        G = nfa_to_rlcfg(intersect(I.obj, E.obj))
    elif I.is_regular or E.is_regular:
        M, G = (I.obj, E.obj) if I.is_regular else (E.obj, I.obj)
        G = apply_fst_cfg(G, restrict(M))
    else:
        return None
    return shortest_cfg_word(G)


def _rounds(start, budget):
    t = start
    while budget is None or t < start + budget:
        yield t
        t += 1


def separate(I, E, budget=DEFAULT_BUDGET, resume=None, parallel=False):
    """Separable, Inseparable, or Undecided after `budget` rounds."""
    I, E, A = _prepare(I, E)
    budget = None if not budget else int(budget)
    resume = resume or {}
    level = int(resume.get("level", 0))
    tier = int(resume.get("tier", level))
    w = shared_word(I, E)
    if w is not None:
        return Inseparable(Pattern((w,), ()))
    if parallel:
        return _separate_parallel(I, E, A, budget, level, tier)
    if level != tier:
        raise PtlsepError("sequential resume needs level == tier")
    note = ""
    positive_alive = True
    for t in _rounds(level, budget):
        if positive_alive:
            try:
                found = positive_step(I, E, t)
            except GuardError as exc:
                positive_alive = False
                note = f"positive ladder stopped at level {t}: {exc}"
                found = None
            if found is not None:
                return Separable(t, found[0], found[1])
        for P in patterns_of_size(A, t):
            if negative_step(I, E, P) is not None:
                return Inseparable(P)
    end = level + budget
    return Undecided(budget, {"level": end, "tier": end}, note)


def _separate_parallel(I, E, A, budget, level, tier):
    """Race the ladders in two threads; the first definitive answer stops the other."""
    stop = threading.Event()
    results = {}
    state = {"level": level, "tier": tier, "note": ""}
    lock = threading.Lock()

    def positive():
        for t in _rounds(level, budget):
            if stop.is_set():
                return
            try:
                found = positive_step(I, E, t)
            except GuardError as exc:
                with lock:
                    state["note"] = f"positive ladder stopped at level {t}: {exc}"
                return
            with lock:
                if found is not None:
                    results["pos"] = Separable(t, found[0], found[1])
                    stop.set()
                    return
                state["level"] = t + 1

    def negative():
        for t in _rounds(tier, budget):
            for P in patterns_of_size(A, t):
                if stop.is_set():
                    return
                if negative_step(I, E, P) is not None:
                    with lock:
                        results["neg"] = Inseparable(P)
                        stop.set()
                    return
            with lock:
                state["tier"] = t + 1

    threads = [threading.Thread(target=positive), threading.Thread(target=negative)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    if "pos" in results and "neg" in results:
        raise InvariantViolation("both a separator and a common pattern were found")
    if results:
        return next(iter(results.values()))
    return Undecided(budget, {"level": state["level"], "tier": state["tier"]}, state["note"])


# ---------------------------------------------------------------------------
# validation

def validation_report(cert, I, E, depth: int = 3) -> list:
    """Reasons the certificate fails; an empty list means it is valid."""
    I, E, A = _prepare(I, E)
    problems = []
    if isinstance(cert, Separable):
        S = cert.separator
        if set(S.alphabet) != set(A):
            return [f"separator alphabet {list(S.alphabet)} differs from {list(A)}"]
        S = pad(S, A) if tuple(S.alphabet) != A else S
        if not all(set(u) <= set(A) for u in pieces(cert.formula)):
            return ["formula mentions letters outside the alphabet"]
        if max((len(u) for u in pieces(cert.formula)), default=0) > cert.level:
            problems.append("formula uses pieces longer than the stated level")
        if not equivalent(formula_profile_nfa(cert.formula, A), S):
            problems.append("formula and separator automaton denote different languages")
        if I.meets(complement(S)):
            problems.append("separator misses a word of I")
        if E.meets(S):
            problems.append("separator accepts a word of E")
    elif isinstance(cert, Inseparable):
        P = cert.pattern
        if not P.is_proper():
            problems.append("pattern is not proper")
        if not P.letters <= set(A):
            return problems + ["pattern mentions letters outside the alphabet"]
        for name, L in (("I", I), ("E", E)):
            if not contains_pattern(L, P):
                problems.append(f"{name} does not contain the pattern")
                continue
            # containment speaks about n ≥ 1: L(P, 0) is the single word u0...up
            for n in range(1, depth + 1):
                if not L.meets(pattern_lang_nfa(P, n, A)):
                    problems.append(f"{name} misses L(P, {n})")
                    break
    else:
        problems.append("undecided outcomes carry no certificate")
    return problems


def validate(cert, I, E, depth: int = 3) -> bool:
    return not validation_report(cert, I, E, depth)


# ---------------------------------------------------------------------------
# derived decision procedures

def is_ptl_regular(L: Nfa, budget=DEFAULT_BUDGET):
    """Is L(M) piecewise testable?  Separating L from its complement decides it."""
    return separate(LangRef.of(L), LangRef.of(complement(L)), budget=budget)


def odd_chain_nfa(order) -> Nfa:
    """b1^(2k1+1) ... bn^(2kn+1)."""
    A = make_alphabet(order)
    parts = [Nfa(A, 2, [0], [1], [(0, b, 1), (1, b, 0)]) for b in order]
    return concat_all(parts, A)


def sup_via_separability(L, order, budget=None) -> bool:
    """SUP for L and b1..bn: holds iff T(↓L) and K are PTL-inseparable, where
    T doubles every exponent and K holds the words with all exponents odd."""
    L = sup_instance(LangRef.of(L), order)
    order = tuple(order)
    D = dc_lang(L)
    TD = apply_fst_nfa(D, doubling_fst(order)) if order else D
    K = odd_chain_nfa(order)
    cert = separate(LangRef.of(TD), LangRef.of(K), budget=budget)
    if isinstance(cert, Undecided):
        raise GuardError(f"separation undecided within {budget} rounds")
    return isinstance(cert, Inseparable)
