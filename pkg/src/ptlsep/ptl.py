"""Piecewise testable languages: formulas, profile automata, canonical separators."""
from dataclasses import dataclass
from functools import lru_cache

from .errors import GuardError, PtlsepError
from .regular import Nfa, complement, empty_nfa, intersect, pad, piece_nfa, union, universal_nfa
from .words import EPSILON, extend_profile, is_subword, subwords_upto, words_upto

PROFILE_CANDIDATE_GUARD = 100_000
PROFILE_STATE_GUARD = 50_000


# ---------------------------------------------------------------------------
# formulas

@dataclass(frozen=True)
class Piece:
    word: tuple


@dataclass(frozen=True)
class Not:
    arg: object


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


@dataclass(frozen=True)
class TrueF:
    pass


@dataclass(frozen=True)
class FalseF:
    pass


def conj(args):
    args = tuple(args)
    if not args:
        return TrueF()
    return args[0] if len(args) == 1 else And(args)


def disj(args):
    args = tuple(args)
    if not args:
        return FalseF()
    return args[0] if len(args) == 1 else Or(args)


def eval_formula(f, w) -> bool:
    if isinstance(f, Piece):
        return is_subword(f.word, w)
    if isinstance(f, Not):
        return not eval_formula(f.arg, w)
    if isinstance(f, And):
        return all(eval_formula(g, w) for g in f.args)
    if isinstance(f, Or):
        return any(eval_formula(g, w) for g in f.args)
    if isinstance(f, TrueF):
        return True
    if isinstance(f, FalseF):
        return False
    raise PtlsepError(f"not a formula: {f!r}")


def pieces(f):
    if isinstance(f, Piece):
        yield f.word
    elif isinstance(f, Not):
        yield from pieces(f.arg)
    elif isinstance(f, (And, Or)):
        for g in f.args:
            yield from pieces(g)


def formula_depth(f) -> int:
    """Longest piece in f: f is a union of ~n classes for this n."""
    return max((len(u) for u in pieces(f)), default=0)


def formula_to_nfa(f, A) -> Nfa:
    """Compositional construction from piece automata."""
    A = tuple(A)
    if isinstance(f, Piece):
        return piece_nfa(f.word, A)
    if isinstance(f, Not):
        return complement(formula_to_nfa(f.arg, A))
    if isinstance(f, And):
        out = universal_nfa(A)
        for g in f.args:
            out = intersect(out, formula_to_nfa(g, A))
        return out
    if isinstance(f, Or):
        out = empty_nfa(A)
        for g in f.args:
            out = union(out, formula_to_nfa(g, A))
        return out
    if isinstance(f, TrueF):
        return universal_nfa(A)
    if isinstance(f, FalseF):
        return empty_nfa(A)
    raise PtlsepError(f"not a formula: {f!r}")


def formula_to_json(f):
    if isinstance(f, Piece):
        return {"op": "piece", "word": list(f.word)}
    if isinstance(f, Not):
        return {"op": "not", "args": [formula_to_json(f.arg)]}
    if isinstance(f, And):
        return {"op": "and", "args": [formula_to_json(g) for g in f.args]}
    if isinstance(f, Or):
        return {"op": "or", "args": [formula_to_json(g) for g in f.args]}
    if isinstance(f, TrueF):
        return {"op": "true"}
    if isinstance(f, FalseF):
        return {"op": "false"}
    raise PtlsepError(f"not a formula: {f!r}")


def formula_from_json(data):
    try:
        op = data["op"]
        if op == "piece":
            return Piece(tuple(data["word"]))
        if op == "not":
            (arg,) = data["args"]
            return Not(formula_from_json(arg))
        if op == "and":
            return And(tuple(formula_from_json(g) for g in data["args"]))
        if op == "or":
            return Or(tuple(formula_from_json(g) for g in data["args"]))
        if op == "true":
            return TrueF()
        if op == "false":
            return FalseF()
    except (KeyError, TypeError, ValueError) as exc:
        raise PtlsepError(f"malformed formula JSON: {exc}") from exc
    raise PtlsepError(f"unknown formula op {data.get('op')!r}")


def show_formula(f) -> str:
    if isinstance(f, Piece):
        return "piece(" + ("".join(f.word) if all(len(a) == 1 for a in f.word) else " ".join(f.word)) + ")"
    if isinstance(f, Not):
        return "¬" + show_formula(f.arg)
    if isinstance(f, And):
        return "(" + " ∧ ".join(map(show_formula, f.args)) + ")"
    if isinstance(f, Or):
        return "(" + " ∨ ".join(map(show_formula, f.args)) + ")"
    return "true" if isinstance(f, TrueF) else "false"


# ---------------------------------------------------------------------------
# profile automata

def maximal_key(members) -> tuple:
    """Canonical key of a downward-closed profile: its maximal words, sorted."""
    ms = sorted(members, key=lambda u: (-len(u), u))
    out = []
    for u in ms:
        if not any(len(u) < len(x) and is_subword(u, x) for x in out):
            out.append(u)
    return tuple(sorted(out, key=lambda u: (len(u), u)))


@dataclass(frozen=True, eq=False)
class ProfileDfa:
    """Complete DFA whose state after w is the set of subwords of w of length <= n.

    States are numbered in BFS order; `keys[i]` lists the maximal elements of
    profile i, `members[i]` the full profile and `reps[i]` a shortest word
    reaching it.
    """
    alphabet: tuple
    bound: int
    keys: tuple
    members: tuple
    reps: tuple
    delta: tuple  # delta[i][k] = successor of state i on alphabet[k]

    @property
    def size(self) -> int:
        return len(self.keys)

    def run(self, w) -> int:
        pos = {a: k for k, a in enumerate(self.alphabet)}
        s = 0
        for a in w:
            s = self.delta[s][pos[a]]
        return s

    def to_nfa(self, accepting) -> Nfa:
        trans = [(i, a, self.delta[i][k]) for i in range(self.size) for k, a in enumerate(self.alphabet)]
        return Nfa(self.alphabet, self.size, [0], accepting, trans)


def profile_candidates(k: int, n: int) -> int:
    return sum(k ** i for i in range(n + 1))


@lru_cache(maxsize=64)
def profile_automaton(A, n: int) -> ProfileDfa:
    A = tuple(A)
    if n < 0:
        raise PtlsepError("profile bound must be nonnegative")
    cand = profile_candidates(len(A), n)
    if cand > PROFILE_CANDIDATE_GUARD:
        raise GuardError(f"profile automaton over {len(A)} letters at level {n} has "
                         f"{cand} candidate subwords (guard {PROFILE_CANDIDATE_GUARD})")
    start = frozenset([EPSILON])
    index = {start: 0}
    members = [start]
    reps = [EPSILON]
    delta = []
    i = 0
    while i < len(members):
        D = members[i]
        row = []
        for a in A:
            E = extend_profile(D, a, n)
            if E not in index:
                if len(index) >= PROFILE_STATE_GUARD:
                    raise GuardError(f"profile automaton at level {n} exceeds "
                                     f"{PROFILE_STATE_GUARD} states")
                index[E] = len(members)
                members.append(E)
                reps.append(reps[i] + (a,))
            row.append(index[E])
        delta.append(tuple(row))
        i += 1
    keys = tuple(maximal_key(D) for D in members)
    return ProfileDfa(A, n, keys, tuple(members), tuple(reps), tuple(delta))


def class_formula(w, n: int, A) -> object:
    """Formula for the ~n class of w: which words of length 1..n are subwords."""
    prof = subwords_upto(w, n).members
    lits = []
    for v in words_upto(tuple(A), n):
        if not v:
            continue
        lits.append(Piece(v) if v in prof else Not(Piece(v)))
    return conj(lits)


def canonical_separator(profiles, P: ProfileDfa):
    """[I]_n for the set of profile states reached by I: (formula, automaton)."""
    profiles = sorted(set(profiles))
    if not profiles:
        f = FalseF()
    elif len(profiles) == P.size:
        f = TrueF()
    else:
        f = disj(class_formula(P.reps[i], P.bound, P.alphabet) for i in profiles)
    return f, P.to_nfa(profiles)


def formula_profile_nfa(f, A) -> Nfa:
    """Exact DFA for f: evaluate f once per ~m class, m = longest piece in f."""
    A = tuple(A)
    for u in pieces(f):
        if not set(u) <= set(A):
            raise PtlsepError(f"piece {u} uses letters outside {list(A)}")
    P = profile_automaton(A, formula_depth(f))
    acc = [i for i in range(P.size) if eval_formula(f, P.reps[i])]
    return P.to_nfa(acc)
