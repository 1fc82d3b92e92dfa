"""Factorization patterns (u0..up, B1..Bp), their languages, enumeration and containment.

L(P, n) = u0 (B1^⊛)^n u1 ... (Bp^⊛)^n up.  A language contains P when it meets
L(P, n) for every n; two languages containing a common pattern cannot be
separated by a piecewise testable language.
"""
from dataclasses import dataclass
from itertools import combinations, product

from .errors import PtlsepError
from .lang import LangRef
from .regular import Builder, Nfa, concat_all, exact_alphabet_nfa, star_nfa, word_nfa
from .transduce import compose_fst, pad_upward, project, restrict
from .words import alphabet as make_alphabet, check_symbol, check_user_alphabet, fmt_word


@dataclass(frozen=True)
class Pattern:
    u: tuple  # p+1 words
    B: tuple  # p sorted, nonempty alphabets

    def __post_init__(self):
        u = tuple(tuple(w) for w in self.u)
        B = tuple(tuple(sorted(set(b))) for b in self.B)
        if len(u) != len(B) + 1:
            raise PtlsepError(f"pattern needs {len(B) + 1} words for {len(B)} blocks, got {len(u)}")
        if any(not b for b in B):
            raise PtlsepError("pattern blocks must be nonempty")
        for sym in {a for w in u for a in w} | {a for b in B for a in b}:
            check_symbol(sym)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "B", B)

    @property
    def p(self) -> int:
        return len(self.B)

    @property
    def letters(self) -> frozenset:
        return frozenset(a for w in self.u for a in w) | frozenset(a for b in self.B for a in b)

    @property
    def size(self) -> int:
        return sum(map(len, self.u)) + self.p

    def sort_key(self):
        return (self.p, self.B, self.u)

    def to_json(self):
        return {"u": [list(w) for w in self.u], "B": [list(b) for b in self.B]}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(tuple(tuple(w) for w in data["u"]), tuple(tuple(b) for b in data["B"]))
        except (KeyError, TypeError) as exc:
            raise PtlsepError(f"malformed pattern JSON: {exc}") from exc

    def __str__(self):
        us = ",".join(fmt_word(w) for w in self.u)
        bs = ",".join("{" + ",".join(b) + "}" for b in self.B)
        return f"(({us}),({bs}))"

    def is_proper(self) -> bool:
        """Boundary letters of u_i are not absorbable into adjacent blocks, and
        blocks meeting at an empty interior u_i are ⊆-incomparable.  The
        first/last conditions are vacuous when u_i is empty."""
        p = self.p
        for i, w in enumerate(self.u):
            if w and i < p and w[-1] in self.B[i]:
                return False
            if w and i >= 1 and w[0] in self.B[i - 1]:
                return False
            if not w and 0 < i < p:
                x, y = set(self.B[i - 1]), set(self.B[i])
                if x <= y or y <= x:
                    return False
        return True


def normalize_proper(P: Pattern) -> Pattern:
    """Rewrite P into a proper pattern P' with L(P, n) ⊆ L(P', n) for n ≥ 1.

    Uses a(B^⊛)^n ⊆ (B^⊛)^n and (B^⊛)^n a ⊆ (B^⊛)^n for a ∈ B, and
    (C^⊛)^n (D^⊛)^n ⊆ (D^⊛)^n for C ⊆ D.
    """
    u = [list(w) for w in P.u]
    B = [set(b) for b in P.B]
    changed = True
    while changed:
        changed = False
        for i in range(len(B)):
            while u[i] and u[i][-1] in B[i]:
                u[i].pop()
                changed = True
            while u[i + 1] and u[i + 1][0] in B[i]:
                u[i + 1].pop(0)
                changed = True
        for i in range(1, len(B)):
            if not u[i] and (B[i - 1] <= B[i] or B[i] <= B[i - 1]):
                keep = B[i] if B[i - 1] <= B[i] else B[i - 1]
                u[i - 1:i + 1] = [u[i - 1]]
                B[i - 1:i + 1] = [keep]
                changed = True
                break
    return Pattern(tuple(map(tuple, u)), tuple(map(tuple, B)))


def pattern_lang_nfa(P: Pattern, n: int, A=None) -> Nfa:
    """NFA for L(P, n) over ambient alphabet A (default: letters of P)."""
    if n < 0:
        raise PtlsepError("pattern level must be nonnegative")
    A = make_alphabet(P.letters) if A is None else tuple(A)
    parts = [word_nfa(P.u[0], A)]
    for b, w in zip(P.B, P.u[1:]):
        parts.extend(exact_alphabet_nfa(b, A) for _ in range(n))
        parts.append(word_nfa(w, A))
    return concat_all(parts, A)


# ---------------------------------------------------------------------------
# enumeration

def _nonempty_subsets(A):
    return [c for k in range(1, len(A) + 1) for c in combinations(A, k)]


def _words_of_length(A, k):
    return list(product(A, repeat=k))


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def patterns_of_size(A, s: int) -> list:
    """All proper patterns over A of size s, in canonical order."""
    A = make_alphabet(A)
    blocks = _nonempty_subsets(A)
    out = []
    for p in range(0, s + 1):
        letters = s - p
        for Bs in product(blocks, repeat=p):
            for lens in _compositions(letters, p + 1):
                for us in product(*(_words_of_length(A, k) for k in lens)):
                    P = Pattern(us, Bs)
                    if P.is_proper():
                        out.append(P)
    out.sort(key=Pattern.sort_key)
    return out


class PatternStream:
    """Restartable enumeration of all proper patterns by size, then canonical order.

    The cursor (size, index) names the next pattern to be produced.
    """

    def __init__(self, A, cursor=(0, 0)):
        self.alphabet = make_alphabet(A)
        self.size, self.index = cursor
        self._tier = None

    @property
    def cursor(self):
        return (self.size, self.index)

    def tier(self, s):
        if self._tier is None or self._tier[0] != s:
            self._tier = (s, patterns_of_size(self.alphabet, s))
        return self._tier[1]

    def __iter__(self):
        return self

    def __next__(self) -> Pattern:
        while True:
            items = self.tier(self.size)
            if self.index < len(items):
                P = items[self.index]
                self.index += 1
                return P
            self.size += 1
            self.index = 0


def enumerate_patterns(A):
    return PatternStream(A)


# ---------------------------------------------------------------------------
# containment

def pattern_markers(p: int) -> list:
    return [f"${i}" for i in range(1, p + 1)]


def marked_blocks_nfa(B, marker, A) -> Nfa:
    """$ (B^⊛ $)*  — equivalently ($ B^⊛)* $."""
    B = tuple(sorted(set(B)))
    full = frozenset(B)
    b = Builder(A)
    b.initial.add("in")
    b.final.add(frozenset())
    b.add("in", marker, frozenset())
    todo, seen = [frozenset()], {frozenset()}
    while todo:
        S = todo.pop()
        for x in B:
            T = S | {x}
            b.add(S, x, T)
            if T not in seen:
                seen.add(T)
                todo.append(T)
        if S == full:
            b.add(S, marker, frozenset())
    return b.build()


def pipeline_automata(P: Pattern, A):
    """The two restriction languages over A ∪ markers.

    R2 = u0 (B1 ∪ {$1})* u1 ... ;  R3 = u0 ($1 B1^⊛)* $1 u1 ...
    """
    marks = pattern_markers(P.p)
    A2 = make_alphabet(set(A) | set(marks))
    r2 = [word_nfa(P.u[0], A2)]
    r3 = [word_nfa(P.u[0], A2)]
    for b, m, w in zip(P.B, marks, P.u[1:]):
        r2 += [star_nfa(set(b) | {m}, A2), word_nfa(w, A2)]
        r3 += [marked_blocks_nfa(b, m, A2), word_nfa(w, A2)]
    return A2, marks, concat_all(r2, A2), concat_all(r3, A2)


def pattern_pipeline(L: LangRef, P: Pattern):
    """Yield the stages L1..L4 of the containment pipeline (for inspection)."""
    A = L.alphabet
    A2, marks, R2, R3 = pipeline_automata(P, A)
    L1 = L.apply(pad_upward(A, marks))
    yield L1
    L2 = L1.apply(restrict(R2))
    yield L2
    L3 = L2.apply(restrict(R3))
    yield L3
    yield L3.apply(project(A2, marks))


def contains_pattern(L, P: Pattern) -> bool:
    """L ∩ L(P, n) ≠ ∅ for every n, decided as a diagonal problem."""
    L = LangRef.of(L)
    check_user_alphabet(L.alphabet)
    A = make_alphabet(set(L.alphabet) | P.letters)
    L = L.pad(A)
    if P.p == 0:
        return L.contains(P.u[0])
    if L.is_regular:
        *_, L4 = pattern_pipeline(L, P)
        return L4.diagonal()
    A2, marks, R2, R3 = pipeline_automata(P, A)
    T = compose_fst(pad_upward(A, marks), restrict(R2))
    T = compose_fst(T, restrict(R3))
    T = compose_fst(T, project(A2, marks))
    if not T.states:
        return False
    return L.apply(T).diagonal()
