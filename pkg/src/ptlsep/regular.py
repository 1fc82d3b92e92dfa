"""Nondeterministic finite automata and the regular-language toolbox.

States are the integers ``0 .. states-1``; a transition is ``(p, label, q)``
where ``label == ""`` stands for an ε-move.  Automata are immutable; every
operation returns a new automaton.
"""
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
import json

from .errors import AlphabetMismatch, GuardError, PtlsepError
from .graphs import reachable, sccs
from .ideals import Block, Ideal, Opt
from .words import alphabet as make_alphabet

EPS = ""
MAX_DIAGONAL_ALPHABET = 16
MAX_DFA_STATES = 200_000


@dataclass(frozen=True, eq=False)
class Nfa:
    alphabet: tuple
    states: int
    initial: frozenset
    final: frozenset
    transitions: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        object.__setattr__(self, "transitions", tuple(sorted(set(map(tuple, self.transitions)))))
        if len(set(self.alphabet)) != len(self.alphabet):
            raise PtlsepError("alphabet letters must be distinct")
        n = self.states
        for s in self.initial | self.final:
            if not 0 <= s < n:
                raise PtlsepError(f"state {s} out of range 0..{n - 1}")
        letters = set(self.alphabet)
        for p, a, q in self.transitions:
            if not (0 <= p < n and 0 <= q < n):
                raise PtlsepError(f"transition {(p, a, q)} uses unknown state")
            if a != EPS and a not in letters:
                raise PtlsepError(f"transition label {a!r} not in alphabet")

    def __repr__(self):
        return (f"Nfa(alphabet={list(self.alphabet)}, states={self.states}, "
                f"initial={sorted(self.initial)}, final={sorted(self.final)}, "
                f"transitions={len(self.transitions)})")

    @cached_property
    def _succ(self):
        succ = [dict() for _ in range(self.states)]
        for p, a, q in self.transitions:
            succ[p].setdefault(a, []).append(q)
        return succ

    @cached_property
    def _eps_closure_table(self):
        return [frozenset(reachable([s], lambda v: self._succ[v].get(EPS, ())))
                for s in range(self.states)]

    def closure(self, states) -> frozenset:
        out = set()
        for s in states:
            out |= self._eps_closure_table[s]
        return frozenset(out)

    def step(self, states, letter) -> frozenset:
        """ε-closed successor set of an ε-closed set."""
        nxt = set()
        for s in states:
            nxt.update(self._succ[s].get(letter, ()))
        return self.closure(nxt)

    def start(self) -> frozenset:
        return self.closure(self.initial)

    def accepts(self, w) -> bool:
        cur = self.start()
        for a in w:
            if a not in self.alphabet:
                return False
            cur = self.step(cur, a)
            if not cur:
                return False
        return bool(cur & self.final)

    def successors(self, p):
        for a, qs in self._succ[p].items():
            for q in qs:
                yield a, q

    def useful_states(self) -> frozenset:
        fwd = reachable(self.initial, lambda v: (q for _, q in self.successors(v)))
        pred = [[] for _ in range(self.states)]
        for p, _, q in self.transitions:
            pred[q].append(p)
        bwd = reachable(self.final, lambda v: pred[v])
        return frozenset(fwd & bwd)

    def trim(self) -> "Nfa":
        keep = sorted(self.useful_states())
        if len(keep) == self.states:
            return self
        idx = {s: i for i, s in enumerate(keep)}
        return Nfa(self.alphabet, len(keep),
                   [idx[s] for s in self.initial if s in idx],
                   [idx[s] for s in self.final if s in idx],
                   [(idx[p], a, idx[q]) for p, a, q in self.transitions if p in idx and q in idx])

    def with_final(self, final) -> "Nfa":
        return Nfa(self.alphabet, self.states, self.initial, final, self.transitions)

    def letters_used(self) -> frozenset:
        return frozenset(a for _, a, _ in self.transitions if a != EPS)

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "states": self.states,
            "initial": sorted(self.initial),
            "final": sorted(self.final),
            "transitions": [[p, a, q] for p, a, q in self.transitions],
        }

    @classmethod
    def from_json(cls, data) -> "Nfa":
        try:
            return cls(tuple(data["alphabet"]), int(data["states"]), data["initial"],
                       data["final"], [tuple(t) for t in data["transitions"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise PtlsepError(f"malformed NFA JSON: {exc}") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def to_dot(self, name="nfa") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  node [shape=circle];']
        for s in sorted(self.final):
            lines.append(f"  {s} [shape=doublecircle];")
        for i, s in enumerate(sorted(self.initial)):
            lines.append(f'  init{i} [shape=point]; init{i} -> {s};')
        labels = {}
        for p, a, q in self.transitions:
            labels.setdefault((p, q), []).append(a if a != EPS else "ε")
        for (p, q), ls in sorted(labels.items()):
            text = ",".join(ls).replace('"', '\\"')
            lines.append(f'  {p} -> {q} [label="{text}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class Builder:
    """Accumulates an automaton whose states are arbitrary hashable keys."""

    def __init__(self, alphabet):
        self.alphabet = tuple(alphabet)
        self.index = {}
        self.initial = set()
        self.final = set()
        self.transitions = set()

    def state(self, key) -> int:
        if key not in self.index:
            self.index[key] = len(self.index)
        return self.index[key]

    def add(self, p, label, q):
        self.transitions.add((self.state(p), label, self.state(q)))

    def build(self, trim=True) -> Nfa:
        for k in list(self.initial) + list(self.final):
            self.state(k)
        m = Nfa(self.alphabet, len(self.index),
                [self.index[k] for k in self.initial],
                [self.index[k] for k in self.final],
                self.transitions)
        return m.trim() if trim else m


# ---------------------------------------------------------------------------
# constructors

def empty_nfa(A) -> Nfa:
    return Nfa(tuple(A), 1, [0], [], [])


def epsilon_nfa(A) -> Nfa:
    return Nfa(tuple(A), 1, [0], [0], [])


def universal_nfa(A) -> Nfa:
    return star_nfa(A, A)


def word_nfa(w, A) -> Nfa:
    w = tuple(w)
    return Nfa(tuple(A), len(w) + 1, [0], [len(w)], [(i, a, i + 1) for i, a in enumerate(w)])


def star_nfa(B, A) -> Nfa:
    """B* over ambient alphabet A."""
    return Nfa(tuple(A), 1, [0], [0], [(0, b, 0) for b in B])


def piece_nfa(u, A) -> Nfa:
    """Words having u as a subword: A* u1 A* ... A* uk A*."""
    u = tuple(u)
    if not set(u) <= set(A):
        raise PtlsepError("piece word uses letters outside the alphabet")
    trans = [(i, a, i) for i in range(len(u) + 1) for a in A]
    trans += [(i, a, i + 1) for i, a in enumerate(u)]
    return Nfa(tuple(A), len(u) + 1, [0], [len(u)], trans)


def exact_alphabet_nfa(B, A=None) -> Nfa:
    """B^⊛: words over B whose alphabet is exactly B."""
    B = tuple(sorted(set(B)))
    if not B:
        raise PtlsepError("exact-alphabet block needs a nonempty alphabet")
    A = B if A is None else tuple(A)
    if not set(B) <= set(A):
        raise PtlsepError("block alphabet not contained in ambient alphabet")
    full = (1 << len(B)) - 1
    trans = [(mask, b, mask | (1 << i)) for mask in range(full + 1) for i, b in enumerate(B)]
    return Nfa(A, full + 1, [0], [full], trans)


def ideal_to_nfa(ideal: Ideal, A=None) -> Nfa:
    atoms = ideal.atoms
    if A is None:
        A = make_alphabet(ideal.letters)
    trans = []
    for i, atom in enumerate(atoms):
        if isinstance(atom, Block):
            trans += [(i, b, i) for b in atom.letters]
            trans.append((i, EPS, i + 1))
        elif isinstance(atom, Opt):
            trans += [(i, atom.letter, i + 1), (i, EPS, i + 1)]
        else:
            raise PtlsepError(f"bad ideal atom {atom!r}")
    return Nfa(tuple(A), len(atoms) + 1, [0], [len(atoms)], trans)


# ---------------------------------------------------------------------------
# alphabet handling

def pad(M: Nfa, A) -> Nfa:
    """Extend M's alphabet with dead letters; the language is unchanged."""
    A = tuple(A)
    if tuple(M.alphabet) == A:
        return M
    if not set(M.alphabet) <= set(A):
        raise AlphabetMismatch(f"cannot pad {list(M.alphabet)} to {list(A)}")
    return Nfa(A, M.states, M.initial, M.final, M.transitions)


def common_alphabet(*machines) -> tuple:
    return make_alphabet(a for m in machines for a in m.alphabet)


def _check_same(X: Nfa, Y: Nfa):
    if set(X.alphabet) != set(Y.alphabet):
        raise AlphabetMismatch(f"alphabets differ: {list(X.alphabet)} vs {list(Y.alphabet)}")


# ---------------------------------------------------------------------------
# boolean algebra

def intersect(X: Nfa, Y: Nfa) -> Nfa:
    _check_same(X, Y)
    b = Builder(X.alphabet)
    start = [(p, q) for p in X.initial for q in Y.initial]
    b.initial.update(start)
    seen = set(start)
    todo = list(start)
    while todo:
        p, q = todo.pop()
        if p in X.final and q in Y.final:
            b.final.add((p, q))
        nxt = []
        for a, p2 in X.successors(p):
            if a == EPS:
                nxt.append((EPS, (p2, q)))
            else:
                nxt.extend((a, (p2, q2)) for q2 in Y._succ[q].get(a, ()))
        nxt.extend((EPS, (p, q2)) for q2 in Y._succ[q].get(EPS, ()))
        for a, s in nxt:
            b.add((p, q), a, s)
            if s not in seen:
                seen.add(s)
                todo.append(s)
    return b.build()


def union(X: Nfa, Y: Nfa) -> Nfa:
    _check_same(X, Y)
    off = X.states
    return Nfa(X.alphabet, X.states + Y.states,
               set(X.initial) | {s + off for s in Y.initial},
               set(X.final) | {s + off for s in Y.final},
               list(X.transitions) + [(p + off, a, q + off) for p, a, q in Y.transitions])


def union_all(machines, A) -> Nfa:
    out = empty_nfa(A)
    for m in machines:
        out = union(out, pad(m, A))
    return out


def concat(X: Nfa, Y: Nfa) -> Nfa:
    _check_same(X, Y)
    off = X.states
    trans = list(X.transitions) + [(p + off, a, q + off) for p, a, q in Y.transitions]
    trans += [(f, EPS, s + off) for f in X.final for s in Y.initial]
    return Nfa(X.alphabet, X.states + Y.states, X.initial, {s + off for s in Y.final}, trans)


def concat_all(machines, A) -> Nfa:
    out = epsilon_nfa(A)
    for m in machines:
        out = concat(out, pad(m, A))
    return out


def determinize(M: Nfa, limit=MAX_DFA_STATES) -> Nfa:
    """Complete DFA (as an ε-free Nfa with one initial state) for L(M)."""
    start = M.start()
    index = {start: 0}
    order = [start]
    trans = []
    i = 0
    while i < len(order):
        S = order[i]
        for a in M.alphabet:
            T = M.step(S, a)
            if T not in index:
                if len(index) >= limit:
                    raise GuardError(f"determinization exceeds {limit} states")
                index[T] = len(order)
                order.append(T)
            trans.append((i, a, index[T]))
        i += 1
    final = [j for j, S in enumerate(order) if S & M.final]
    return Nfa(M.alphabet, len(order), [0], final, trans)


def complement(M: Nfa) -> Nfa:
    D = determinize(M)
    return D.with_final(set(range(D.states)) - set(D.final))


def is_empty(M: Nfa) -> bool:
    fwd = reachable(M.initial, lambda v: (q for _, q in M.successors(v)))
    return not (fwd & M.final)


def includes(X: Nfa, Y: Nfa) -> bool:
    """L(X) ⊆ L(Y); Y is determinized on the fly."""
    _check_same(X, Y)
    return inclusion_counterexample(X, Y) is None


def inclusion_counterexample(X: Nfa, Y: Nfa):
    """A word in L(X) \\ L(Y) (found breadth-first), or None."""
    y0 = Y.start()
    start = [(p, y0) for p in sorted(X.initial)]
    parent = {s: None for s in start}
    todo = deque(start)
    while todo:
        node = todo.popleft()
        p, S = node
        if p in X.final and not (S & Y.final):
            w = []
            while parent[node] is not None:
                node, a = parent[node]
                if a != EPS:
                    w.append(a)
            return tuple(reversed(w))
        for a, p2 in X.successors(p):
            nxt = (p2, S) if a == EPS else (p2, Y.step(S, a))
            if nxt not in parent:
                parent[nxt] = (node, a)
                todo.append(nxt)
    return None


def equivalent(X: Nfa, Y: Nfa) -> bool:
    return includes(X, Y) and includes(Y, X)


# ---------------------------------------------------------------------------
# closures

def dc_nfa(M: Nfa) -> Nfa:
    """Downward closure: every letter move gets a parallel ε-move."""
    extra = [(p, EPS, q) for p, a, q in M.transitions if a != EPS]
    return Nfa(M.alphabet, M.states, M.initial, M.final, list(M.transitions) + extra)


def uc_nfa(M: Nfa, B) -> Nfa:
    """B-upward closure over A ∪ B: self-loops on B at every state."""
    A = make_alphabet(set(M.alphabet) | set(B))
    loops = [(s, b, s) for s in range(M.states) for b in B]
    return Nfa(A, M.states, M.initial, M.final, list(M.transitions) + loops)


def is_downward_closed(M: Nfa) -> bool:
    return includes(dc_nfa(M), M)


# ---------------------------------------------------------------------------
# diagonal problem

def scc_structure(M: Nfa):
    """SCCs of the trimmed automaton with their internal letter sets.

    Returns (trimmed, comps, comp_of, letters) where letters[c] is the set of
    letters on transitions inside component c (all such moves lie on cycles).
    """
    T = M.trim()
    comps = sccs(range(T.states), lambda v: (q for _, q in T.successors(v)))
    comp_of = {}
    for ci, comp in enumerate(comps):
        for s in comp:
            comp_of[s] = ci
    letters = [set() for _ in comps]
    for p, a, q in T.transitions:
        if a != EPS and comp_of[p] == comp_of[q]:
            letters[comp_of[p]].add(a)
    return T, comps, comp_of, letters


def diagonal_nfa(M: Nfa) -> bool:
    """Is every (m,...,m) dominated by the Parikh image of L(M)?"""
    A = tuple(M.alphabet)
    if len(A) > MAX_DIAGONAL_ALPHABET:
        raise GuardError(f"diagonal check limited to {MAX_DIAGONAL_ALPHABET} letters")
    bit = {a: 1 << i for i, a in enumerate(A)}
    full = (1 << len(A)) - 1
    T, comps, comp_of, letters = scc_structure(M)
    if not T.initial:
        return False
    own = [sum(bit[a] for a in ls) for ls in letters]
    reach = [set() for _ in comps]
    for s in T.initial:
        reach[comp_of[s]].add(own[comp_of[s]])
    succ_comps = [set() for _ in comps]
    for p, _, q in T.transitions:
        if comp_of[p] != comp_of[q]:
            succ_comps[comp_of[p]].add(comp_of[q])
    final_comps = {comp_of[s] for s in T.final}
    # Tarjan yields sinks first, so walk components in reverse
    for ci in reversed(range(len(comps))):
        if ci in final_comps and full in reach[ci]:
            return True
        for cj in succ_comps[ci]:
            reach[cj].update(m | own[cj] for m in reach[ci])
    return False


# ---------------------------------------------------------------------------
# enumeration helpers (test oracles)

def words_upto(M: Nfa, n: int) -> set:
    """All accepted words of length <= n."""
    out = set()
    layer = {(): M.start()}
    for length in range(n + 1):
        for w, S in layer.items():
            if S & M.final:
                out.add(w)
        if length == n:
            break
        nxt = {}
        for w, S in layer.items():
            for a in M.alphabet:
                T = M.step(S, a)
                if T:
                    nxt[w + (a,)] = T
        layer = nxt
    return out


def shortest_word(M: Nfa):
    """A shortest accepted word, or None."""
    return inclusion_counterexample(M, empty_nfa(M.alphabet))
