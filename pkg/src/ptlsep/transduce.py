"""Rational transducers and their application to automata and grammars.

Every closure step the decision procedures need (upward closure, regular
restriction, projection, doubling, ideal probing) is a transducer applied
through `apply_fst_nfa` or `apply_fst_cfg`.
"""
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property

from .errors import AlphabetMismatch, PtlsepError
from .grammar import Cfg, binarize, reduce_cfg
from .graphs import reachable
from .ideals import Block
from .regular import EPS, Builder, Nfa
from .words import alphabet as make_alphabet


@dataclass(frozen=True, eq=False)
class Fst:
    input_alphabet: tuple
    output_alphabet: tuple
    states: int
    initial: frozenset
    final: frozenset
    transitions: tuple  # (p, input letter or "", output word, q)

    def __post_init__(self):
        object.__setattr__(self, "input_alphabet", tuple(self.input_alphabet))
        object.__setattr__(self, "output_alphabet", tuple(self.output_alphabet))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        trans = tuple(sorted({(p, a, tuple(o), q) for p, a, o, q in self.transitions}))
        object.__setattr__(self, "transitions", trans)
        ins, outs = set(self.input_alphabet), set(self.output_alphabet)
        for p, a, o, q in trans:
            if not (0 <= p < self.states and 0 <= q < self.states):
                raise PtlsepError(f"transducer transition {(p, a, o, q)} uses unknown state")
            if a != EPS and a not in ins:
                raise PtlsepError(f"input label {a!r} not in input alphabet")
            if not set(o) <= outs:
                raise PtlsepError(f"output {o!r} not over output alphabet")

    def __repr__(self):
        return (f"Fst(in={list(self.input_alphabet)}, out={list(self.output_alphabet)}, "
                f"states={self.states}, transitions={len(self.transitions)})")

    @property
    def is_normal(self) -> bool:
        return all(len(o) <= 1 for _, _, o, _ in self.transitions)

    @cached_property
    def _by_state(self):
        out = [[] for _ in range(self.states)]
        for p, a, o, q in self.transitions:
            out[p].append((a, o, q))
        return out

    @cached_property
    def eps_reach(self):
        """States reachable through input-ε moves (reflexive)."""
        return [frozenset(reachable([s], lambda v: (q for a, _, q in self._by_state[v] if a == EPS)))
                for s in range(self.states)]

    @cached_property
    def _read_table(self):
        table = defaultdict(set)
        for p, a, _, q in self.transitions:
            if a != EPS:
                table[p, a].add(q)
        return table

    def read_reach(self, a, p) -> frozenset:
        """States reachable from p reading exactly the letter a (ε-moves around)."""
        out = set()
        for p1 in self.eps_reach[p]:
            for q in self._read_table.get((p1, a), ()):
                out |= self.eps_reach[q]
        return frozenset(out)

    def outputs(self, w, max_len=8) -> set:
        """All outputs of length <= max_len for input w (test oracle)."""
        w = tuple(w)
        start = {(s, 0, ()) for s in self.initial}
        seen = set(start)
        todo = list(start)
        res = set()
        while todo:
            s, i, out = todo.pop()
            if i == len(w) and s in self.final:
                res.add(out)
            for a, o, q in self._by_state[s]:
                if a == EPS:
                    nxt = (q, i, out + o)
                elif i < len(w) and w[i] == a:
                    nxt = (q, i + 1, out + o)
                else:
                    continue
                if len(nxt[2]) <= max_len and nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return res

    def trim(self) -> "Fst":
        fwd = reachable(self.initial, lambda v: (q for _, _, q in self._by_state[v]))
        pred = [[] for _ in range(self.states)]
        for p, _, _, q in self.transitions:
            pred[q].append(p)
        bwd = reachable(self.final, lambda v: pred[v])
        keep = sorted(fwd & bwd)
        if len(keep) == self.states:
            return self
        idx = {s: i for i, s in enumerate(keep)}
        return Fst(self.input_alphabet, self.output_alphabet, len(keep),
                   [idx[s] for s in self.initial if s in idx],
                   [idx[s] for s in self.final if s in idx],
                   [(idx[p], a, o, idx[q]) for p, a, o, q in self.transitions
                    if p in idx and q in idx])


def normalize_fst(T: Fst) -> Fst:
    """Split multi-letter outputs through fresh states."""
    if T.is_normal:
        return T
    n = T.states
    trans = []
    for p, a, o, q in T.transitions:
        if len(o) <= 1:
            trans.append((p, a, o, q))
            continue
        cur, label = p, a
        for x in o[:-1]:
            trans.append((cur, label, (x,), n))
            cur, label = n, EPS
            n += 1
        trans.append((cur, EPS, o[-1:], q))
    return Fst(T.input_alphabet, T.output_alphabet, n, T.initial, T.final, trans)


def compose_fst(T1: Fst, T2: Fst) -> Fst:
    """The relation {(x, z) : (x, y) in T1, (y, z) in T2}."""
    if not set(T1.output_alphabet) <= set(T2.input_alphabet):
        raise AlphabetMismatch("T1 output alphabet not within T2 input alphabet")
    T1, T2 = normalize_fst(T1), normalize_fst(T2)
    index = {}
    trans = []

    def sid(pair):
        if pair not in index:
            index[pair] = len(index)
            todo.append(pair)
        return index[pair]

    todo = deque()
    initial = [sid((p, q)) for p in sorted(T1.initial) for q in sorted(T2.initial)]
    while todo:
        p, q = todo.popleft()
        src = index[p, q]
        for a, o, p2 in T1._by_state[p]:
            if not o:
                trans.append((src, a, (), sid((p2, q))))
                continue
            for b, o2, q2 in T2._by_state[q]:
                if b == o[0]:
                    trans.append((src, a, o2, sid((p2, q2))))
        for b, o2, q2 in T2._by_state[q]:
            if b == EPS:
                trans.append((src, EPS, o2, sid((p, q2))))
    final = [i for (p, q), i in index.items() if p in T1.final and q in T2.final]
    return Fst(T1.input_alphabet, T2.output_alphabet, len(index), initial, final, trans).trim()


# ---------------------------------------------------------------------------
# application

def _check_input(alph, T: Fst):
    if set(alph) != set(T.input_alphabet):
        raise AlphabetMismatch(
            f"language alphabet {list(alph)} differs from transducer input {list(T.input_alphabet)}")


def apply_fst_nfa(M: Nfa, T: Fst) -> Nfa:
    """NFA for TL(M) by the product construction."""
    _check_input(M.alphabet, T)
    T = normalize_fst(T)
    b = Builder(T.output_alphabet)
    start = [(m, t) for m in sorted(M.initial) for t in sorted(T.initial)]
    b.initial.update(start)
    seen = set(start)
    todo = list(start)
    while todo:
        m, t = todo.pop()
        if m in M.final and t in T.final:
            b.final.add((m, t))
        moves = []
        for a, m2 in M.successors(m):
            if a == EPS:
                moves.append(((m2, t), EPS))
            else:
                moves.extend(((m2, t2), o[0] if o else EPS)
                             for x, o, t2 in T._by_state[t] if x == a)
        moves.extend(((m, t2), o[0] if o else EPS) for x, o, t2 in T._by_state[t] if x == EPS)
        for nxt, label in moves:
            b.add((m, t), label, nxt)
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return b.build()


def cfg_relation(G: Cfg, sources, term_reach, eps_reach):
    """Summaries of G over a finite automaton-like structure.

    Returns a dict mapping (X, p) to the set of states q such that some word
    derivable from X labels a path p -> q.  Only pairs demanded from
    (start, s) for s in `sources` are computed.  `term_reach(a, p)` and
    `eps_reach(p)` give the one-letter and empty-word reachability.
    """
    rel = {}
    readers = defaultdict(set)
    queue = deque()
    queued = set()

    def push(key):
        if key not in queued:
            queued.add(key)
            queue.append(key)

    def demand(key):
        if key not in rel:
            rel[key] = set()
            push(key)
        return rel[key]

    for s in sources:
        demand((G.start, s))
    rules = G.rules
    while queue:
        key = queue.popleft()
        queued.discard(key)
        X, p = key
        new = set()
        for body in rules.get(X, ()):
            if not body:
                new |= eps_reach(p)
                continue
            frontier = {p}
            for Y in body:
                nxt = set()
                if G.is_nonterminal(Y):
                    for r in frontier:
                        k2 = (Y, r)
                        nxt |= demand(k2)
                        readers[k2].add(key)
                else:
                    for r in frontier:
                        nxt |= term_reach(Y, r)
                frontier = nxt
                if not frontier:
                    break
            new |= frontier
        cur = rel[key]
        if not new <= cur:
            cur |= new
            for rd in readers[key]:
                push(rd)
    return rel


def cfg_nfa_reach(G: Cfg, M: Nfa) -> dict:
    """For each initial state s of M, the states reachable by reading a word of L(G)."""
    rel = cfg_relation(G, M.initial,
                       lambda a, p: M.step(M._eps_closure_table[p], a),
                       lambda p: M._eps_closure_table[p])
    return {s: frozenset(rel[G.start, s]) for s in M.initial}


def cfg_meets_nfa(G: Cfg, M: Nfa) -> bool:
    """L(G) ∩ L(M) ≠ ∅."""
    if set(G.alphabet) != set(M.alphabet):
        raise AlphabetMismatch("grammar and automaton alphabets differ")
    return any(qs & M.final for qs in cfg_nfa_reach(G, M).values())


def apply_fst_cfg(G: Cfg, T: Fst) -> Cfg:
    """Grammar for TL(G) by the triple construction.

    Nonterminal (p, X, q) derives the outputs of T-paths p -> q reading a
    word derived from X; terminal and ε leaves expand through right-linear
    subgrammars that absorb the transducer's spontaneous (input-ε) output.
    """
    _check_input(G.alphabet, T)
    if not T.is_normal:
        raise PtlsepError("apply_fst_cfg requires a normalized transducer")
    G = binarize(reduce_cfg(G))
    rel = cfg_relation(G, T.initial, T.read_reach, lambda p: T.eps_reach[p])

    def reach(Y, p):
        if G.is_nonterminal(Y):
            return rel.get((Y, p), ())
        return T.read_reach(Y, p)

    def node(p, Y, q):
        return ("t", p, Y, q) if G.is_nonterminal(Y) else ("o", Y, p, q)

    start = ("start",)
    prods = []
    nts = [start]
    seen = set()
    todo = []

    def need(nt):
        if nt not in seen:
            seen.add(nt)
            nts.append(nt)
            todo.append(nt)
        return nt

    for s in sorted(T.initial):
        for q in sorted(rel[G.start, s] & T.final):
            prods.append((start, (need(("t", s, G.start, q)),)))
    while todo:
        nt = todo.pop()
        kind = nt[0]
        if kind == "t":
            _, p, X, q = nt
            for body in G.rules[X]:
                if not body:
                    if q in T.eps_reach[p]:
                        prods.append((nt, (need(("e", p, q)),)))
                elif len(body) == 1:
                    if q in reach(body[0], p):
                        prods.append((nt, (need(node(p, body[0], q)),)))
                else:
                    Y, Z = body
                    for r in sorted(reach(Y, p)):
                        if q in reach(Z, r):
                            prods.append((nt, (need(node(p, Y, r)), need(node(r, Z, q)))))
        elif kind == "o":
            _, a, p, q = nt
            for x, o, p2 in T._by_state[p]:
                if x == EPS and q in T.read_reach(a, p2):
                    prods.append((nt, o + (need(("o", a, p2, q)),)))
                elif x == a and q in T.eps_reach[p2]:
                    prods.append((nt, o + (need(("e", p2, q)),)))
        else:
            _, p, q = nt
            if p == q:
                prods.append((nt, ()))
            for x, o, p2 in T._by_state[p]:
                if x == EPS and q in T.eps_reach[p2]:
                    prods.append((nt, o + (need(("e", p2, q)),)))
    return reduce_cfg(Cfg(T.output_alphabet, nts, start, prods))


# ---------------------------------------------------------------------------
# canned transducers

def identity_fst(A) -> Fst:
    A = tuple(A)
    return Fst(A, A, 1, [0], [0], [(0, a, (a,), 0) for a in A])


def pad_upward(A, B) -> Fst:
    """B-upward closure: copy the input and insert letters of B anywhere."""
    A = tuple(A)
    out = make_alphabet(set(A) | set(B))
    trans = [(0, a, (a,), 0) for a in A] + [(0, EPS, (b,), 0) for b in B]
    return Fst(A, out, 1, [0], [0], trans)


def project(A, B) -> Fst:
    """B-projection: erase every letter outside B."""
    A = tuple(A)
    keep = set(B)
    out = make_alphabet(set(A) & keep)
    trans = [(0, a, (a,) if a in keep else (), 0) for a in A]
    return Fst(A, out, 1, [0], [0], trans)


def restrict(R: Nfa) -> Fst:
    """Identity restricted to L(R): realizes intersection with a regular language."""
    trans = [(p, a, (a,) if a != EPS else (), q) for p, a, q in R.transitions]
    return Fst(R.alphabet, R.alphabet, R.states, R.initial, R.final, trans)


def doubling_fst(order) -> Fst:
    """a1^k1 ... an^kn  ->  a1^(2k1) ... an^(2kn)."""
    order = tuple(order)
    n = len(order)
    if n == 0:
        return Fst((), (), 1, [0], [0], [])
    trans = [(i, a, (a, a), i) for i, a in enumerate(order)]
    trans += [(i, EPS, (), i + 1) for i in range(n - 1)]
    A = make_alphabet(order)
    return Fst(A, A, n, [0], range(n), trans)


def probe_markers(ideal) -> list:
    n = sum(isinstance(a, Block) for a in ideal.atoms)
    return [f"${k}" for k in range(n)]


def ideal_probe(ideal, A) -> Fst:
    """Match r0^j0 b1 r1^j1 ... as a subword of the input, output $0^j0 $1^j1 ...

    r_i lists the letters of block i once each, in alphabet order; opt letters
    must be matched.  Unmatched input letters are skipped silently.
    """
    A = tuple(A)
    markers = probe_markers(ideal)
    index = {}

    def sid(key):
        if key not in index:
            index[key] = len(index)
        return index[key]

    trans = []
    block_no = 0
    m = len(ideal.atoms)
    for i, atom in enumerate(ideal.atoms):
        if isinstance(atom, Block):
            r = atom.letters
            mark = (markers[block_no],)
            block_no += 1
            for pos, x in enumerate(r):
                last = pos == len(r) - 1
                trans.append((sid((i, pos)), x, mark if last else (), sid((i, 0 if last else pos + 1))))
            trans.append((sid((i, 0)), EPS, (), sid((i + 1, 0))))
        else:
            trans.append((sid((i, 0)), atom.letter, (), sid((i + 1, 0))))
    sid((m, 0))
    for key in list(index):
        trans.extend((index[key], a, (), index[key]) for a in A)
    return Fst(A, tuple(markers), len(index), [index[0, 0]], [index[m, 0]], trans)
