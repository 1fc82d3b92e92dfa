"""Context-free grammars: reduction, emptiness, slices and the diagonal problem.

Nonterminal names may be any hashable value disjoint from the alphabet;
parsed grammars use strings, generated grammars use tuples.
"""
from dataclasses import dataclass
from functools import cached_property
from itertools import count

from .errors import GuardError, ParseError, PtlsepError
from .graphs import sccs
from .regular import EPS, MAX_DIAGONAL_ALPHABET, Nfa
from .words import alphabet as make_alphabet, check_symbol

MAX_SLICE = 12


@dataclass(frozen=True, eq=False)
class Cfg:
    alphabet: tuple
    nonterminals: tuple
    start: object
    productions: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        nts = tuple(dict.fromkeys(self.nonterminals))
        object.__setattr__(self, "nonterminals", nts)
        prods = tuple(dict.fromkeys((lhs, tuple(body)) for lhs, body in self.productions))
        object.__setattr__(self, "productions", prods)
        ntset = set(nts)
        letters = set(self.alphabet)
        if len(letters) != len(self.alphabet):
            raise PtlsepError("alphabet letters must be distinct")
        if ntset & letters:
            raise PtlsepError(f"nonterminals overlap alphabet: {sorted(map(str, ntset & letters))}")
        if self.start not in ntset:
            raise PtlsepError(f"start symbol {self.start!r} is not a nonterminal")
        for lhs, body in prods:
            if lhs not in ntset:
                raise PtlsepError(f"production for undeclared nonterminal {lhs!r}")
            for sym in body:
                if sym not in ntset and sym not in letters:
                    raise PtlsepError(f"symbol {sym!r} in production of {lhs!r} is undeclared")

    def __repr__(self):
        return (f"Cfg(alphabet={list(self.alphabet)}, nonterminals={len(self.nonterminals)}, "
                f"productions={len(self.productions)})")

    @cached_property
    def _ntset(self):
        return frozenset(self.nonterminals)

    def is_nonterminal(self, sym) -> bool:
        return sym in self._ntset

    @cached_property
    def rules(self) -> dict:
        out = {n: [] for n in self.nonterminals}
        for lhs, body in self.productions:
            out[lhs].append(body)
        return out

    def with_alphabet(self, A) -> "Cfg":
        A = tuple(A)
        if not set(self.alphabet) <= set(A):
            raise PtlsepError("cannot shrink a grammar alphabet by padding")
        return Cfg(A, self.nonterminals, self.start, self.productions)


def fresh(prefix, taken):
    if prefix not in taken:
        return prefix
    for i in count(1):
        name = f"{prefix}{i}"
        if name not in taken:
            return name


def empty_cfg(A) -> Cfg:
    return Cfg(tuple(A), (("empty",),), ("empty",), ())


# ---------------------------------------------------------------------------
# text format

def parse_cfg(text: str, allow_markers=False) -> Cfg:
    """Parse ``start S`` / ``S -> a S b | `` style grammar text."""
    start = None
    declared = []
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        toks = line.split()
        if toks[0] == "start":
            if len(toks) != 2:
                raise ParseError("expected 'start <nonterminal>'", lineno, 1)
            start = toks[1]
            continue
        if toks[0] == "alphabet":
            declared.extend(toks[1:])
            continue
        if len(toks) < 2 or toks[1] != "->":
            col = raw.find(toks[1]) + 1 if len(toks) > 1 else len(raw) + 1
            raise ParseError("expected '<nonterminal> -> body | ...'", lineno, col)
        lhs = toks[0]
        body = []
        for tok in toks[2:]:
            if tok == "|":
                rules.append((lineno, lhs, tuple(body)))
                body = []
            else:
                body.append(tok)
        rules.append((lineno, lhs, tuple(body)))
    if not rules:
        raise ParseError("grammar has no productions")
    nts = list(dict.fromkeys(lhs for _, lhs, _ in rules))
    if start is None:
        start = nts[0]
    if start not in nts:
        nts.insert(0, start)
    ntset = set(nts)
    letters = set(declared)
    for lineno, lhs, body in rules:
        for sym in body:
            if sym not in ntset:
                try:
                    check_symbol(sym, allow_markers)
                except PtlsepError as exc:
                    col = text.splitlines()[lineno - 1].find(sym) + 1
                    raise type(exc)(f"line {lineno}, column {col}: {exc}") from None
                letters.add(sym)
    for sym in declared:
        check_symbol(sym, allow_markers)
    clash = letters & ntset
    if clash:
        raise ParseError(f"symbols used both as terminal and nonterminal: {sorted(clash)}")
    return Cfg(make_alphabet(letters), tuple(nts), start, [(lhs, body) for _, lhs, body in rules])


def format_cfg(G: Cfg) -> str:
    """Serialize to the text format; nonterminals are renamed N0, N1, ..."""
    taken = set(G.alphabet) | {"|", "->", "start", "alphabet"}
    names = {}
    for nt in [G.start] + [n for n in G.nonterminals if n != G.start]:
        if isinstance(nt, str) and nt not in taken and nt not in names.values() and "#" not in nt:
            names[nt] = nt
        else:
            names[nt] = fresh(f"N{len(names)}", taken | set(names.values()))
    lines = [f"start {names[G.start]}", "alphabet " + " ".join(G.alphabet)]
    for nt in names:
        bodies = G.rules.get(nt, [])
        if not bodies:
            continue
        alts = [" ".join(names.get(s, s) if G.is_nonterminal(s) else s for s in b) for b in bodies]
        lines.append(f"{names[nt]} -> " + " | ".join(alts))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# reduction and emptiness

def productive(G: Cfg) -> set:
    prod = set()
    changed = True
    while changed:
        changed = False
        for lhs, body in G.productions:
            if lhs not in prod and all(not G.is_nonterminal(s) or s in prod for s in body):
                prod.add(lhs)
                changed = True
    return prod


def reduce_cfg(G: Cfg) -> Cfg:
    """Keep only productive and reachable nonterminals."""
    prod = productive(G)
    if G.start not in prod:
        return empty_cfg(G.alphabet)
    good = [(lhs, body) for lhs, body in G.productions
            if lhs in prod and all(not G.is_nonterminal(s) or s in prod for s in body)]
    by_lhs = {}
    for lhs, body in good:
        by_lhs.setdefault(lhs, []).append(body)
    seen = {G.start}
    todo = [G.start]
    while todo:
        n = todo.pop()
        for body in by_lhs.get(n, ()):
            for s in body:
                if G.is_nonterminal(s) and s not in seen:
                    seen.add(s)
                    todo.append(s)
    nts = [n for n in G.nonterminals if n in seen]
    return Cfg(G.alphabet, nts, G.start, [(l, b) for l, b in good if l in seen])


def is_empty_cfg(G: Cfg) -> bool:
    return G.start not in productive(G)


def shortest_cfg_word(G: Cfg):
    """The length-lexicographically least word of L(G), or None if it is empty.

    For a fixed body the least derivable word is the concatenation of the least
    words of its symbols, so a fixpoint over all nonterminals settles it.
    """
    best = {}

    def key(w):
        return (len(w), w)

    changed = True
    while changed:
        changed = False
        for lhs, body in G.productions:
            parts = []
            for s in body:
                if G.is_nonterminal(s):
                    if s not in best:
                        break
                    parts.append(best[s])
                else:
                    parts.append((s,))
            else:
                w = tuple(x for part in parts for x in part)
                if lhs not in best or key(w) < key(best[lhs]):
                    best[lhs] = w
                    changed = True
    return best.get(G.start)


def binarize(G: Cfg) -> Cfg:
    """Equivalent grammar whose production bodies have length <= 2."""
    if all(len(b) <= 2 for _, b in G.productions):
        return G
    nts = list(G.nonterminals)
    prods = []
    for i, (lhs, body) in enumerate(G.productions):
        if len(body) <= 2:
            prods.append((lhs, body))
            continue
        cur = lhs
        for k in range(len(body) - 2):
            nxt = ("bin", lhs, i, k)
            nts.append(nxt)
            prods.append((cur, (body[k], nxt)))
            cur = nxt
        prods.append((cur, body[-2:]))
    return Cfg(G.alphabet, nts, G.start, prods)


def nfa_to_rlcfg(M: Nfa) -> Cfg:
    """Right-linear grammar with one nonterminal per state (plus a start)."""
    start = ("start",)
    nts = [start] + [("q", i) for i in range(M.states)]
    prods = [(start, (("q", s),)) for s in sorted(M.initial)]
    for p, a, q in M.transitions:
        prods.append((("q", p), (("q", q),) if a == EPS else (a, ("q", q))))
    for f in sorted(M.final):
        prods.append((("q", f), ()))
    return reduce_cfg(Cfg(M.alphabet, nts, start, prods))


# ---------------------------------------------------------------------------
# slices

def slice_cfg(G: Cfg, length: int) -> set:
    """All words of L(G) of length <= `length` (a test oracle)."""
    if length > MAX_SLICE:
        raise GuardError(f"slice length {length} exceeds guard {MAX_SLICE}")
    G = reduce_cfg(G)
    yields = {n: set() for n in G.nonterminals}

    def sym_words(s):
        return yields[s] if G.is_nonterminal(s) else {(s,)}

    changed = True
    while changed:
        changed = False
        for lhs, body in G.productions:
            acc = {()}
            for s in body:
                acc = {u + v for u in acc for v in sym_words(s) if len(u) + len(v) <= length}
                if not acc:
                    break
            if not acc <= yields[lhs]:
                yields[lhs] |= acc
                changed = True
    return yields[G.start]


# ---------------------------------------------------------------------------
# diagonal problem

def producible(G: Cfg) -> dict:
    """Letters occurring in some terminal word derivable from each nonterminal."""
    prod = productive(G)
    out = {n: set() for n in G.nonterminals}
    changed = True
    while changed:
        changed = False
        for lhs, body in G.productions:
            if lhs not in prod or not all(not G.is_nonterminal(s) or s in prod for s in body):
                continue
            new = set()
            for s in body:
                new |= out[s] if G.is_nonterminal(s) else {s}
            if not new <= out[lhs]:
                out[lhs] |= new
                changed = True
    return out


def pump_alphabets(G: Cfg) -> dict:
    """pump(N): letters a with N =>+ uNv and a in alph(uv).

    Computed on the self-embedding graph: an edge N -> M for each occurrence of
    M in an N-production, labelled with the letters the rest of the body can
    produce; pump(N) collects the labels of edges inside N's cyclic SCC.
    """
    prodc = producible(G)
    edges = []
    for lhs, body in G.productions:
        for i, s in enumerate(body):
            if not G.is_nonterminal(s):
                continue
            label = set()
            for j, t in enumerate(body):
                if j != i:
                    label |= prodc[t] if G.is_nonterminal(t) else {t}
            edges.append((lhs, s, frozenset(label)))
    succ = {n: [] for n in G.nonterminals}
    for a, b, _ in edges:
        succ[a].append(b)
    comp_of = {}
    for ci, comp in enumerate(sccs(G.nonterminals, lambda v: succ[v])):
        for n in comp:
            comp_of[n] = ci
    cyclic = set()
    letters = {}
    for a, b, label in edges:
        if comp_of[a] == comp_of[b]:
            c = comp_of[a]
            cyclic.add(c)
            letters.setdefault(c, set()).update(label)
    return {n: frozenset(letters.get(comp_of[n], ())) if comp_of[n] in cyclic else frozenset()
            for n in G.nonterminals}


def _maximal(masks):
    masks = sorted(set(masks), key=lambda m: -bin(m).count("1"))
    out = []
    for m in masks:
        if not any(m | o == o for o in out):
            out.append(m)
    return out


def diagonal_cfg(G: Cfg) -> bool:
    """Decide the diagonal problem by the pump-coverage fixpoint.

    A derivation tree in which the pump alphabets of the occurring
    nonterminals cover A can be pumped to dominate (m,...,m) for every m;
    conversely any tree can be shrunk by cutting N..N repetitions, and every
    cut-away letter lies in the pump set of a surviving N.
    """
    G = reduce_cfg(G)
    A = G.alphabet
    if len(A) > MAX_DIAGONAL_ALPHABET:
        raise GuardError(f"diagonal check limited to {MAX_DIAGONAL_ALPHABET} letters")
    if is_empty_cfg(G):
        return False
    bit = {a: 1 << i for i, a in enumerate(A)}
    full = (1 << len(A)) - 1
    pump = {n: sum(bit[a] for a in ls) for n, ls in pump_alphabets(G).items()}
    cov = {n: [] for n in G.nonterminals}
    changed = True
    while changed:
        changed = False
        for lhs, body in G.productions:
            combos = [pump[lhs]]
            for s in body:
                if not G.is_nonterminal(s):
                    continue
                if not cov[s]:
                    combos = []
                    break
                combos = _maximal(c | d for c in combos for d in cov[s])
            for c in combos:
                if not any(c | o == o for o in cov[lhs]):
                    cov[lhs] = _maximal(cov[lhs] + [c])
                    changed = True
        if full in cov[G.start]:
            return True
    return full in cov[G.start]
