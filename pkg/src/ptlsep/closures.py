"""Ideals, ideal decomposition, downward closures of grammars, and the SUP.

Every downward-closed language is a finite union of ideals
B0* {b1,ε} B1* ... {bm,ε} Bm*.  The diagonal problem and the simultaneous
unboundedness problem (SUP) are interreducible; both directions are here.
"""
from itertools import combinations, permutations

from .errors import GuardError, IllFormedSupInstance, InvariantViolation, NotDownwardClosed, PtlsepError
from .grammar import Cfg, producible, reduce_cfg
from .graphs import sccs
from .ideals import Block, Ideal, Opt, ideal_leq, is_canonical, simplify
from .lang import LangRef
from .regular import (EPS, Nfa, complement, concat_all, dc_nfa, empty_nfa, epsilon_nfa, ideal_to_nfa,
                      includes, intersect, is_downward_closed, scc_structure, star_nfa, union_all)
from .transduce import ideal_probe, project
from .words import alphabet as make_alphabet

__all__ = ["Ideal", "Block", "Opt", "ideal_decompose", "ideal_in_dc", "dc_cfg", "dc_lang",
           "sup_decide", "sup_instance", "diagonal_via_sup", "chain_nfa", "ideals_of_size", "union_of_ideals"]


def ideal_key(I: Ideal):
    """Total order on ideals: by size, then atom by atom (blocks before opts)."""
    return (I.size, tuple((0, a.letters) if isinstance(a, Block) else (1, (a.letter,)) for a in I.atoms))


def union_of_ideals(ideals, A) -> Nfa:
    return union_all([ideal_to_nfa(I, A) for I in ideals], tuple(A))


def _maximal_ideals(ideals) -> list:
    """⊆-maximal ideals without duplicates, in ideal_key order."""
    uniq = sorted(set(ideals), key=ideal_key)
    out = []
    for i, I in enumerate(uniq):
        dominated = False
        for j, J in enumerate(uniq):
            if i != j and ideal_leq(I, J) and (j < i or not ideal_leq(J, I)):
                dominated = True
                break
        if not dominated:
            out.append(I)
    return out


# ---------------------------------------------------------------------------
# ideal decomposition

def ideal_decompose(M: Nfa, method="paths", max_size=12) -> list:
    """⊆-maximal ideals whose union is L(M); L(M) must be downward closed."""
    if not is_downward_closed(M):
        raise NotDownwardClosed("language is not downward closed (dc(M) ⊄ M)")
    if method == "paths":
        return _decompose_paths(M)
    if method == "enumerate":
        return _decompose_enumerate(M, max_size)
    raise PtlsepError(f"unknown decomposition method {method!r}")


def _decompose_paths(M: Nfa) -> list:
    """One ideal per path in the SCC condensation: the letters inside each
    component become a block, each edge between components an optional letter.

    Together they describe ↓L(M) = L(M) exactly.
    """
    T, comps, comp_of, letters = scc_structure(M)
    if not T.initial:
        return []
    out_edges = [set() for _ in comps]
    for p, a, q in T.transitions:
        if comp_of[p] != comp_of[q]:
            out_edges[comp_of[p]].add((a, comp_of[q]))
    final_comps = {comp_of[s] for s in T.final}
    suffixes = {}
    # sinks come first in Tarjan order, so successors are always ready
    for ci in range(len(comps)):
        head = (Block(tuple(letters[ci])),) if letters[ci] else ()
        tails = [()] if ci in final_comps else []
        for a, cj in sorted(out_edges[ci]):
            step = () if a == EPS else (Opt(a),)
            tails.extend(step + t.atoms for t in suffixes[cj])
        suffixes[ci] = _maximal_ideals(simplify(Ideal(head + t)) for t in tails)
    starts = {comp_of[s] for s in T.initial}
    return _maximal_ideals(I for ci in starts for I in suffixes[ci])


def ideals_of_size(A, s: int):
    """Canonical ideals over A of description size s (1 + Σ|B| + #opts)."""
    A = make_alphabet(A)
    atoms = [(Block(c), len(c)) for c in _subsets(A)] + [(Opt(a), 1) for a in A]

    def build(budget):
        if budget == 0:
            yield ()
            return
        for atom, w in atoms:
            if w <= budget:
                for rest in build(budget - w):
                    yield (atom,) + rest

    out = [Ideal(t) for t in build(s - 1)]
    return sorted((I for I in out if is_canonical(I)), key=ideal_key)


def _subsets(A):
    return [c for k in range(1, len(A) + 1) for c in combinations(A, k)]


def _decompose_enumerate(M: Nfa, max_size: int) -> list:
    """Enumerate candidate ideals by size; stop once the included ones cover L(M)."""
    A = M.alphabet
    found = []
    for s in range(1, max_size + 1):
        for I in ideals_of_size(A, s):
            if includes(ideal_to_nfa(I, A), M):
                found.append(I)
        found = _maximal_ideals(found)
        if includes(M, union_of_ideals(found, A)):
            return found
    raise GuardError(f"ideal enumeration did not cover the language by size {max_size}")


# ---------------------------------------------------------------------------
# ideal inclusion in a downward closure

def ideal_in_dc(L, I: Ideal) -> bool:
    """L(I) ⊆ ↓L, decided as the diagonal problem of the probe image of L."""
    L = LangRef.of(L)
    A = make_alphabet(set(L.alphabet) | I.letters)
    L = L.pad(A)
    return L.apply(ideal_probe(I, A)).diagonal()


# ---------------------------------------------------------------------------
# downward closures of grammars

def _dc_symbol_table(G: Cfg) -> dict:
    """NFA for ↓L(X) for every nonterminal X, bottom-up over the SCCs of the
    dependency graph.

    non-recursive X:  union over X -> α of ↓α
    linear SCC:       Γl* · (union of ↓α over exit productions) · Γr*
    nonlinear SCC:    producible(X)*
    """
    A = G.alphabet
    prodc = producible(G)
    rules = G.rules
    deps = {X: [s for body in rules.get(X, ()) for s in body if G.is_nonterminal(s)]
            for X in G.nonterminals}
    table = {}

    def down(sym):
        if G.is_nonterminal(sym):
            return table[sym]
        return Nfa(A, 2, [0], [1], [(0, sym, 1), (0, EPS, 1)])

    def letters(sym):
        return prodc[sym] if G.is_nonterminal(sym) else {sym}

    for comp in sccs(G.nonterminals, lambda v: deps[v]):
        members = set(comp)
        recursive = len(comp) > 1 or comp[0] in deps[comp[0]]
        if not recursive:
            X = comp[0]
            alts = [concat_all([down(s) for s in body], A) for body in rules.get(X, ())]
            table[X] = union_all(alts, A).trim()
            continue
        inner = [(X, body) for X in comp for body in rules.get(X, ())]
        linear = all(sum(s in members for s in body) <= 1 for _, body in inner)
        if not linear:
            gamma = set().union(*(prodc[X] for X in comp))
            nfa = star_nfa(sorted(gamma), A)
        else:
            left, right, exits = set(), set(), []
            for _, body in inner:
                pos = [i for i, s in enumerate(body) if s in members]
                if not pos:
                    exits.append(concat_all([down(s) for s in body], A))
                    continue
                k = pos[0]
                for s in body[:k]:
                    left |= letters(s)
                for s in body[k + 1:]:
                    right |= letters(s)
            nfa = concat_all([star_nfa(sorted(left), A), union_all(exits, A),
                              star_nfa(sorted(right), A)], A).trim()
        for X in comp:
            table[X] = nfa
    return table


def dc_cfg(G: Cfg, method="scc", verify=True, max_size=10) -> Nfa:
    """NFA for ↓L(G).

    method="scc" builds the closure bottom-up over the grammar's SCCs;
    method="enumerate" searches unions of ideals by size.  With verify, the
    result is checked both ways: L(G) ⊆ D and every ideal of D lies in ↓L(G).
    """
    G0 = G
    G = reduce_cfg(G)
    A = G.alphabet
    if method == "scc":
        if not G.productions:
            D = empty_nfa(A)
        else:
            D = _dc_symbol_table(G)[G.start]
    elif method == "enumerate":
        D = _dc_enumerate(G, max_size)
    else:
        raise PtlsepError(f"unknown closure method {method!r}")
    if verify and not _dc_verified(G0, D):
        raise InvariantViolation("computed downward closure failed verification")
    return D


def _dc_verified(G: Cfg, D: Nfa) -> bool:
    L = LangRef.of(G)
    if L.meets(complement(D)):
        return False
    return all(ideal_in_dc(L, I) for I in _decompose_paths(D))


def _dc_enumerate(G: Cfg, max_size: int) -> Nfa:
    """Grow the set of ideals inside ↓L(G) by size until they cover L(G)."""
    A = G.alphabet
    L = LangRef.of(G)
    found = []
    for s in range(1, max_size + 1):
        for I in ideals_of_size(A, s):
            if not any(ideal_leq(I, J) for J in found) and ideal_in_dc(L, I):
                found.append(I)
        found = _maximal_ideals(found)
        D = union_of_ideals(found, A)
        if not L.meets(complement(D)):
            return D
    raise GuardError(f"no ideal union of size ≤ {max_size} covers the grammar")


def dc_lang(L) -> Nfa:
    L = LangRef.of(L)
    return dc_nfa(L.obj) if L.is_regular else dc_cfg(L.obj)


# ---------------------------------------------------------------------------
# simultaneous unboundedness

def chain_nfa(order, A) -> Nfa:
    """b1* b2* ... bn*."""
    order = tuple(order)
    if not order:
        return epsilon_nfa(A)
    trans = [(i, b, i) for i, b in enumerate(order)]
    trans += [(i, EPS, i + 1) for i in range(len(order) - 1)]
    return Nfa(tuple(A), len(order), [0], range(len(order)), trans)


def sup_instance(L, order) -> LangRef:
    """Check L ⊆ b1* ... bn* and return L over exactly the letters of the order."""
    L = LangRef.of(L)
    order = tuple(order)
    if len(set(order)) != len(order):
        raise IllFormedSupInstance(f"order {list(order)} repeats a letter")
    A = make_alphabet(set(L.alphabet) | set(order))
    L = L.pad(A)
    if L.meets(complement(chain_nfa(order, A))):
        raise IllFormedSupInstance(
            f"language is not contained in {' '.join(b + '*' for b in order) or 'ε'}")
    if set(A) != set(order):
        L = L.apply(project(A, order))
    return L


def sup_decide(L, order) -> bool:
    """↓L = b1* ... bn*?  Requires L ⊆ b1* ... bn*."""
    return sup_instance(L, order).diagonal()


def diagonal_via_sup(L) -> bool:
    """Diagonal property of L through ↓L and one SUP instance per letter ordering."""
    L = LangRef.of(L)
    A = L.alphabet
    D = dc_lang(L)
    for order in permutations(A):
        K = intersect(D, chain_nfa(order, A))
        if sup_decide(LangRef.of(K), order):
            return True
    return False
