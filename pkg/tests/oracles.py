"""Brute-force oracles and random instance generators shared by the tests."""
import random
from itertools import combinations, product

from ptlsep.grammar import Cfg
from ptlsep.ideals import Block, Ideal, Opt
from ptlsep.patterns import Pattern
from ptlsep.ptl import And, FalseF, Not, Or, Piece, TrueF
from ptlsep.regular import Nfa


def all_words(A, n):
    """Every word over A of length ≤ n."""
    for k in range(n + 1):
        yield from product(A, repeat=k)


def brute_subwords(w, n):
    """Subwords of w of length ≤ n, by enumerating index subsets."""
    out = set()
    for k in range(min(n, len(w)) + 1):
        for idx in combinations(range(len(w)), k):
            out.add(tuple(w[i] for i in idx))
    return out


def brute_is_subword(v, w):
    return any(tuple(w[i] for i in idx) == tuple(v) for idx in combinations(range(len(w)), len(v)))


def brute_is_subword_b(v, w, B):
    """v from w by deleting only letters of B: try every set of kept positions."""
    for idx in combinations(range(len(w)), len(v)):
        if tuple(w[i] for i in idx) != tuple(v):
            continue
        if all(w[j] in B for j in range(len(w)) if j not in idx):
            return True
    return False


def all_embeddings(x, y):
    """All increasing 1-based maps h with x_i = y_h(i)."""
    return [[i + 1 for i in idx] for idx in combinations(range(len(y)), len(x))
            if all(y[j] == a for j, a in zip(idx, x))]


def nfa_slice(M, n):
    return {w for w in all_words(M.alphabet, n) if M.accepts(w)}


def in_pattern_lang(w, P, n):
    """w ∈ u0 (B1^⊛)^n u1 ... by exhaustive splitting."""
    w = tuple(w)

    def match_word(pos, i):
        u = P.u[i]
        if w[pos:pos + len(u)] != u:
            return False
        pos += len(u)
        if i == P.p:
            return pos == len(w)
        return match_blocks(pos, i, n)

    def match_blocks(pos, i, left):
        if left == 0:
            return match_word(pos, i + 1)
        B = set(P.B[i])
        for end in range(pos + 1, len(w) + 1):
            chunk = w[pos:end]
            if not set(chunk) <= B:
                break
            if set(chunk) == B and match_blocks(end, i, left - 1):
                return True
        return False

    return match_word(0, 0)


def random_nfa(rng: random.Random, max_states=6, letters="abc", min_letters=1, eps=True, density=2.0):
    k = rng.randint(min_letters, len(letters))
    A = tuple(letters[:k])
    n = rng.randint(1, max_states)
    labels = A + (("",) if eps else ())
    trans = [(rng.randrange(n), rng.choice(labels), rng.randrange(n))
             for _ in range(rng.randint(0, int(density * n) + 1))]
    initial = [0] if rng.random() < 0.8 else rng.sample(range(n), min(n, 2))
    final = [q for q in range(n) if rng.random() < 0.4]
    return Nfa(A, n, initial, final, trans)


def random_cfg(rng: random.Random, letters="ab", max_nts=3, max_rules=3, max_body=3):
    A = tuple(letters)
    nts = [f"N{i}" for i in range(rng.randint(1, max_nts))]
    prods = []
    for X in nts:
        for _ in range(rng.randint(1, max_rules)):
            body = tuple(rng.choice(A + tuple(nts)) for _ in range(rng.randint(0, max_body)))
            prods.append((X, body))
    return Cfg(A, tuple(nts), nts[0], prods)


def random_ideal(rng: random.Random, letters="ab", max_atoms=4):
    atoms = []
    for _ in range(rng.randint(0, max_atoms)):
        if rng.random() < 0.6:
            k = rng.randint(1, len(letters))
            atoms.append(Block(tuple(rng.sample(letters, k))))
        else:
            atoms.append(Opt(rng.choice(letters)))
    return Ideal(tuple(atoms))


def random_pattern(rng: random.Random, letters="ab", max_p=3, max_u=2):
    p = rng.randint(0, max_p)
    u = [tuple(rng.choice(letters) for _ in range(rng.randint(0, max_u))) for _ in range(p + 1)]
    B = [tuple(rng.sample(letters, rng.randint(1, len(letters)))) for _ in range(p)]
    return Pattern(tuple(u), tuple(B))


def random_formula(rng: random.Random, letters="ab", depth=3):
    r = rng.random()
    if depth == 0 or r < 0.3:
        if rng.random() < 0.1:
            return rng.choice([TrueF(), FalseF()])
        return Piece(tuple(rng.choice(letters) for _ in range(rng.randint(0, 3))))
    if r < 0.5:
        return Not(random_formula(rng, letters, depth - 1))
    args = tuple(random_formula(rng, letters, depth - 1) for _ in range(rng.randint(1, 3)))
    return And(args) if r < 0.75 else Or(args)
