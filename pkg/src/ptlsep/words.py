"""Words over token alphabets, subword relations and Simon's ~n congruence.

A word is a tuple of symbols; a symbol is any printable token without
whitespace.  Symbols starting with ``$`` are reserved for generated markers.
"""
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import PtlsepError, ReservedSymbolError

Word = tuple
EPSILON: Word = ()
MARKER_PREFIX = "$"


def word(text) -> Word:
    """Build a word from a token sequence or a string.

    Strings containing whitespace are split on it; otherwise every character
    becomes one symbol, so ``word("aab") == ("a", "a", "b")``.
    """
    if isinstance(text, str):
        if any(ch.isspace() for ch in text):
            return tuple(text.split())
        return tuple(text)
    return tuple(text)


def alphabet(letters: Iterable[str]) -> tuple:
    """Canonical alphabet: deduplicated, sorted tuple."""
    return tuple(sorted(set(letters)))


def alph(w: Sequence[str]) -> frozenset:
    return frozenset(w)


def check_symbol(sym: str, allow_markers=False):
    if not isinstance(sym, str) or not sym or any(ch.isspace() for ch in sym):
        raise PtlsepError(f"invalid symbol {sym!r}")
    if not sym.isprintable():
        raise PtlsepError(f"non-printable symbol {sym!r}")
    if not allow_markers and sym.startswith(MARKER_PREFIX):
        raise ReservedSymbolError(f"symbol {sym!r} uses the reserved '$' prefix")


def check_user_alphabet(letters: Iterable[str]):
    for a in letters:
        check_symbol(a)


def is_subword_b(v: Sequence[str], w: Sequence[str], deletable: Iterable[str]) -> bool:
    """True iff v is obtained from w by deleting only letters in `deletable`."""
    B = set(deletable)
    m = len(v)
    # set of "matched prefix lengths" reachable after reading a prefix of w
    cur = {0}
    for x in w:
        nxt = set()
        for j in cur:
            if j < m and v[j] == x:
                nxt.add(j + 1)
            if x in B:
                nxt.add(j)
        if not nxt:
            return False
        cur = nxt
    return m in cur


def is_subword(v: Sequence[str], w: Sequence[str]) -> bool:
    """Plain (scattered) subword relation v ⪯ w."""
    it = iter(w)
    return all(any(x == y for y in it) for x in v)


@dataclass(frozen=True)
class SubwordProfile:
    bound: int
    members: frozenset

    def __contains__(self, v):
        return tuple(v) in self.members

    def __len__(self):
        return len(self.members)

    def maximal(self) -> tuple:
        """Members not a proper subword of another member, sorted."""
        ms = sorted(self.members, key=lambda u: (-len(u), u))
        out = []
        for u in ms:
            if not any(len(u) < len(x) and is_subword(u, x) for x in out):
                out.append(u)
        return tuple(sorted(out, key=lambda u: (len(u), u)))


def extend_profile(members: frozenset, letter: str, n: int) -> frozenset:
    """Profile of wa given the profile of w (the ~n transition)."""
    new = {u + (letter,) for u in members if len(u) < n}
    if new <= members:
        return members
    return members | new


def subwords_upto(w: Sequence[str], n: int) -> SubwordProfile:
    if n < 0:
        raise ValueError("bound must be nonnegative")
    members = frozenset([EPSILON])
    for a in w:
        members = extend_profile(members, a, n)
    return SubwordProfile(n, members)


def simon_equiv(v: Sequence[str], w: Sequence[str], n: int) -> bool:
    return subwords_upto(v, n).members == subwords_upto(w, n).members


def leftmost_embedding(x: Sequence[str], y: Sequence[str]) -> Optional[list]:
    """Pointwise-minimal increasing map h (1-based) with x[i] == y[h(i)]."""
    h = []
    j = 0
    for a in x:
        while j < len(y) and y[j] != a:
            j += 1
        if j == len(y):
            return None
        h.append(j + 1)
        j += 1
    return h


def letter_counts(w: Sequence[str], A: Iterable[str]) -> dict:
    A = tuple(A)
    c = Counter(w)
    extra = set(c) - set(A)
    if extra:
        raise PtlsepError(f"letters {sorted(extra)} not in alphabet")
    return {a: c.get(a, 0) for a in A}


def words_upto(A: Sequence[str], n: int):
    """All words over A of length <= n, shortlex order."""
    layer = [EPSILON]
    yield EPSILON
    for _ in range(n):
        layer = [u + (a,) for u in layer for a in A]
        yield from layer


def fmt_word(w: Sequence[str]) -> str:
    if not w:
        return "ε"
    if all(len(a) == 1 for a in w):
        return "".join(w)
    return " ".join(w)
