"""LangRef: one handle for regular and context-free inputs."""
from dataclasses import dataclass

from .errors import PtlsepError
from .grammar import Cfg, diagonal_cfg, is_empty_cfg, reduce_cfg
from .regular import Nfa, diagonal_nfa, intersect, is_empty, pad, word_nfa
from .words import alphabet as make_alphabet
from .transduce import Fst, apply_fst_cfg, apply_fst_nfa, cfg_meets_nfa, normalize_fst


@dataclass(frozen=True, eq=False)
class LangRef:
    """Tagged union: `kind` is "regular" (obj is an Nfa) or "cfg" (obj is a Cfg)."""
    kind: str
    obj: object

    def __post_init__(self):
        if self.kind == "regular" and not isinstance(self.obj, Nfa):
            raise PtlsepError("regular LangRef needs an Nfa")
        if self.kind == "cfg" and not isinstance(self.obj, Cfg):
            raise PtlsepError("cfg LangRef needs a Cfg")
        if self.kind not in ("regular", "cfg"):
            raise PtlsepError(f"unknown language kind {self.kind!r}")

    def __repr__(self):
        return f"LangRef({self.kind}, alphabet={list(self.alphabet)})"

    @staticmethod
    def of(obj) -> "LangRef":
        if isinstance(obj, LangRef):
            return obj
        if isinstance(obj, Nfa):
            return LangRef("regular", obj)
        if isinstance(obj, Cfg):
            return LangRef("cfg", obj)
        raise PtlsepError(f"cannot wrap {type(obj).__name__} as a language")

    @property
    def alphabet(self) -> tuple:
        return self.obj.alphabet

    @property
    def is_regular(self) -> bool:
        return self.kind == "regular"

    def pad(self, A) -> "LangRef":
        if self.is_regular:
            return LangRef("regular", pad(self.obj, A))
        return LangRef("cfg", self.obj.with_alphabet(A))

    def apply(self, T: Fst) -> "LangRef":
        if self.is_regular:
            return LangRef("regular", apply_fst_nfa(self.obj, T))
        return LangRef("cfg", apply_fst_cfg(self.obj, normalize_fst(T)))

    def is_empty(self) -> bool:
        return is_empty(self.obj) if self.is_regular else is_empty_cfg(self.obj)

    def meets(self, M: Nfa) -> bool:
        """L ∩ L(M) ≠ ∅."""
        if self.is_regular:
            return not is_empty(intersect(self.obj, M))
        return cfg_meets_nfa(self.obj, M)

    def diagonal(self) -> bool:
        return diagonal_nfa(self.obj) if self.is_regular else diagonal_cfg(self.obj)

    def contains(self, w) -> bool:
        w = tuple(w)
        if not set(w) <= set(self.alphabet):
            return False
        if self.is_regular:
            return self.obj.accepts(w)
        return cfg_meets_nfa(self.obj, word_nfa(w, self.alphabet))

    def reduced(self) -> "LangRef":
        return self if self.is_regular else LangRef("cfg", reduce_cfg(self.obj))


def common_pad(I: LangRef, E: LangRef):
    A = make_alphabet(set(I.alphabet) | set(E.alphabet))
    return I.pad(A), E.pad(A), A
