"""Ideals of the subword order: products B0* {b1,ε} B1* ... of atoms."""
from dataclasses import dataclass
from typing import Union

from .errors import PtlsepError


@dataclass(frozen=True, order=True)
class Block:
    """B* for a nonempty alphabet B (stored sorted)."""
    letters: tuple

    def __post_init__(self):
        if not self.letters:
            raise PtlsepError("Block alphabet must be nonempty")
        object.__setattr__(self, "letters", tuple(sorted(set(self.letters))))

    def __repr__(self):
        return "{" + ",".join(self.letters) + "}*"


@dataclass(frozen=True, order=True)
class Opt:
    """{b, ε}."""
    letter: str

    def __repr__(self):
        return f"{self.letter}?"


Atom = Union[Block, Opt]


@dataclass(frozen=True)
class Ideal:
    atoms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))

    def __repr__(self):
        return "Ideal(" + " ".join(map(repr, self.atoms)) + ")"

    @property
    def letters(self) -> frozenset:
        out = set()
        for a in self.atoms:
            out.update(a.letters if isinstance(a, Block) else (a.letter,))
        return frozenset(out)

    @property
    def size(self) -> int:
        """Description size: 1 + sum of |B| over blocks + number of opts."""
        return 1 + sum(len(a.letters) if isinstance(a, Block) else 1 for a in self.atoms)

    def canonical_element(self, n: int) -> tuple:
        """r0^n b1 r1^n ...; every member of the ideal embeds into one of these."""
        out = []
        for a in self.atoms:
            if isinstance(a, Block):
                out.extend(a.letters * n)
            else:
                out.append(a.letter)
        return tuple(out)

    def to_json(self):
        return {"atoms": [{"block": list(a.letters)} if isinstance(a, Block) else {"opt": a.letter}
                          for a in self.atoms]}

    @classmethod
    def from_json(cls, data):
        atoms = []
        for item in data["atoms"]:
            if "block" in item:
                atoms.append(Block(tuple(item["block"])))
            elif "opt" in item:
                atoms.append(Opt(item["opt"]))
            else:
                raise PtlsepError(f"bad ideal atom {item!r}")
        return cls(tuple(atoms))


def simplify(ideal: Ideal) -> Ideal:
    """Merge comparable adjacent blocks and drop opts absorbed by a neighbour block."""
    atoms = list(ideal.atoms)
    changed = True
    while changed:
        changed = False
        for i in range(len(atoms) - 1):
            x, y = atoms[i], atoms[i + 1]
            if isinstance(x, Block) and isinstance(y, Block):
                sx, sy = set(x.letters), set(y.letters)
                if sx <= sy or sy <= sx:
                    atoms[i:i + 2] = [x if sy <= sx else y]
                    changed = True
                    break
            elif isinstance(x, Block) and isinstance(y, Opt) and y.letter in x.letters:
                del atoms[i + 1]
                changed = True
                break
            elif isinstance(x, Opt) and isinstance(y, Block) and x.letter in y.letters:
                del atoms[i]
                changed = True
                break
    return Ideal(tuple(atoms))


def is_canonical(ideal: Ideal) -> bool:
    return simplify(ideal) == ideal


def ideal_leq(I: Ideal, J: Ideal) -> bool:
    """L(I) ⊆ L(J), by the greedy left-to-right atom matching."""
    xs, ys = I.atoms, J.atoms
    i = j = 0
    while i < len(xs):
        if j == len(ys):
            return False
        e, f = xs[i], ys[j]
        if isinstance(e, Block):
            if isinstance(f, Block) and set(e.letters) <= set(f.letters):
                i += 1
            else:
                j += 1
        elif isinstance(f, Block):
            if e.letter in f.letters:
                i += 1
            else:
                j += 1
        else:
            if e.letter == f.letter:
                i += 1
            j += 1
    return True


def ideal_contains_word(ideal: Ideal, w) -> bool:
    return ideal_leq(Ideal(tuple(Opt(a) for a in w)), ideal)
