"""Words over the alphabet X cup R and the free ring Z<X cup R>.

A word is a tuple of letters; a letter is either a variable slot Var(i)
(0-based index into the presentation's variables) or an opaque coefficient
Scalar(r).  Consecutive scalars are deliberately not merged at the word
level: a word is an element of the free monoid, and collapsing products is
the job of the prefix-collapse map in the reduction engine.

The complexity of a word is the triple

    (number of variable letters,
     number of position pairs s < t holding variables in decreasing index order,
     number of position pairs s < t holding a variable then a scalar)

ordered lexicographically.  Both rewrite moves of the straightening recursion
strictly decrease it, which is the termination measure.  Inversions are
counted over all position pairs, not only adjacent ones; any measure the
moves strictly decrease works, and the pair count does.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import CoeffElem


@dataclass(frozen=True, slots=True)
class Var:
    index: int


@dataclass(frozen=True, slots=True)
class Scalar:
    value: CoeffElem


Letter = Var | Scalar
Word = tuple  # tuple[Letter, ...]


def word_str(w: Word) -> str:
    if not w:
        return "(empty)"
    parts = []
    for letter in w:
        if isinstance(letter, Var):
            parts.append(f"x{letter.index + 1}")
        else:
            parts.append(str(letter.value))
    return "·".join(parts)


def complexity(w: Word) -> tuple[int, int, int]:
    a = 0
    b = 0
    c = 0
    var_positions: list[int] = []  # indices of variables seen so far
    for letter in w:
        if isinstance(letter, Var):
            a += 1
            for earlier in var_positions:
                if earlier > letter.index:
                    b += 1
            var_positions.append(letter.index)
        else:
            c += len(var_positions)
    return (a, b, c)


def is_standard(w: Word) -> bool:
    """True iff all scalars precede all variables and variable indices are
    nondecreasing, i.e. complexity is (a, 0, 0)."""
    last_var = -1
    seen_var = False
    for letter in w:
        if isinstance(letter, Var):
            if letter.index < last_var:
                return False
            last_var = letter.index
            seen_var = True
        elif seen_var:
            return False
    return True


@dataclass(frozen=True, slots=True)
class Violation:
    pos: int
    kind: str  # "scalar" (x_i r) or "vars" (x_j x_i with i < j)


def rightmost_violation(w: Word) -> Violation | None:
    """Position of the rightmost adjacent out-of-order pair.

    Scanning right to left, the first adjacent pair that is either
    (variable, scalar) or (variable j, variable i) with i < j is returned;
    its right context is automatically standard, because a word without any
    violating adjacency is standard.  Returns None iff the word is standard.
    """
    for s in range(len(w) - 2, -1, -1):
        left = w[s]
        if not isinstance(left, Var):
            continue
        right = w[s + 1]
        if isinstance(right, Scalar):
            return Violation(s, "scalar")
        if right.index < left.index:
            return Violation(s, "vars")
    return None


class FreeElem:
    """An integer-linear combination of words (element of Z<X cup R>)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Word, int] | None = None):
        self.terms = {w: m for w, m in (terms or {}).items() if m}

    @classmethod
    def zero(cls) -> "FreeElem":
        return cls()

    @classmethod
    def from_word(cls, w: Word, mult: int = 1) -> "FreeElem":
        return cls({tuple(w): mult})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FreeElem") -> "FreeElem":
        out = dict(self.terms)
        for w, m in other.terms.items():
            s = out.get(w, 0) + m
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return FreeElem(out)

    def __neg__(self) -> "FreeElem":
        return FreeElem({w: -m for w, m in self.terms.items()})

    def __sub__(self, other: "FreeElem") -> "FreeElem":
        return self + (-other)

    def scale(self, k: int) -> "FreeElem":
        if k == 0:
            return FreeElem()
        return FreeElem({w: k * m for w, m in self.terms.items()})

    def concat(self, other: "FreeElem") -> "FreeElem":
        """Bilinear concatenation product of the free ring."""
        out: dict[Word, int] = {}
        for u, mu in self.terms.items():
            for v, mv in other.terms.items():
                w = u + v
                s = out.get(w, 0) + mu * mv
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return FreeElem(out)

    __mul__ = concat

    def __eq__(self, other):
        return isinstance(other, FreeElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, m in sorted(self.terms.items(), key=lambda t: (len(t[0]), word_str(t[0]))):
            body = word_str(w)
            parts.append(body if m == 1 else f"{m}*({body})")
        return " + ".join(parts)

    def __repr__(self):
        return f"FreeElem({self})"


def free_add(u: FreeElem, v: FreeElem) -> FreeElem:
    return u + v


def free_concat(u: FreeElem, v: FreeElem) -> FreeElem:
    return u.concat(v)
