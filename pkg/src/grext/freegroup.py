"""Homomorphisms between finitely generated free groups.

A word is a tuple of nonzero integers: ``j`` is the generator x_j and
``-j`` its inverse.  A homomorphism ``Z^{*p} -> Z^{*q}`` is the list of
images of y_1, ..., y_p.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import IntegerMatrix

Word = tuple[int, ...]


def reduce_word(word) -> Word:
    out: list[int] = []
    for letter in word:
        if letter == 0:
            raise ValueError("0 is not a generator index")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word: Word) -> Word:
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class FreeGroupHom:
    source_rank: int
    target_rank: int
    words: tuple[Word, ...]

    def __post_init__(self):
        words = tuple(reduce_word(w) for w in self.words)
        object.__setattr__(self, "words", words)
        if len(words) != self.source_rank:
            raise ValueError(f"need {self.source_rank} words, got {len(words)}")
        for w in words:
            for x in w:
                if abs(x) > self.target_rank:
                    raise ValueError(f"generator {x} outside target rank {self.target_rank}")

    @classmethod
    def identity(cls, k: int) -> "FreeGroupHom":
        return cls(k, k, tuple((j,) for j in range(1, k + 1)))

    def image(self, word) -> Word:
        out: list[int] = []
        for x in word:
            w = self.words[abs(x) - 1]
            out.extend(w if x > 0 else invert_word(w))
        return reduce_word(out)

    def then(self, other: "FreeGroupHom") -> "FreeGroupHom":
        """``other o self``: apply self first."""
        if self.target_rank != other.source_rank:
            raise ValueError("ranks do not compose")
        return FreeGroupHom(
            self.source_rank, other.target_rank, tuple(other.image(w) for w in self.words)
        )

    def __str__(self) -> str:
        def show(w):
            if not w:
                return "1"
            return " ".join(f"x{x}" if x > 0 else f"x{-x}^-1" for x in w)

        return ", ".join(f"y{i + 1} -> {show(w)}" for i, w in enumerate(self.words))


def face_hom(i: int, k: int) -> FreeGroupHom:
    """The face map delta_i : P_{k+1} -> P_k seen as a hom Z^{*k} -> Z^{*(k+1)}."""
    if not 0 <= i <= k + 1:
        raise IndexError(f"face index {i} outside 0..{k + 1}")
    words = []
    for j in range(1, k + 1):
        if i == 0 or j > i:
            words.append((j + 1,))
        elif j < i or i == k + 1:
            words.append((j,))
        else:
            words.append((j, j + 1))
    return FreeGroupHom(k, k + 1, tuple(words))


def degeneracy_hom(i: int, k: int) -> FreeGroupHom:
    """The degeneracy epsilon_i : P_k -> P_{k+1} seen as a hom Z^{*(k+1)} -> Z^{*k}."""
    if not 1 <= i <= k + 1:
        raise IndexError(f"degeneracy index {i} outside 1..{k + 1}")
    words = []
    for j in range(1, k + 2):
        if j < i:
            words.append((j,))
        elif j == i:
            words.append(())
        else:
            words.append((j - 1,))
    return FreeGroupHom(k + 1, k, tuple(words))


def abelianization_matrix(h: FreeGroupHom) -> IntegerMatrix:
    """Exponent-sum matrix: entry (r, c) counts generator r+1 in word c."""
    entries: dict = {}
    for c, w in enumerate(h.words):
        for x in w:
            key = (abs(x) - 1, c)
            entries[key] = entries.get(key, 0) + (1 if x > 0 else -1)
    return IntegerMatrix(h.target_rank, h.source_rank, entries)


def block_sum(homs: list[FreeGroupHom]) -> FreeGroupHom:
    """Free product of homs acting on consecutive generator blocks."""
    words: list[Word] = []
    src_off = tgt_off = 0
    for h in homs:
        for w in h.words:
            words.append(tuple(x + tgt_off if x > 0 else x - tgt_off for x in w))
        src_off += h.source_rank
        tgt_off += h.target_rank
    return FreeGroupHom(src_off, tgt_off, tuple(words))
