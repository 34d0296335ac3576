"""Words over a pregroup and arithmetic in its universal group U(P).

Words are tuples of element ids. Reduction is leftmost-first; equality of
classes is decided by the interleaving test on reduced words, and every
class is represented by its least interleaving under the carrier order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import kernels
from .pregroup import Pregroup, PregroupError, is_subpregroup

Word = tuple[str, ...]

MAX_CANONICAL_LENGTH = 8


class WordError(PregroupError):
    pass


def parse_word(text: str) -> Word:
    """``"a,b,a"`` -> ``("a", "b", "a")``; the empty string is the empty word."""
    text = text.strip()
    if not text:
        return ()
    return tuple(part.strip() for part in text.split(","))


def format_word(word: Sequence[str]) -> str:
    return ",".join(word)


def _normal_input(p: Pregroup, w: Iterable[str]) -> list[int]:
    letters = p.encode(w)
    return letters if letters else [p.index[p.identity]]


def reduce(p: Pregroup, w: Sequence[str]) -> Word:
    """Merge the leftmost adjacent pair in D until none is left."""
    return p.decode(kernels.reduce_left(p.tables, _normal_input(p, w)))


def reduce_rightmost(p: Pregroup, w: Sequence[str]) -> Word:
    return p.decode(kernels.reduce_right(p.tables, _normal_input(p, w)))


def is_reduced(p: Pregroup, w: Sequence[str]) -> bool:
    return kernels.is_reduced(p.tables, p.encode(w))


def interleave(p: Pregroup, c: Sequence[str], a: Sequence[str]) -> Word | None:
    """(c1 a1, a1^-1 c2 a2, ..., a_{k-1}^-1 ck), or None if a product is undefined."""
    if len(c) < 1:
        raise WordError("interleaving needs a non-empty word")
    if len(a) != len(c) - 1:
        raise WordError(f"interleaver has length {len(a)}, expected {len(c) - 1}")
    out = kernels.interleave(p.tables, p.encode(c), p.encode(a))
    return None if out is None else p.decode(out)


def interleavings(p: Pregroup, c: Sequence[str]) -> list[Word]:
    """Every word c * a, sorted by carrier order."""
    return [p.decode(w) for w in kernels.all_interleavings(p.tables, p.encode(c))]


def equivalent(p: Pregroup, c: Sequence[str], d: Sequence[str]) -> bool:
    """c and d reduce to interleavings of each other."""
    rc = kernels.reduce_left(p.tables, _normal_input(p, c))
    rd = kernels.reduce_left(p.tables, _normal_input(p, d))
    return kernels.equivalent_reduced(p.tables, rc, rd)


def _canonical_letters(p: Pregroup, w: Sequence[str]) -> list[int]:
    r = kernels.reduce_left(p.tables, _normal_input(p, w))
    if len(r) > MAX_CANONICAL_LENGTH:
        raise WordError(
            f"reduced word has length {len(r)}; canonical forms are limited to {MAX_CANONICAL_LENGTH} letters"
        )
    out = kernels.lexmin_interleaving(p.tables, r)
    if out is None:  # the identity interleaver always works on a reduced word
        raise AssertionError("no interleaving found for a reduced word")
    return out


@dataclass(frozen=True)
class UElement:
    """An element of U(P), held as the least reduced word of its class."""

    pregroup: Pregroup
    word: Word

    @property
    def length(self) -> int:
        """Length of the reduced representative; the identity has length 0."""
        if len(self.word) == 1 and self.word[0] == self.pregroup.identity:
            return 0
        return len(self.word)

    @property
    def is_identity(self) -> bool:
        return self.length == 0

    def __str__(self):
        return format_word(self.word)

    def __hash__(self):
        return hash((id(self.pregroup), self.word))

    def __eq__(self, other):
        if not isinstance(other, UElement):
            return NotImplemented
        return self.pregroup is other.pregroup and self.word == other.word

    def __mul__(self, other: "UElement") -> "UElement":
        return u_mul(self.pregroup, self, other)

    def inverse(self) -> "UElement":
        return u_inv(self.pregroup, self)


def canonical(p: Pregroup, w: Sequence[str]) -> UElement:
    return UElement(p, p.decode(_canonical_letters(p, w)))


def identity(p: Pregroup) -> UElement:
    return UElement(p, (p.identity,))


def _same(p: Pregroup, *elements: UElement) -> None:
    for u in elements:
        if u.pregroup is not p:
            raise WordError("element belongs to a different pregroup")


def u_mul(p: Pregroup, u: UElement, v: UElement) -> UElement:
    _same(p, u, v)
    return canonical(p, u.word + v.word)


def u_inv(p: Pregroup, u: UElement) -> UElement:
    _same(p, u)
    return canonical(p, tuple(p.inverse(x) for x in reversed(u.word)))


def embed(p: Pregroup, g: str) -> UElement:
    if g not in p.index:
        raise WordError(f"{g!r} is not an element of the pregroup")
    return UElement(p, (g,))


def subgroup_agreement(q: Pregroup, p: Pregroup, c: Sequence[str], d: Sequence[str]) -> tuple[bool, bool]:
    """(c ~ d in U(Q), c ~ d in U(P)) for words over a subpregroup Q."""
    if not is_subpregroup(q, p):
        raise PregroupError("first argument is not a subpregroup of the second")
    return equivalent(q, c, d), equivalent(p, c, d)


def words(p: Pregroup, max_length: int, min_length: int = 1) -> Iterator[Word]:
    """All words over the carrier with lengths in [min_length, max_length]."""
    for k in range(min_length, max_length + 1):
        yield from itertools.product(p.carrier, repeat=k)


def reduced_words(p: Pregroup, max_length: int) -> Iterator[Word]:
    """Reduced words of length 1..max_length, by a prefix-extension search."""
    n = len(p.carrier)
    table = [[p.product(a, b) is not None for b in p.carrier] for a in p.carrier]
    layer = [(i,) for i in range(n)]
    for _ in range(max_length):
        yield from (p.decode(w) for w in layer)
        layer = [w + (j,) for w in layer for j in range(n) if not table[w[-1]][j]]


def enumerate_elements(p: Pregroup, max_length: int) -> list[UElement]:
    """Distinct elements of U(P) whose canonical length is at most ``max_length``."""
    seen = {identity(p)}
    for w in reduced_words(p, max_length):
        seen.add(canonical(p, w))
    order = p.index
    return sorted(seen, key=lambda u: (u.length, [order[x] for x in u.word]))
