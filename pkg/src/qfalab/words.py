"""Plain words over x1..xn, reduced free-group words over {a, b}, and the
maps between them.

A plain word is a tuple of 1-based letter indices.  A :class:`FreeWord` is
kept in alternating-syllable form ``((base, exponent), ...)`` and is always
reduced: no zero exponents, no two adjacent syllables on the same base.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

BASES = ("a", "b")
VARIANTS = ("reverse", "neg_a", "neg_b", "neg_ab")

Syllable = tuple[str, int]


def free_reduce(raw: Iterable[Syllable]) -> "FreeWord":
    """Freely reduce an arbitrary syllable list."""
    stack: list[list] = []
    for base, exp in raw:
        if base not in BASES:
            raise ValueError(f"unknown generator {base!r}")
        exp = int(exp)
        if exp == 0:
            continue
        if stack and stack[-1][0] == base:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([base, exp])
    return FreeWord._from_reduced(tuple((b, e) for b, e in stack))


@dataclass(frozen=True)
class FreeWord:
    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self):
        reduced = free_reduce(self.syllables).syllables if self.syllables else ()
        object.__setattr__(self, "syllables", reduced)

    @classmethod
    def _from_reduced(cls, syllables: tuple[Syllable, ...]) -> "FreeWord":
        obj = object.__new__(cls)
        object.__setattr__(obj, "syllables", syllables)
        return obj

    @classmethod
    def parse(cls, text: str) -> "FreeWord":
        return parse_freeword(text)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return free_reduce(self.syllables + other.syllables)

    def inverse(self) -> "FreeWord":
        return FreeWord._from_reduced(tuple((b, -e) for b, e in reversed(self.syllables)))

    def letter_length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __len__(self):
        return len(self.syllables)

    def __str__(self):
        return format_freeword(self)


EMPTY = FreeWord()


def gamma1(word: Sequence[int], n: int | None = None) -> FreeWord:
    """Encode ``x_k`` as ``a^k b`` and concatenate."""
    syllables: list[Syllable] = []
    for k in word:
        if k < 1 or (n is not None and k > n):
            raise ValueError(f"letter x{k} outside the alphabet of size {n}")
        syllables.append(("a", k))
        syllables.append(("b", 1))
    return FreeWord._from_reduced(tuple(syllables))


def word_transform(w: FreeWord, variant: str) -> FreeWord:
    """Reverse the syllable order or negate the exponents of one or both bases."""
    if variant == "reverse":
        return free_reduce(reversed(w.syllables))
    flip = {"neg_a": {"a"}, "neg_b": {"b"}, "neg_ab": {"a", "b"}}.get(variant)
    if flip is None:
        raise ValueError(f"unknown transform {variant!r}")
    return free_reduce((b, -e if b in flip else e) for b, e in w.syllables)


_SYLLABLE = re.compile(r"^([ab])(?:\^(-?\d+))?$")


def parse_freeword(text: str) -> FreeWord:
    """Parse ``"a^3 b^2 a^-4 b"``; the empty string and ``"ε"`` give the identity."""
    stripped = text.strip()
    if stripped in ("", "ε", "e"):
        return EMPTY
    raw = []
    for token in stripped.split():
        m = _SYLLABLE.match(token)
        if not m:
            raise ValueError(f"bad syllable {token!r}")
        raw.append((m.group(1), int(m.group(2) or 1)))
    return free_reduce(raw)


def format_freeword(w: FreeWord) -> str:
    if not w.syllables:
        return "ε"
    return " ".join(b if e == 1 else f"{b}^{e}" for b, e in w.syllables)


def parse_plain_word(text: str) -> tuple[int, ...]:
    """Parse ``"x1 x3 x2"`` into ``(1, 3, 2)``."""
    out = []
    for token in text.split():
        if not re.fullmatch(r"x[1-9]\d*", token):
            raise ValueError(f"bad letter {token!r}")
        out.append(int(token[1:]))
    return tuple(out)


def format_plain_word(word: Sequence[int]) -> str:
    return " ".join(f"x{k}" for k in word)


def random_freeword(rng, max_syllables: int, max_exponent: int = 5) -> FreeWord:
    """A random reduced word with at most ``max_syllables`` syllables."""
    count = rng.randint(0, max_syllables)
    base = rng.choice(BASES)
    syllables = []
    for _ in range(count):
        exp = rng.randint(1, max_exponent) * rng.choice((1, -1))
        syllables.append((base, exp))
        base = "b" if base == "a" else "a"
    return FreeWord._from_reduced(tuple(syllables))
