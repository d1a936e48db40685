"""Compile MMPCP instances into radical automata.

Source letters take the embedding indices ``1..|sigma|`` and target
letters the following ones, so a single ``gamma`` covers both.  Every
source letter yields two generators, ``L:<letter>:H`` and ``L:<letter>:G``,
holding ``gamma(letter) (+) gamma(h(letter))`` and
``gamma(letter) (+) gamma(g(letter))``.
"""

from __future__ import annotations

from typing import Sequence

import mpmath

from .exactnum import PRIMES
from .mmpcp import SELECTORS, MixedSolution, MmpcpInstance
from .qfa import RadicalBlock, RadicalQfa
from .ratmatrix import RatMatrix, gamma

_I4 = RatMatrix.identity(4)


def letter_name(letter: str, selector: str) -> str:
    return f"L:{letter}:{selector}"


def parse_letter_name(name: str) -> tuple[str, str]:
    parts = name.split(":")
    if len(parts) != 3 or parts[0] != "L" or parts[2] not in SELECTORS:
        raise ValueError(f"not a compiled generator name: {name!r}")
    return parts[1], parts[2]


def combined_index(inst: MmpcpInstance) -> dict[str, int]:
    """Embedding index of every source and target letter."""
    if not inst.sigma or not inst.delta:
        raise ValueError("both alphabets must be nonempty")
    letters = inst.sigma + inst.delta
    return {letter: i + 1 for i, letter in enumerate(letters)}


def _gamma_of(index: dict[str, int], word: Sequence[str]) -> RatMatrix:
    return gamma([index[x] for x in word], len(index))


def _blocks(inst: MmpcpInstance) -> dict[str, tuple[RatMatrix, RatMatrix]]:
    index = combined_index(inst)
    out = {}
    for letter in inst.sigma:
        left = _gamma_of(index, (letter,))
        for sel in SELECTORS:
            out[letter_name(letter, sel)] = (left, _gamma_of(index, inst.image(sel, letter)))
    return out


def compile_injectivity(inst: MmpcpInstance) -> RadicalQfa:
    """8-state automaton that is injective iff the instance has no solution."""
    return RadicalQfa(
        {name: RadicalBlock(l, r) for name, (l, r) in _blocks(inst).items()}
    )


def compile_ambiguity(inst: MmpcpInstance) -> RadicalQfa:
    """9-state variant: the first source letter's H generator gets a -1 corner,
    so the two factorizations behind a solution give distinct matrices."""
    marked = letter_name(inst.sigma[0], "H") if inst.sigma else None
    return RadicalQfa(
        {
            name: RadicalBlock(l, r, -1 if name == marked else 1)
            for name, (l, r) in _blocks(inst).items()
        },
        ambiguity=True,
    )


def _strip_suffix(word: tuple, suffix: tuple) -> tuple | None:
    if len(suffix) < len(word) and word[len(word) - len(suffix):] == suffix:
        return word[: len(word) - len(suffix)]
    return None


def claus_trim(inst: MmpcpInstance) -> RadicalQfa:
    """Drop one generator of the last source letter.

    If ``g(last)`` is a proper suffix of ``h(last)``, the G generator is folded
    into the initial vector and the H generator becomes the quotient
    ``phi(last, h) phi(last, g)^-1 = I (+) gamma(prefix)``, where ``prefix`` is
    ``h(last)`` with that suffix removed.  The symmetric case swaps H and G.
    """
    if not inst.claus:
        raise ValueError("alphabet trim needs an instance marked claus")
    last = inst.sigma[-1]
    h_img, g_img = inst.h[last], inst.g[last]
    prefix = _strip_suffix(h_img, g_img)
    if prefix is not None:
        kept, folded = "H", "G"
    else:
        prefix = _strip_suffix(g_img, h_img)
        if prefix is None:
            raise ValueError(
                f"neither h({last}) nor g({last}) is a proper suffix of the other"
            )
        kept, folded = "G", "H"
    index = combined_index(inst)
    blocks = _blocks(inst)
    fold_left, fold_right = blocks.pop(letter_name(last, folded))
    blocks[letter_name(last, kept)] = (_I4, _gamma_of(index, prefix))
    return RadicalQfa(
        {name: RadicalBlock(l, r) for name, (l, r) in blocks.items()},
        fold_left=fold_left,
        fold_right=fold_right,
    )


def generator_word(word: Sequence[str], selectors: Sequence[str]) -> tuple[str, ...]:
    """Automaton input whose product is ``phi(x1, f1(x1)) ... phi(xk, fk(xk))``.

    Letters are applied first-letter-first, so the input is the reversed tag
    sequence.
    """
    if len(word) != len(selectors):
        raise ValueError("selector length does not match the word")
    return tuple(letter_name(x, s) for x, s in zip(reversed(word), reversed(selectors)))


def solution_words(sol: MixedSolution) -> tuple[tuple[str, ...], tuple[str, ...]]:
    return generator_word(sol.word, sol.sel_a), generator_word(sol.word, sol.sel_b)


def split_generator_word(qword: Sequence[str]) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Inverse of :func:`generator_word`: ``(source word, selectors)``."""
    pairs = [parse_letter_name(name) for name in reversed(qword)]
    return tuple(p[0] for p in pairs), tuple(p[1] for p in pairs)


def pair_to_solution(w1: Sequence[str], w2: Sequence[str]) -> MixedSolution | None:
    """Read a collision pair as a candidate mixed solution.

    Returns None unless the words have equal length and the same source letters.
    """
    if len(w1) != len(w2) or not w1:
        return None
    x1, s1 = split_generator_word(w1)
    x2, s2 = split_generator_word(w2)
    if x1 != x2:
        return None
    return MixedSolution(x1, s1, s2)


def corner_parity(inst: MmpcpInstance, qword: Sequence[str]) -> int:
    marked = letter_name(inst.sigma[0], "H")
    return sum(1 for name in qword if name == marked) % 2


def check_structure(q: RadicalQfa) -> list[str]:
    """Orthogonality and unit-top-row checks on every generator block."""
    problems = []
    for name, block in q.generators.items():
        if not block.matrix().is_orthogonal():
            problems.append(f"{name}: not orthogonal")
        for side, m in (("left", block.left), ("right", block.right)):
            if sum(x * x for x in m.row(0)) != 1:
                problems.append(f"{name}: {side} block top row is not unit")
    return problems


def materialize_initial(q: RadicalQfa):
    """High-precision float image of the implicit initial vector (for checks only)."""
    roots = [mpmath.root(p, 4) for p in PRIMES]
    u1 = [roots[0], roots[1], roots[2], mpmath.mpf(0)]
    u2 = [roots[3], roots[4], roots[5], mpmath.mpf(0)]

    def fold(m, v):
        return [sum(mpmath.mpf(int(m[i, j].numerator)) / int(m[i, j].denominator) * v[j]
                    for j in range(4)) for i in range(4)]

    vec = fold(q.fold_left, u1) + fold(q.fold_right, u2)
    if q.ambiguity:
        vec.append(mpmath.mpf(0))
    norm = mpmath.sqrt(sum(mpmath.sqrt(p) for p in PRIMES))
    return [x / norm for x in vec]

