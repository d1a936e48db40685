"""Mixed-modification PCP instances, solution checking and a bounded
exhaustive solver."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .config import solver_max_len
from .exactnum import SchemaError

SELECTORS = ("H", "G")


def _word(text_or_seq) -> tuple[str, ...]:
    if isinstance(text_or_seq, str):
        return tuple(text_or_seq.split())
    return tuple(text_or_seq)


@dataclass(frozen=True)
class MmpcpInstance:
    sigma: tuple[str, ...]
    delta: tuple[str, ...]
    h: Mapping[str, tuple[str, ...]]
    g: Mapping[str, tuple[str, ...]]
    claus: bool = False

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "delta", tuple(self.delta))
        object.__setattr__(self, "h", {k: _word(v) for k, v in self.h.items()})
        object.__setattr__(self, "g", {k: _word(v) for k, v in self.g.items()})
        if len(set(self.sigma)) != len(self.sigma) or len(set(self.delta)) != len(self.delta):
            raise ValueError("repeated letters in an alphabet")
        if set(self.sigma) & set(self.delta):
            raise ValueError("source and target alphabets must be disjoint")
        for name, morph in (("h", self.h), ("g", self.g)):
            if set(morph) != set(self.sigma):
                raise ValueError(f"{name} must be defined exactly on the source alphabet")
            for letter, image in morph.items():
                bad = [d for d in image if d not in self.delta]
                if bad:
                    raise ValueError(f"{name}({letter}) uses letters outside delta: {bad}")

    def image(self, selector: str, letter: str) -> tuple[str, ...]:
        if letter not in self.h:
            raise ValueError(f"unknown letter {letter!r}")
        if selector == "H":
            return self.h[letter]
        if selector == "G":
            return self.g[letter]
        raise ValueError(f"unknown selector {selector!r}")

    def to_json(self) -> dict:
        return {
            "sigma": list(self.sigma),
            "delta": list(self.delta),
            "h": {k: " ".join(self.h[k]) for k in self.sigma},
            "g": {k: " ".join(self.g[k]) for k in self.sigma},
            "claus": self.claus,
        }

    @classmethod
    def from_json(cls, data) -> "MmpcpInstance":
        try:
            return cls(
                sigma=tuple(data["sigma"]),
                delta=tuple(data["delta"]),
                h=dict(data["h"]),
                g=dict(data["g"]),
                claus=bool(data.get("claus", False)),
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise SchemaError(f"bad instance: {exc}") from exc


@dataclass(frozen=True)
class MixedSolution:
    word: tuple[str, ...]
    sel_a: tuple[str, ...]
    sel_b: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        object.__setattr__(self, "sel_a", tuple(self.sel_a))
        object.__setattr__(self, "sel_b", tuple(self.sel_b))

    def to_json(self) -> dict:
        return {"word": list(self.word), "selA": list(self.sel_a), "selB": list(self.sel_b)}


def apply_selectors(inst: MmpcpInstance, word: Sequence[str], sel: Sequence[str]) -> tuple[str, ...]:
    out: list[str] = []
    for letter, s in zip(word, sel):
        out.extend(inst.image(s, letter))
    return tuple(out)


def check_solution(inst: MmpcpInstance, sol: MixedSolution) -> bool:
    """True iff both selector sequences produce the same target word.

    Raises ``ValueError`` for ill-formed candidates: empty word, length
    mismatch, unknown letters or selectors, or identical selector sequences.
    """
    if not sol.word:
        raise ValueError("solution word must be nonempty")
    if not (len(sol.word) == len(sol.sel_a) == len(sol.sel_b)):
        raise ValueError("selector length does not match the word")
    for s in sol.sel_a + sol.sel_b:
        if s not in SELECTORS:
            raise ValueError(f"unknown selector {s!r}")
    for letter in sol.word:
        if letter not in inst.h:
            raise ValueError(f"unknown letter {letter!r}")
    if sol.sel_a == sol.sel_b:
        raise ValueError("selector sequences must differ in at least one position")
    return apply_selectors(inst, sol.word, sol.sel_a) == apply_selectors(inst, sol.word, sol.sel_b)


def _solutions_for_word(inst: MmpcpInstance, word: tuple[str, ...]):
    """All (selA, selB) pairs solving ``word``, via prefix-pruned DFS."""
    found = []
    k = len(word)

    def dfs(i, sa, sb, left, right):
        # left/right are the two partial target words; one must prefix the other
        if i == k:
            if left == right and sa != sb:
                found.append((tuple(sa), tuple(sb)))
            return
        letter = word[i]
        for x in SELECTORS:
            nl = left + inst.image(x, letter)
            for y in SELECTORS:
                nr = right + inst.image(y, letter)
                n = min(len(nl), len(nr))
                if nl[:n] != nr[:n]:
                    continue
                sa.append(x)
                sb.append(y)
                dfs(i + 1, sa, sb, nl, nr)
                sa.pop()
                sb.pop()

    dfs(0, [], [], (), ())
    return found


def candidate_words(inst: MmpcpInstance, length: int, restrict_claus: bool):
    if not inst.sigma:
        return
    for word in itertools.product(inst.sigma, repeat=length):
        if restrict_claus and (word[0] != inst.sigma[0] or word[-1] != inst.sigma[-1]):
            continue
        yield word


def brute_search(
    inst: MmpcpInstance, max_len: int, restrict_claus: bool | None = None
) -> MixedSolution | None:
    """Shortest, then lexicographically least, mixed solution of length <= max_len.

    Words are ordered by the position of letters in ``sigma``; ties between
    selector pairs go to the least ``(selA, selB)`` with ``H < G``.  Claus
    instances only consider words starting with the first and ending with the
    last source letter unless ``restrict_claus`` is False.
    """
    if max_len < 1:
        raise ValueError("max_len must be positive")
    if max_len > solver_max_len():
        raise ValueError(f"max_len {max_len} exceeds the cap {solver_max_len()}")
    restrict = inst.claus if restrict_claus is None else restrict_claus
    rank = {s: i for i, s in enumerate(SELECTORS)}
    for length in range(1, max_len + 1):
        for word in candidate_words(inst, length, restrict):
            sols = _solutions_for_word(inst, word)
            if sols:
                sa, sb = min(
                    sols, key=lambda p: ([rank[x] for x in p[0]], [rank[x] for x in p[1]])
                )
                return MixedSolution(word, sa, sb)
    return None
