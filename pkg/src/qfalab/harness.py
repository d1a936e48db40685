"""Bounded verification suites.

* :func:`collision_search` groups all words up to a length by their exact
  acceptance value and reports every pair of words sharing one.
* :func:`verify_lemma_identities`, :func:`enumerate_uniqueness` and
  :func:`freeness_enumeration` check the algebraic facts the reduction relies
  on.
* :func:`end_to_end` runs the MMPCP brute-force solver next to a collision
  search on the compiled automaton and checks that they agree.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .config import word_budget
from .exactnum import (
    RadicalSignature,
    canonical_json,
    radsig_to_float,
    rat_to_float,
    rat_to_str,
)
from .mmpcp import MmpcpInstance, brute_search, check_solution
from .qfa import (
    Qfa,
    accept_rational,
    accept_signature,
    acceptance_of_state,
    exact_signature,
    exact_signature_from_blocks,
    signature_from_blocks,
)
from .quaternion import GEN_A, GEN_B, ONE, gamma2, qmul
from .ratmatrix import (
    GEN_A_MATRIX,
    GEN_B_MATRIX,
    RatMatrix,
    abs_key,
    gamma,
    matmul,
    top_row_unit,
)
from .reduction import (
    compile_ambiguity,
    compile_injectivity,
    corner_parity,
    pair_to_solution,
    solution_words,
)
from .words import FreeWord, random_freeword, word_transform

DEFAULT_MAX_PAIRS = 10_000
UNIQUENESS_BUDGET = 10**5


class BudgetError(ValueError):
    """An enumeration would exceed the configured word budget."""


def word_count(alphabet_size: int, max_len: int) -> int:
    """Number of words of length ``0..max_len``."""
    return sum(alphabet_size**k for k in range(max_len + 1))


def check_budget(alphabet_size: int, max_len: int) -> int:
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    total = word_count(alphabet_size, max_len)
    cap = word_budget()
    if total > cap:
        raise BudgetError(f"{total} words up to length {max_len} exceed the budget {cap}")
    return total


def automaton_digest(q) -> str:
    return hashlib.sha256(canonical_json(q.to_json()).encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# acceptance values


def acceptance_value(q, word: Sequence[str], exact: bool = False):
    """Exact acceptance: a rational for :class:`Qfa`, a signature otherwise."""
    if isinstance(q, Qfa):
        return accept_rational(q, word)
    return exact_signature(q, word) if exact else accept_signature(q, word)


def value_key(value) -> str:
    if isinstance(value, RadicalSignature):
        return value.key()
    return rat_to_str(value)


def value_json(value, float_digits: int | None = None) -> dict:
    if isinstance(value, RadicalSignature):
        out = {"signature": value.to_json()}
        if float_digits is not None:
            out["float"] = radsig_to_float(value, float_digits)
    else:
        out = {"rational": rat_to_str(value)}
        if float_digits is not None:
            out["float"] = rat_to_float(value, float_digits)
    return out


def _states(q, exact: bool):
    """Initial state and the step/key functions for incremental enumeration.

    A word's state is the product of its generators (or, for a plain
    automaton, the state vector); appending a letter multiplies on the left.
    """
    if isinstance(q, Qfa):
        def step(state, letter):
            return q.generators[letter].apply(state)

        def key(state):
            return rat_to_str(acceptance_of_state(q, state))

        return tuple(q.initial), step, key

    to_sig = exact_signature_from_blocks if exact else signature_from_blocks

    def step(state, letter):
        b = q.generators[letter]
        return matmul(b.left, state[0]), matmul(b.right, state[1])

    def key(state):
        return to_sig(q, state[0], state[1]).key()

    ident = RatMatrix.identity(4)
    return (ident, ident), step, key


def _enumerate(q, letters: Sequence[str], first: str | None, max_len: int, exact: bool):
    """``(key, word)`` for every word of length ``1..max_len`` (starting with
    ``first`` when given), in length-lexicographic order."""
    init, step, key = _states(q, exact)
    out = []
    starts = [first] if first is not None else list(letters)
    level = [((s,), step(init, s)) for s in starts] if max_len >= 1 else []
    while level:
        for word, state in level:
            out.append((key(state), word))
        if len(level[0][0]) >= max_len:
            break
        level = [
            (word + (x,), step(state, x)) for word, state in level for x in letters
        ]
    return out


def _enumerate_job(args):
    q, letters, first, max_len, exact = args
    return _enumerate(q, letters, first, max_len, exact)


@dataclass
class CollisionReport:
    pairs: list = field(default_factory=list)
    max_len: int = 0
    digest: str = ""
    words: int = 0
    classes: int = 0
    truncated: bool = False
    exact: bool = False

    @property
    def injective(self) -> bool:
        return not self.pairs

    def to_json(self, float_digits: int | None = None) -> dict:
        return {
            "max_len": self.max_len,
            "digest": self.digest,
            "words": self.words,
            "collision_classes": self.classes,
            "truncated": self.truncated,
            "status": "injective" if self.injective else "collision",
            "value_form": "exact" if self.exact else "squared-entry",
            "pairs": [
                {
                    "word1": list(w1),
                    "word2": list(w2),
                    "value": value_json(v, float_digits),
                }
                for w1, w2, v in self.pairs
            ],
        }


def collision_search(
    q,
    max_len: int,
    jobs: int = 1,
    exact: bool = False,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> CollisionReport:
    """Every pair of distinct words of length ``<= max_len`` with equal acceptance.

    Words are enumerated in length-lexicographic order over the automaton's
    letter order (the empty word first).  Pairs are listed by the rank of
    their first word, then of their second.  Each reported class is
    re-evaluated from scratch before emission.  ``exact`` switches radical
    automata from the squared-entry signature to the exact one.
    """
    letters = list(q.letters)
    total = check_budget(len(letters), max_len)
    init, _, key = _states(q, exact)
    entries = [(key(init), ())]
    if jobs > 1 and len(letters) > 1 and max_len >= 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(
                _enumerate_job, [(q, letters, x, max_len, exact) for x in letters]
            )
            for part in parts:
                entries.extend(part)
    else:
        entries.extend(_enumerate(q, letters, None, max_len, exact))

    rank = {x: i for i, x in enumerate(letters)}

    def order(word):
        return (len(word), [rank[x] for x in word])

    groups: dict[str, list] = {}
    for k, word in entries:
        groups.setdefault(k, []).append(word)
    classes = [sorted(ws, key=order) for ws in groups.values() if len(ws) > 1]
    classes.sort(key=lambda ws: order(ws[0]))

    report = CollisionReport(max_len=max_len, digest=automaton_digest(q), words=total,
                             classes=len(classes), exact=exact)
    pairs = []
    for ws in classes:
        values = [acceptance_value(q, w, exact) for w in ws]
        if any(v != values[0] for v in values):  # pragma: no cover - enumeration bug
            raise AssertionError(f"recomputation disagrees inside class {ws}")
        for (i, w1), (j, w2) in itertools.combinations(enumerate(ws), 2):
            pairs.append((order(w1), order(w2), w1, w2, values[0]))
    pairs.sort(key=lambda p: (p[0], p[1]))
    if len(pairs) > max_pairs:
        report.truncated = True
        pairs = pairs[:max_pairs]
    report.pairs = [(w1, w2, v) for _, _, w1, w2, v in pairs]
    return report


# ---------------------------------------------------------------------------
# algebraic suites


@dataclass
class SuiteResult:
    ok: bool
    checked: int
    counterexample: dict | None = None

    def to_json(self) -> dict:
        out = {"status": "pass" if self.ok else "fail", "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def lemma_expected(q):
    """Expected images of ``(r, x, y, z)`` under reverse, neg_a, neg_b, neg_ab."""
    r, x, y, z = q
    return {
        "reverse": (r, x, y, -z),
        "neg_a": (r, -x, y, -z),
        "neg_b": (r, x, -y, -z),
        "neg_ab": (r, -x, -y, z),
    }


def check_lemma_word(w: FreeWord) -> str | None:
    """Name of the first failing transform for ``w``, or None."""
    base = gamma2(w)
    for variant, expected in lemma_expected(base).items():
        if tuple(gamma2(word_transform(w, variant))) != tuple(expected):
            return variant
    return None


def verify_lemma_identities(
    sample_count: int = 1000, max_syllables: int = 20, seed: int = 0
) -> SuiteResult:
    """Sign identities of the four word transforms on random reduced words
    (plus the empty word and ``a``)."""
    rng = random.Random(seed)
    words = [FreeWord(()), FreeWord((("a", 1),))]
    words += [random_freeword(rng, max_syllables) for _ in range(sample_count)]
    for w in words:
        bad = check_lemma_word(w)
        if bad is not None:
            return SuiteResult(False, len(words), {"word": str(w), "transform": bad})
    return SuiteResult(True, len(words))


def enumerate_uniqueness(n: int, max_len: int) -> SuiteResult:
    """``abs_key`` is injective on nonempty words of length ``<= max_len`` over
    ``n`` letters, and every image has a unit top row."""
    total = word_count(n, max_len) - 1
    if total > UNIQUENESS_BUDGET:
        raise BudgetError(f"{total} words exceed the uniqueness budget {UNIQUENESS_BUDGET}")
    seen: dict = {}
    count = 0
    for length in range(1, max_len + 1):
        for word in itertools.product(range(1, n + 1), repeat=length):
            M = gamma(word, n)
            count += 1
            if not top_row_unit(M):
                return SuiteResult(False, count, {"word": list(word), "reason": "top row not unit"})
            k = abs_key(M)
            if k in seen:
                return SuiteResult(
                    False,
                    count,
                    {"word1": list(seen[k]), "word2": list(word), "key": [rat_to_str(x) for x in k]},
                )
            seen[k] = word
    return SuiteResult(True, count)


def ab_foil() -> dict:
    """The two orders of ``a`` and ``b``: equal absolute components, distinct quaternions."""
    ab = qmul(GEN_A, GEN_B)
    ba = qmul(GEN_B, GEN_A)
    return {
        "ab": [rat_to_str(x) for x in ab],
        "ba": [rat_to_str(x) for x in ba],
        "same_abs": [abs(x) for x in ab[:3]] == [abs(x) for x in ba[:3]],
        "distinct": ab != ba,
    }


def freeness_enumeration(max_len: int = 10) -> SuiteResult:
    """All products of length ``1..max_len`` over the two generators are distinct."""
    if word_count(2, max_len) - 1 > word_budget():
        raise BudgetError("freeness enumeration exceeds the word budget")
    seen: dict = {}
    level = [((), RatMatrix.identity(4))]
    count = 0
    for _ in range(max_len):
        nxt = []
        for word, M in level:
            for name, G in (("A", GEN_A_MATRIX), ("B", GEN_B_MATRIX)):
                w2 = word + (name,)
                P = matmul(M, G)
                count += 1
                if P in seen:
                    return SuiteResult(False, count, {"word1": "".join(seen[P]), "word2": "".join(w2)})
                seen[P] = w2
                nxt.append((w2, P))
        level = nxt
    return SuiteResult(True, count)


def gamma2_identity_check() -> bool:
    return gamma2(FreeWord(())) == ONE


# ---------------------------------------------------------------------------
# reduction soundness


CONSISTENT = "CONSISTENT"
INCONSISTENT = "INCONSISTENT"


@dataclass
class EndToEndResult:
    verdict: str
    solution: object
    report: CollisionReport
    transport_ok: bool
    aligned_pairs: int
    problems: list

    def to_json(self, float_digits: int | None = None) -> dict:
        return {
            "verdict": self.verdict,
            "solution": self.solution.to_json() if self.solution else None,
            "collisions": len(self.report.pairs),
            "aligned_pairs": self.aligned_pairs,
            "transport_ok": self.transport_ok,
            "problems": self.problems,
            "report": self.report.to_json(float_digits),
        }


def end_to_end(inst: MmpcpInstance, max_len: int, jobs: int = 1) -> EndToEndResult:
    """Brute-force solver vs. collision search on the compiled automaton.

    The verdict is CONSISTENT when both find something or both find nothing,
    the solver's solution maps to a pair of words with equal signatures, and
    every collision pair reads back as a valid mixed solution.
    """
    sol = brute_search(inst, max_len, restrict_claus=False)
    q = compile_injectivity(inst)
    report = collision_search(q, max_len, jobs=jobs)
    problems = []
    transport_ok = True
    if sol is not None:
        if not check_solution(inst, sol):  # pragma: no cover - solver bug
            problems.append("solver returned an invalid solution")
        w1, w2 = solution_words(sol)
        if w1 == w2 or accept_signature(q, w1) != accept_signature(q, w2):
            transport_ok = False
            problems.append("solution does not map to a signature collision")
    aligned = 0
    for w1, w2, _ in report.pairs:
        cand = pair_to_solution(w1, w2)
        if cand is None:
            problems.append(f"collision between unaligned words {list(w1)} / {list(w2)}")
            transport_ok = False
            continue
        aligned += 1
        try:
            ok = check_solution(inst, cand)
        except ValueError as exc:
            ok = False
            problems.append(f"collision {list(w1)} / {list(w2)}: {exc}")
        if not ok:
            transport_ok = False
            problems.append(f"collision {list(w1)} / {list(w2)} is not a solution")
    found_sol = sol is not None
    found_col = bool(report.pairs)
    if found_sol != found_col:
        problems.append(
            "solver found a solution but no collision was found" if found_sol
            else "collision found but the solver found no solution"
        )
    verdict = CONSISTENT if (found_sol == found_col and transport_ok) else INCONSISTENT
    return EndToEndResult(verdict, sol, report, transport_ok, aligned, problems)


@dataclass
class AmbiguityWitness:
    word1: tuple
    word2: tuple
    parity_differs: bool
    matrices_distinct: bool
    signatures_equal: bool

    def to_json(self) -> dict:
        return {
            "word1": list(self.word1),
            "word2": list(self.word2),
            "parity_differs": self.parity_differs,
            "matrices_distinct": self.matrices_distinct,
            "signatures_equal": self.signatures_equal,
        }


def ambiguity_witnesses(inst: MmpcpInstance, max_len: int) -> list[AmbiguityWitness]:
    """Collision pairs of the 9-state automaton with their matrix comparison."""
    q = compile_ambiguity(inst)
    report = collision_search(q, max_len)
    out = []
    for w1, w2, _ in report.pairs:
        out.append(
            AmbiguityWitness(
                tuple(w1),
                tuple(w2),
                corner_parity(inst, w1) != corner_parity(inst, w2),
                q.product_matrix(w1) != q.product_matrix(w2),
                accept_signature(q, w1) == accept_signature(q, w2),
            )
        )
    return out


def corollary_check(inst: MmpcpInstance, max_len: int) -> SuiteResult:
    """Pairs with differing marked-letter parity have distinct 9x9 products
    and equal signatures."""
    ws = ambiguity_witnesses(inst, max_len)
    for w in ws:
        if not w.signatures_equal or (w.parity_differs and not w.matrices_distinct):
            return SuiteResult(False, len(ws), w.to_json())
    return SuiteResult(True, len(ws))
