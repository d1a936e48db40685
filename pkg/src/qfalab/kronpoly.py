"""Polynomials in squared matrix entries as acceptance probabilities.

A positive-integer polynomial in the squares of selected entries of an
``n x n`` product ``Y`` is realised as ``||P zeta(Y) u||^2`` of an automaton
whose generators are direct sums of Kronecker powers.  A term
``c * prod_m (Y[pos_m]^2)^(e_m)`` of degree ``i = sum(e_m)`` becomes four copies
of ``X^(kron i)``; copy ``k`` starts at ``d_k * e_r`` and is projected on
coordinate ``s``, where ``(s, r)`` is the Kronecker index holding the product
of the term's entries and ``c = d_1^2 + ... + d_4^2``.  Four idle
coordinates carry the split of ``delta``, the smallest number making the
initial vector's squared length ``S + delta`` a perfect square (``S`` is the
sum of all coefficients), so the normalised initial vector is rational.

The dense automaton therefore accepts with probability
``poly(squared entries) / (S + delta)``; :func:`eval_lazy` computes the same
value from the small product alone.  :class:`SymbolicPlan` skips the
expansion for the nested packing polynomial and returns its raw value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from gmpy2 import mpq

from .exactnum import SchemaError, rat_to_str
from .polypack import Polynomial, complete_square, decompose_poly, four_squares, fk
from .qfa import Qfa
from .ratmatrix import RatMatrix, dsum_all, kron_power, matmul

DENSE_DIMENSION_CAP = 4096

# Key entries of the 8x8 reduction generators (1-based).
KEY_POSITIONS = ((1, 1), (1, 2), (1, 3), (5, 5), (5, 6), (5, 7))


def monomial_index(entries: Sequence[tuple[int, int]], n: int):
    """Kronecker index of a product of matrix entries.

    ``entries`` lists 1-based ``(row, col)`` positions with multiplicity.
    Returns ``(digit_pairs, s, r)``: the digit pairs sorted by position and
    the 1-based row/column of ``X^(kron i)`` whose entry is the product.
    """
    if not entries:
        raise ValueError("monomial must have degree at least 1")
    for row, col in entries:
        if not (1 <= row <= n and 1 <= col <= n):
            raise ValueError(f"position {(row, col)} outside a {n}x{n} matrix")
    pairs = tuple(sorted((int(r), int(c)) for r, c in entries))
    s = r = 0
    for row, col in pairs:
        s = s * n + (row - 1)
        r = r * n + (col - 1)
    return pairs, s + 1, r + 1


@dataclass(frozen=True)
class KronTerm:
    coeff: int
    exponents: tuple[int, ...]
    split: tuple[int, int, int, int]

    @property
    def degree(self) -> int:
        return sum(self.exponents)


@dataclass(frozen=True)
class KronPlan:
    n: int
    positions: tuple[tuple[int, int], ...]
    terms: tuple[KronTerm, ...]
    delta: int

    @property
    def total_weight(self) -> int:
        return sum(t.coeff for t in self.terms)

    @property
    def delta_split(self) -> tuple[int, int, int, int]:
        return four_squares(self.delta)

    @property
    def normalizer(self) -> int:
        return self.total_weight + self.delta

    def entries_of(self, term: KronTerm) -> list[tuple[int, int]]:
        out = []
        for pos, e in zip(self.positions, term.exponents):
            out.extend([pos] * e)
        return out

    def index_of(self, term: KronTerm) -> tuple[int, int]:
        _, s, r = monomial_index(self.entries_of(term), self.n)
        return s, r

    def dense_dimension(self) -> int:
        return sum(4 * self.n**t.degree for t in self.terms) + 4

    def polynomial(self) -> Polynomial:
        return Polynomial(len(self.positions), {t.exponents: t.coeff for t in self.terms})

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "positions": [list(p) for p in self.positions],
            "terms": [
                {"coeff": t.coeff, "exponents": list(t.exponents), "split": list(t.split)}
                for t in self.terms
            ],
            "delta": self.delta,
        }

    @classmethod
    def from_json(cls, data) -> "KronPlan":
        try:
            n = int(data["n"])
            positions = [tuple(int(x) for x in p) for p in data["positions"]]
            poly = Polynomial(
                len(positions),
                {tuple(t["exponents"]): int(t["coeff"]) for t in data["terms"]},
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad plan: {exc}") from exc
        plan = make_plan(poly, positions, n)
        if "delta" in data and int(data["delta"]) != plan.delta:
            raise SchemaError("delta does not complete the coefficient sum to a square")
        return plan


def make_plan(poly: Polynomial, positions: Sequence[tuple[int, int]], n: int) -> KronPlan:
    """Plan for ``poly`` whose variable ``m`` is ``Y[positions[m]]^2``."""
    positions = tuple((int(r), int(c)) for r, c in positions)
    if poly.nvars != len(positions):
        raise ValueError("one position per polynomial variable is required")
    for row, col in positions:
        if not (1 <= row <= n and 1 <= col <= n):
            raise ValueError(f"position {(row, col)} outside a {n}x{n} matrix")
    if not poly.terms:
        raise ValueError("plan needs at least one term")
    terms = []
    for t in decompose_poly(poly):
        if t.degree == 0:
            raise ValueError("constant terms cannot be realised by a Kronecker power")
        terms.append(KronTerm(t.coeff, t.exponents, t.split))
    S = sum(t.coeff for t in terms)
    return KronPlan(n, positions, tuple(terms), complete_square(S))


def build_initial_vector(plan: KronPlan) -> tuple[tuple[int, ...], tuple]:
    """Integer vector ``u''`` and the unit rational vector ``u''/|u''|``."""
    if not plan.terms:
        raise ValueError("plan needs at least one term")
    vec: list[int] = []
    for t in plan.terms:
        size = plan.n**t.degree
        _, r = plan.index_of(t)
        for d in t.split:
            block = [0] * size
            block[r - 1] = d
            vec.extend(block)
    vec.extend(plan.delta_split)
    norm2 = sum(x * x for x in vec)
    root = math.isqrt(norm2)
    if root * root != norm2:  # pragma: no cover - guaranteed by complete_square
        raise AssertionError(f"{norm2} is not a perfect square")
    return tuple(vec), tuple(mpq(x, root) for x in vec)


def _check_bases(bases: Mapping[str, RatMatrix], n: int) -> None:
    for name, X in bases.items():
        if X.shape != (n, n):
            raise ValueError(f"base {name!r} is {X.rows}x{X.cols}, expected {n}x{n}")


def build_dense(bases: Mapping[str, RatMatrix], plan: KronPlan) -> Qfa:
    """Materialise the automaton (only for plans within the dimension cap)."""
    dim = plan.dense_dimension()
    if dim > DENSE_DIMENSION_CAP:
        raise ValueError(f"dense dimension {dim} exceeds the cap {DENSE_DIMENSION_CAP}")
    _check_bases(bases, plan.n)
    generators = {}
    for name, X in bases.items():
        powers: dict[int, RatMatrix] = {}
        blocks = []
        for t in plan.terms:
            if t.degree not in powers:
                powers[t.degree] = kron_power(X, t.degree)
            blocks.extend([powers[t.degree]] * 4)
        blocks.append(RatMatrix.identity(4))
        generators[name] = dsum_all(blocks)
    diag: list[int] = []
    for t in plan.terms:
        size = plan.n**t.degree
        s, _ = plan.index_of(t)
        for _k in range(4):
            block = [0] * size
            block[s - 1] = 1
            diag.extend(block)
    diag.extend([0] * 4)
    _, u = build_initial_vector(plan)
    return Qfa(RatMatrix.diag(diag), generators, u)


def word_product(bases: Mapping[str, RatMatrix], n: int, word: Sequence[str]) -> RatMatrix:
    """``X_wk ... X_w1`` in the base dimension."""
    Y = RatMatrix.identity(n)
    for letter in word:
        try:
            X = bases[letter]
        except KeyError:
            raise ValueError(f"unknown letter {letter!r}") from None
        Y = matmul(X, Y)
    return Y


def squared_entries(Y: RatMatrix, positions: Sequence[tuple[int, int]]) -> list:
    return [Y[r - 1, c - 1] ** 2 for r, c in positions]


@dataclass(frozen=True)
class SymbolicPlan:
    """Nested packing polynomial over ``positions``, never expanded.

    Its dense realisation would have astronomically many states, so only
    lazy evaluation exists and the constant normaliser is left out: the raw
    polynomial value is returned.
    """

    n: int
    positions: tuple[tuple[int, int], ...] = KEY_POSITIONS

    def __post_init__(self):
        if len(self.positions) < 2:
            raise ValueError("packing needs at least two positions")
        for row, col in self.positions:
            if not (1 <= row <= self.n and 1 <= col <= self.n):
                raise ValueError(f"position {(row, col)} outside a {self.n}x{self.n} matrix")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "positions": [list(p) for p in self.positions],
            "symbolic": f"f{len(self.positions)}",
        }


def f6_plan(n: int = 8) -> SymbolicPlan:
    return SymbolicPlan(n, KEY_POSITIONS)


def eval_lazy(bases: Mapping[str, RatMatrix], plan, word: Sequence[str]):
    """Acceptance computed from the small product ``Y``.

    For a :class:`KronPlan` this is exactly the dense automaton's acceptance,
    ``poly(squared entries) / (S + delta)``.  For a :class:`SymbolicPlan` it
    is the packing polynomial of the squared entries.
    """
    Y = word_product(bases, plan.n, word)
    values = squared_entries(Y, plan.positions)
    if isinstance(plan, SymbolicPlan):
        return fk(values)
    return plan.polynomial()(values) / plan.normalizer


def plan_summary(plan: KronPlan) -> dict:
    """Plan JSON plus derived quantities, for reports."""
    out = plan.to_json()
    out["weight"] = plan.total_weight
    out["delta_split"] = list(plan.delta_split)
    out["dense_dimension"] = plan.dense_dimension()
    out["normalizer"] = rat_to_str(mpq(plan.normalizer))
    return out
