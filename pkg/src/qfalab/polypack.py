"""Injective packing polynomials on 5-adic fractions, plus the integer
helpers used to turn a polynomial into an automaton.

``LAMBDA`` below means the set ``{a / 5**k : a < 5**k}`` of fractions in
``[0, 1)`` whose denominators are powers of five.  On ``LAMBDA x LAMBDA`` the
polynomial ``f(x, y) = (x**4 + y**4)**3 + x**4`` is injective, and its
values stay below 25.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from gmpy2 import mpq

from .exactnum import as_rational, rat_to_str

FOUR_SQUARES_CAP = 10**9


@dataclass(frozen=True)
class LambdaRational:
    """``a / 5**k`` in canonical form (``5 | a`` only when ``a == 0``, and then ``k == 0``)."""

    a: int
    k: int

    def __post_init__(self):
        a, k = int(self.a), int(self.k)
        if a < 0 or k < 0:
            raise ValueError("a and k must be nonnegative")
        if k > 0 and a >= 5**k:
            raise ValueError(f"{a}/5^{k} is not below 1")
        if k == 0 and a != 0:
            raise ValueError("with k = 0 only a = 0 is allowed")
        if a == 0:
            k = 0
        while k > 0 and a % 5 == 0:
            a //= 5
            k -= 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "k", k)

    @property
    def value(self):
        return mpq(self.a, 5**self.k)

    @classmethod
    def from_rational(cls, x) -> "LambdaRational":
        x = as_rational(x)
        if not in_lambda(x):
            raise ValueError(f"{rat_to_str(x)} is not of the form a/5^k below 1")
        d = int(x.denominator)
        k = 0
        while d > 1:
            d //= 5
            k += 1
        return cls(int(x.numerator), k)


def in_lambda(x) -> bool:
    x = as_rational(x)
    if x < 0 or x >= 1:
        return False
    d = int(x.denominator)
    while d % 5 == 0:
        d //= 5
    return d == 1


def _value(x):
    return x.value if isinstance(x, LambdaRational) else as_rational(x)


def f2(x, y):
    """``(x^4 + y^4)^3 + x^4`` evaluated exactly."""
    x4 = _value(x) ** 4
    y4 = _value(y) ** 4
    return (x4 + y4) ** 3 + x4


def fk(xs: Sequence):
    """Nested packing ``f(x1, f_{n-1}(x2, ..., xn) / 25)`` with ``f_2 = f``.

    Each inner value is scaled by 1/25 before reuse so that it lies in
    ``LAMBDA`` again.  The outer value is left unscaled.
    """
    if len(xs) < 2:
        raise ValueError("packing needs at least two arguments")
    vals = [_value(x) for x in xs]
    acc = f2(vals[-2], vals[-1])
    for x in reversed(vals[:-2]):
        acc = f2(x, acc / 25)
    return acc


def fk_degree(n: int) -> int:
    """Total degree of the nested packing polynomial in n variables."""
    if n < 2:
        raise ValueError("packing needs at least two arguments")
    return 12 ** (n - 1)


def cantor_pair(x, y):
    x, y = as_rational(x), as_rational(y)
    s = x + y
    return (s + 1) * s / 2 + x


def four_squares(n: int) -> tuple[int, int, int, int]:
    """Lexicographically greatest descending ``(a1, a2, a3, a4)`` with sum of squares ``n``."""
    n = int(n)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > FOUR_SQUARES_CAP:
        raise ValueError(f"n exceeds the cap {FOUR_SQUARES_CAP}")
    result = _greatest_split(n, 4, math.isqrt(n))
    if result is None:  # pragma: no cover - Lagrange guarantees a split
        raise AssertionError(f"no four-square split for {n}")
    return result


def _greatest_split(n: int, parts: int, bound: int):
    """Greatest descending tuple of ``parts`` squares summing to n, entries <= bound."""
    if parts == 1:
        r = math.isqrt(n)
        return (r,) if r * r == n and r <= bound else None
    top = min(bound, math.isqrt(n))
    for a in range(top, -1, -1):
        rest = n - a * a
        if rest > (parts - 1) * a * a:
            break
        tail = _greatest_split(rest, parts - 1, a)
        if tail is not None:
            return (a,) + tail
    return None


def complete_square(S: int) -> int:
    """Smallest ``delta >= 0`` making ``S + delta`` a perfect square."""
    S = int(S)
    if S < 0:
        raise ValueError("S must be nonnegative")
    r = math.isqrt(S)
    if r * r < S:
        r += 1
    return r * r - S


class Polynomial:
    """Polynomial with positive integer coefficients, keyed by exponent vectors."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], int] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], int] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            c = int(c)
            if c < 0:
                raise ValueError("coefficients must be nonnegative")
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.terms = clean

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def __add__(self, other: "Polynomial") -> "Polynomial":
        merged = dict(self.terms)
        for k, v in other.terms.items():
            merged[k] = merged.get(k, 0) + v
        return Polynomial(self.nvars, merged)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    def __pow__(self, k: int) -> "Polynomial":
        result = Polynomial(self.nvars, {(0,) * self.nvars: 1})
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        return isinstance(other, Polynomial) and (self.nvars, self.terms) == (other.nvars, other.terms)

    def __call__(self, values: Sequence):
        vals = [as_rational(v) for v in values]
        total = mpq(0)
        for exps, c in self.terms.items():
            mono = mpq(c)
            for v, e in zip(vals, exps):
                if e:
                    mono *= v**e
            total += mono
        return total

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def coefficient_sum(self) -> int:
        return sum(self.terms.values())

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.terms})"


def f2_polynomial() -> Polynomial:
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    x4 = x**4
    return (x4 + y**4) ** 3 + x4


@dataclass(frozen=True)
class DecomposedTerm:
    degree: int
    index: int
    coeff: int
    exponents: tuple[int, ...]
    split: tuple[int, int, int, int]


def decompose_poly(p: Polynomial) -> list[DecomposedTerm]:
    """Group terms by total degree, number them within each degree from 1,
    and attach the four-square split of every coefficient."""
    ordered = sorted(p.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    out = []
    for degree, group in itertools.groupby(ordered, key=lambda kv: sum(kv[0])):
        for j, (exps, c) in enumerate(group, start=1):
            out.append(DecomposedTerm(degree, j, c, exps, four_squares(c)))
    return out


def lambda_grid(k_max: int) -> list:
    """All elements ``a / 5^k`` with ``k <= k_max``, increasing."""
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    scale = 5**k_max
    return [mpq(a, scale) for a in range(scale)]


@dataclass(frozen=True)
class ScanResult:
    """Outcome of a grid scan.

    ``collision``/``value`` hold the first repeat met in lexicographic
    order; ``classes`` lists every group of inputs sharing a value (only
    filled when the scan ran to completion with ``collect_all``).
    """

    ok: bool
    points: int
    collision: tuple | None = None
    value: object = None
    classes: tuple = ()

    def to_json(self) -> dict:
        if self.ok:
            return {"status": "injective", "points": self.points}
        (x1, y1), (x2, y2) = self.collision
        out = {
            "status": "collision",
            "points": self.points,
            "collision": [
                [rat_to_str(x1), rat_to_str(y1)],
                [rat_to_str(x2), rat_to_str(y2)],
            ],
            "value": rat_to_str(self.value),
        }
        if self.classes:
            out["classes"] = [
                {
                    "value": rat_to_str(v),
                    "inputs": [[rat_to_str(x), rat_to_str(y)] for x, y in pts],
                }
                for v, pts in self.classes
            ]
        return out

    def has_collision(self, p1, p2) -> bool:
        """True if the two input pairs were found to share a value."""
        p1 = tuple(as_rational(x) for x in p1)
        p2 = tuple(as_rational(x) for x in p2)
        if self.collision is not None and {p1, p2} <= set(self.collision):
            return True
        return any(p1 in pts and p2 in pts for _, pts in self.classes)


def injectivity_scan(
    evaluator: Callable,
    k_max: int,
    on_point: Callable | None = None,
    collect_all: bool = False,
) -> ScanResult:
    """Evaluate on every pair of the grid and report the first repeated value.

    Pairs are visited in lexicographic order; the reported collision pairs
    the first pair that produced the value with the pair that repeated it.
    With ``collect_all`` the scan continues over the whole grid and also
    returns every collision class, ordered by value.
    """
    if k_max > 3:
        raise ValueError("k_max above 3 is outside the scan budget")
    grid = lambda_grid(k_max)
    seen: dict = {}
    count = 0
    first = None
    for x, y in itertools.product(grid, repeat=2):
        v = evaluator(x, y)
        count += 1
        if on_point is not None:
            on_point(x, y, v)
        if v in seen:
            if first is None:
                first = (seen[v][0], (x, y), v)
                if not collect_all:
                    break
            seen[v].append((x, y))
        else:
            seen[v] = [(x, y)]
    if first is None:
        return ScanResult(True, count)
    classes = ()
    if collect_all:
        classes = tuple(
            (v, tuple(pts)) for v, pts in sorted(seen.items()) if len(pts) > 1
        )
    return ScanResult(False, count, (first[0], first[1]), first[2], classes)


def fermat_fourth_power_check(limit: int) -> Iterable[int]:
    """Yield every ``1 <= n <= limit`` with ``5 !| n`` and ``n^4 != 1 (mod 5)``."""
    for n in range(1, limit + 1):
        if n % 5 and pow(n, 4, 5) != 1:
            yield n
