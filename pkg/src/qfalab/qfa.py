"""Measure-once quantum finite automata with exact entries.

:class:`Qfa` is a fully materialized rational automaton.  :class:`RadicalQfa`
is the 8- or 9-state automaton produced by the reduction: its initial vector
is built from fourth roots of the first six primes and is never stored
numerically.  Acceptance of a radical automaton is returned as a
:class:`~qfalab.exactnum.RadicalSignature` with the constant normalizer
``sum(sqrt(p))`` left out.

A word ``w1 ... wk`` is applied first-letter-first, i.e. the state is
``X_wk ... X_w1 u``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from gmpy2 import mpq

from .exactnum import (
    PRIMES,
    RadicalSignature,
    SchemaError,
    parse_rational,
    rat_to_str,
)
from .ratmatrix import RatMatrix, dsum, matmul

_I4 = RatMatrix.identity(4)


def _ordered(generators: dict, letters) -> dict:
    """Reorder generators by the serialized letter list (JSON objects lose order)."""
    if letters is None:
        return generators
    if not isinstance(letters, list) or sorted(letters) != sorted(generators):
        raise SchemaError("letters must list every generator exactly once")
    return {k: generators[k] for k in letters}


@dataclass(frozen=True)
class Qfa:
    projection: RatMatrix
    generators: Mapping[str, RatMatrix]
    initial: tuple

    def __post_init__(self):
        object.__setattr__(self, "initial", tuple(mpq(x) for x in self.initial))
        object.__setattr__(self, "generators", dict(self.generators))

    @property
    def dimension(self) -> int:
        return len(self.initial)

    @property
    def letters(self) -> list[str]:
        return list(self.generators)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "projection": self.projection.to_json(),
            "generators": {k: m.to_json() for k, m in self.generators.items()},
            "initial": [rat_to_str(x) for x in self.initial],
            "letters": self.letters,
        }

    @classmethod
    def from_json(cls, data) -> "Qfa":
        try:
            qfa = cls(
                projection=RatMatrix.from_json(data["projection"]),
                generators=_ordered(
                    {k: RatMatrix.from_json(v) for k, v in data["generators"].items()},
                    data.get("letters"),
                ),
                initial=tuple(parse_rational(x) for x in data["initial"]),
            )
            dim = int(data["dimension"])
        except (KeyError, TypeError, AttributeError) as exc:
            raise SchemaError(f"bad automaton: {exc}") from exc
        if dim != qfa.dimension:
            raise SchemaError("dimension does not match the initial vector")
        return qfa


def example1_qfa() -> Qfa:
    """Two-state automaton rotating by ``arccos(3/5)`` with ``P = diag(1, 0)``
    and ``u = (1, 0)``; its acceptance values on ``a^k`` are all distinct."""
    A = RatMatrix([[mpq(3, 5), mpq(-4, 5)], [mpq(4, 5), mpq(3, 5)]])
    return Qfa(RatMatrix.diag([1, 0]), {"a": A}, (1, 0))


def validate(q: Qfa) -> list[str]:
    """Exact check of the automaton invariants; an empty list means valid."""
    problems = []
    n = q.dimension
    P = q.projection
    if P.shape != (n, n):
        problems.append(f"projection is {P.rows}x{P.cols}, expected {n}x{n}")
    else:
        if matmul(P, P) != P:
            problems.append("projection is not idempotent")
        if P.T != P:
            problems.append("projection is not symmetric")
    for name, X in q.generators.items():
        if X.shape != (n, n):
            problems.append(f"generator {name!r} is {X.rows}x{X.cols}, expected {n}x{n}")
        elif not X.is_orthogonal():
            problems.append(f"generator {name!r} is not orthogonal")
    norm2 = sum(x * x for x in q.initial)
    if norm2 != 1:
        problems.append(f"initial vector has squared length {rat_to_str(norm2)}, not 1")
    return problems


def run_state(q: Qfa, word: Sequence[str], state: Sequence | None = None) -> tuple:
    """State vector after reading ``word`` (first letter applied first)."""
    v = tuple(q.initial) if state is None else tuple(state)
    for letter in word:
        try:
            X = q.generators[letter]
        except KeyError:
            raise ValueError(f"unknown letter {letter!r}") from None
        v = X.apply(v)
    return v


def acceptance_of_state(q: Qfa, state: Sequence):
    projected = q.projection.apply(state)
    return sum((x * x for x in projected), mpq(0))


def accept_rational(q: Qfa, word: Sequence[str]):
    """Exact ``||P X_{w^R} u||^2``."""
    return acceptance_of_state(q, run_state(q, word))


@dataclass(frozen=True)
class RadicalBlock:
    """One generator ``left (+) right`` with an optional ``+-1`` corner."""

    left: RatMatrix
    right: RatMatrix
    corner: int | None = None

    def matrix(self) -> RatMatrix:
        m = dsum(self.left, self.right)
        if self.corner is not None:
            m = dsum(m, RatMatrix.scalar(self.corner))
        return m

    def to_json(self) -> dict:
        out = {"left": self.left.to_json(), "right": self.right.to_json()}
        if self.corner is not None:
            out["corner"] = self.corner
        return out

    @classmethod
    def from_json(cls, data) -> "RadicalBlock":
        try:
            corner = data.get("corner")
            if corner is not None and corner not in (1, -1):
                raise SchemaError("corner must be 1 or -1")
            return cls(
                RatMatrix.from_json(data["left"]),
                RatMatrix.from_json(data["right"]),
                corner,
            )
        except (KeyError, AttributeError) as exc:
            raise SchemaError(f"bad generator block: {exc}") from exc


@dataclass(frozen=True)
class RadicalQfa:
    """Reduction automaton with the implicit initial vector
    ``(u1 (+) u2) / sqrt(sum sqrt(p_i))``, ``u1 = (2^(1/4), 3^(1/4), 5^(1/4), 0)``,
    ``u2 = (7^(1/4), 11^(1/4), 13^(1/4), 0)`` and projection onto states 1 and 5.

    ``fold_left``/``fold_right`` premultiply ``u1``/``u2``; they are the
    identity except after an alphabet trim.
    """

    generators: Mapping[str, RadicalBlock]
    ambiguity: bool = False
    fold_left: RatMatrix = field(default=_I4)
    fold_right: RatMatrix = field(default=_I4)

    def __post_init__(self):
        object.__setattr__(self, "generators", dict(self.generators))
        for name, block in self.generators.items():
            if (block.corner is not None) != self.ambiguity:
                raise ValueError(f"generator {name!r}: corner presence must match ambiguity flag")

    @property
    def dimension(self) -> int:
        return 9 if self.ambiguity else 8

    @property
    def trimmed(self) -> bool:
        return self.fold_left != _I4 or self.fold_right != _I4

    @property
    def letters(self) -> list[str]:
        return list(self.generators)

    def matrix(self, letter: str) -> RatMatrix:
        return self._block(letter).matrix()

    def _block(self, letter: str) -> RadicalBlock:
        try:
            return self.generators[letter]
        except KeyError:
            raise ValueError(f"unknown letter {letter!r}") from None

    def product_blocks(self, word: Sequence[str]) -> tuple[RatMatrix, RatMatrix, int]:
        """``(left, right, corner)`` blocks of ``X_wk ... X_w1``."""
        left, right, corner = _I4, _I4, 1
        for letter in word:
            b = self._block(letter)
            left = matmul(b.left, left)
            right = matmul(b.right, right)
            if b.corner is not None:
                corner *= b.corner
        return left, right, corner

    def product_matrix(self, word: Sequence[str]) -> RatMatrix:
        left, right, corner = self.product_blocks(word)
        m = dsum(left, right)
        return dsum(m, RatMatrix.scalar(corner)) if self.ambiguity else m

    def to_json(self) -> dict:
        out = {
            "kind": "radical",
            "dimension": self.dimension,
            "ambiguity": self.ambiguity,
            "blocks": {k: b.to_json() for k, b in self.generators.items()},
            "letters": self.letters,
        }
        if self.trimmed:
            out["fold"] = {
                "left": self.fold_left.to_json(),
                "right": self.fold_right.to_json(),
            }
        return out

    @classmethod
    def from_json(cls, data) -> "RadicalQfa":
        try:
            if data.get("kind") != "radical":
                raise SchemaError("not a radical automaton")
            fold = data.get("fold")
            q = cls(
                generators=_ordered(
                    {k: RadicalBlock.from_json(v) for k, v in data["blocks"].items()},
                    data.get("letters"),
                ),
                ambiguity=bool(data["ambiguity"]),
                fold_left=RatMatrix.from_json(fold["left"]) if fold else _I4,
                fold_right=RatMatrix.from_json(fold["right"]) if fold else _I4,
            )
        except (KeyError, AttributeError, TypeError) as exc:
            raise SchemaError(f"bad radical automaton: {exc}") from exc
        except ValueError as exc:
            if isinstance(exc, SchemaError):
                raise
            raise SchemaError(str(exc)) from exc
        if "dimension" in data and int(data["dimension"]) != q.dimension:
            raise SchemaError("dimension does not match the ambiguity flag")
        return q


def _sqrt_exps(i: int) -> tuple[int, ...]:
    e = [0] * len(PRIMES)
    e[i] = 2
    return tuple(e)


def _cross_exps(i: int, j: int) -> tuple[int, ...]:
    e = [0] * len(PRIMES)
    e[i] = 1
    e[j] = 1
    return tuple(e)


def _amplitude_square(coeffs: Sequence, offset: int, terms: dict) -> None:
    """Add ``(sum_j c_j p_{offset+j}^(1/4))^2`` to ``terms``."""
    for j, c in enumerate(coeffs):
        if c:
            key = _sqrt_exps(offset + j)
            terms[key] = terms.get(key, 0) + c * c
    for j in range(len(coeffs)):
        for k in range(j + 1, len(coeffs)):
            if coeffs[j] and coeffs[k]:
                key = _cross_exps(offset + j, offset + k)
                terms[key] = terms.get(key, 0) + 2 * coeffs[j] * coeffs[k]


def _top_coefficients(block: RatMatrix, fold: RatMatrix) -> tuple:
    m = block if fold == _I4 else matmul(block, fold)
    return m.row(0)[:3]


def signature_from_blocks(q: RadicalQfa, left: RatMatrix, right: RatMatrix) -> RadicalSignature:
    if q.trimmed:
        return exact_signature_from_blocks(q, left, right)
    terms = {}
    for j in range(3):
        for offset, block in ((0, left), (3, right)):
            x = block[0, j]
            if x:
                terms[_sqrt_exps(offset + j)] = x * x
    return RadicalSignature(terms)


def exact_signature_from_blocks(q: RadicalQfa, left: RatMatrix, right: RatMatrix) -> RadicalSignature:
    terms: dict = {}
    _amplitude_square(_top_coefficients(left, q.fold_left), 0, terms)
    _amplitude_square(_top_coefficients(right, q.fold_right), 3, terms)
    return RadicalSignature(terms)


def accept_signature(q: RadicalQfa, word: Sequence[str]) -> RadicalSignature:
    """Acceptance numerator ``sum_j X_{1,j}^2 sqrt(p_j) + sum_j X_{5,4+j}^2 sqrt(p_{3+j})``.

    This is the squared-entry form used by the reduction argument.  It keeps
    the comparison inside the square-root basis, where coefficient equality
    is value equality.  Trimmed automata have a folded initial vector and
    fall back to :func:`exact_signature`.
    """
    left, right, _ = q.product_blocks(word)
    return signature_from_blocks(q, left, right)


def exact_signature(q: RadicalQfa, word: Sequence[str]) -> RadicalSignature:
    """The true pure-state value ``||P X u||^2 * sum(sqrt(p_i))``.

    Each projected block contributes the square of a single amplitude
    ``sum_j c_j p_j^(1/4)``, so cross terms ``2 c_j c_k (p_j p_k)^(1/4)`` appear
    alongside the square roots.
    """
    left, right, _ = q.product_blocks(word)
    return exact_signature_from_blocks(q, left, right)


def normalizer_signature() -> RadicalSignature:
    """``sum_i sqrt(p_i)``, the omitted constant denominator."""
    return RadicalSignature.from_sqrt({p: 1 for p in PRIMES})
