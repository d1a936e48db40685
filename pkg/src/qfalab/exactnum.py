"""Exact scalars: canonical rationals and sums of radicals of small primes.

Rationals are ``gmpy2.mpq`` values, which are always stored in lowest terms
with a positive denominator.  A :class:`RadicalSignature` is a finite
rational combination of monomials ``prod p_i ** (e_i / 4)`` over the fixed
primes ``(2, 3, 5, 7, 11, 13)``.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Mapping

import mpmath
from gmpy2 import mpq

PRIMES = (2, 3, 5, 7, 11, 13)

Rational = type(mpq())

__all__ = [
    "PRIMES",
    "Rational",
    "RadicalSignature",
    "SchemaError",
    "as_rational",
    "parse_rational",
    "rat_canonicalize",
    "rat_to_str",
    "radsig_equal",
    "radsig_to_float",
    "rat_to_float",
    "canonical_json",
]


class SchemaError(ValueError):
    """Raised when serialized input does not match the expected layout."""


def rat_canonicalize(n: int, d: int) -> Rational:
    """Return ``n/d`` in lowest terms with a positive denominator.

    >>> rat_to_str(rat_canonicalize(2, -4))
    '-1/2'
    """
    if d == 0:
        raise ZeroDivisionError("zero denominator")
    return mpq(int(n), int(d))


def as_rational(x) -> Rational:
    """Coerce an int, mpq, Fraction or ``"n/d"`` string to a rational.

    Floats are refused: they would silently import rounding error.
    """
    if isinstance(x, Rational):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string or a fraction")
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, int):
        return mpq(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return rat_canonicalize(x.numerator, x.denominator)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rat_to_str(x) -> str:
    x = as_rational(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Rational:
    text = s.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            return rat_canonicalize(int(num), int(den))
        return mpq(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {s!r}") from exc


def _check_exponents(exps) -> tuple[int, ...]:
    exps = tuple(int(e) for e in exps)
    if len(exps) != len(PRIMES) or any(e < 0 or e > 3 for e in exps):
        raise ValueError(f"exponent vector must be 6 entries in 0..3, got {exps}")
    return exps


class RadicalSignature:
    """Sparse map from exponent vectors to nonzero rational coefficients.

    The represented real number is ``sum c_e * prod PRIMES[i] ** (e_i / 4)``.
    Instances are immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Iterable[int], object] | None = None):
        acc: dict[tuple[int, ...], Rational] = {}
        for exps, coeff in (terms or {}).items():
            key = _check_exponents(exps)
            acc[key] = acc.get(key, mpq(0)) + as_rational(coeff)
        self._terms = {k: v for k, v in sorted(acc.items()) if v != 0}
        self._hash = None

    @classmethod
    def from_sqrt(cls, coeffs: Mapping[int, object]) -> "RadicalSignature":
        """Build ``sum c_p * sqrt(p)`` from a ``{prime: coeff}`` map."""
        terms = {}
        for p, c in coeffs.items():
            if p not in PRIMES:
                raise ValueError(f"{p} is not in the radical basis")
            exps = [0] * len(PRIMES)
            exps[PRIMES.index(p)] = 2
            terms[tuple(exps)] = c
        return cls(terms)

    @property
    def terms(self) -> dict[tuple[int, ...], Rational]:
        return dict(self._terms)

    def is_sqrt_case(self) -> bool:
        """True when every monomial is a single square root."""
        return all(sorted(e) == [0, 0, 0, 0, 0, 2] for e in self._terms)

    def has_quarter_exponents(self) -> bool:
        return any(e % 2 for exps in self._terms for e in exps)

    def __add__(self, other: "RadicalSignature") -> "RadicalSignature":
        merged = dict(self._terms)
        for k, v in other._terms.items():
            merged[k] = merged.get(k, mpq(0)) + v
        return RadicalSignature(merged)

    def __neg__(self) -> "RadicalSignature":
        return RadicalSignature({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "RadicalSignature") -> "RadicalSignature":
        return self + (-other)

    def scale(self, c) -> "RadicalSignature":
        c = as_rational(c)
        return RadicalSignature({k: c * v for k, v in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, RadicalSignature):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def key(self) -> str:
        """Canonical text used for exact grouping."""
        return ";".join(
            "".join(map(str, e)) + ":" + rat_to_str(c) for e, c in self._terms.items()
        )

    def __repr__(self):
        if not self._terms:
            return "RadicalSignature({})"
        parts = []
        for exps, c in self._terms.items():
            rad = "*".join(
                f"{p}^({e}/4)" for p, e in zip(PRIMES, exps) if e
            ) or "1"
            parts.append(f"{rat_to_str(c)}*{rad}")
        return "RadicalSignature(" + " + ".join(parts) + ")"

    def to_json(self) -> list:
        return [
            {"exponents": list(e), "coeff": rat_to_str(c)}
            for e, c in self._terms.items()
        ]

    @classmethod
    def from_json(cls, data) -> "RadicalSignature":
        if not isinstance(data, list):
            raise SchemaError("signature must be a JSON array")
        terms: dict = {}
        try:
            for item in data:
                exps = tuple(item["exponents"])
                terms[exps] = terms.get(exps, mpq(0)) + parse_rational(item["coeff"])
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"bad signature entry: {exc}") from exc
        return cls(terms)


def radsig_equal(s1: RadicalSignature, s2: RadicalSignature) -> bool:
    """Coefficient-wise equality.

    For square-root signatures this is equality of the real numbers, since
    square roots of distinct primes are linearly independent over Q.  For
    quarter exponents it is taken as the definition.
    """
    return s1 == s2


def radsig_to_float(s: RadicalSignature, precision_digits: int) -> str:
    """Decimal string of the value, rounded to ``precision_digits`` places."""
    if precision_digits < 0 or precision_digits > 50:
        raise ValueError("precision_digits must be in 0..50")
    terms = s.terms
    if not terms:
        return "0"
    height = max(
        max(abs(c.numerator), c.denominator) for c in terms.values()
    )
    guard = 20 + len(str(height)) + len(terms).bit_length()
    with mpmath.workdps(precision_digits + guard):
        roots = [mpmath.root(p, 4) for p in PRIMES]
        total = mpmath.mpf(0)
        for exps, c in terms.items():
            mono = mpmath.mpf(1)
            for r, e in zip(roots, exps):
                if e:
                    mono *= r**e
            total += mpmath.mpf(int(c.numerator)) / int(c.denominator) * mono
        scaled = int(mpmath.nint(total * mpmath.mpf(10) ** precision_digits))
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled))
    if precision_digits == 0:
        return sign + digits
    digits = digits.rjust(precision_digits + 1, "0")
    return f"{sign}{digits[:-precision_digits]}.{digits[-precision_digits:]}"


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def rational_sqrt(x) -> Rational:
    """Exact square root of a rational square; ``ValueError`` otherwise."""
    x = as_rational(x)
    num, den = int(x.numerator), int(x.denominator)
    if x < 0 or not (is_perfect_square(num) and is_perfect_square(den)):
        raise ValueError(f"{rat_to_str(x)} is not a rational square")
    return mpq(math.isqrt(num), math.isqrt(den))



def rat_to_float(x, precision_digits: int) -> str:
    """Decimal string of a rational, rounded like :func:`radsig_to_float`."""
    return radsig_to_float(RadicalSignature({(0,) * len(PRIMES): as_rational(x)}), precision_digits)


def _reject_floats(obj) -> None:
    if isinstance(obj, float):
        raise TypeError("canonical JSON carries no floats")
    if isinstance(obj, dict):
        for v in obj.values():
            _reject_floats(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _reject_floats(v)


def canonical_json(obj) -> str:
    """Sorted keys, compact separators, no floats."""
    _reject_floats(obj)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
