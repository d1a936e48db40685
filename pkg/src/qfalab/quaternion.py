"""Rational quaternions and the embedding of the free group on {a, b}
into unit quaternions."""

from __future__ import annotations

from typing import NamedTuple

from gmpy2 import mpq

from .exactnum import as_rational, parse_rational, rat_to_str
from .words import FreeWord


class Quat(NamedTuple):
    """``a + b i + c j + d k`` with rational components."""

    a: object
    b: object
    c: object
    d: object

    @classmethod
    def of(cls, a, b, c, d) -> "Quat":
        return cls(*(as_rational(x) for x in (a, b, c, d)))

    def norm2(self):
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def __mul__(self, other):
        return qmul(self, other)

    def __str__(self):
        return "(" + ", ".join(_short(x) for x in self) + ")"

    @classmethod
    def parse(cls, text: str) -> "Quat":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"bad quaternion {text!r}")
        parts = body[1:-1].split(",")
        if len(parts) != 4:
            raise ValueError(f"bad quaternion {text!r}")
        return cls(*(parse_rational(p) for p in parts))


def _short(x) -> str:
    return str(x.numerator) if x.denominator == 1 else rat_to_str(x)


ONE = Quat.of(1, 0, 0, 0)
GEN_A = Quat.of(mpq(3, 5), mpq(4, 5), 0, 0)
GEN_B = Quat.of(mpq(3, 5), 0, mpq(4, 5), 0)


def qmul(p: Quat, q: Quat) -> Quat:
    """Product with ``ij = -k``, the convention under which the 4x4
    embedding ``gamma3`` is multiplicative."""
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return Quat(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 - c1 * d2 + d1 * c2,
        a1 * c2 + b1 * d2 + c1 * a2 - d1 * b2,
        a1 * d2 - b1 * c2 + c1 * b2 + d1 * a2,
    )


def qinv(q: Quat) -> Quat:
    n2 = q.norm2()
    if n2 == 0:
        raise ZeroDivisionError("the zero quaternion has no inverse")
    return Quat(q.a / n2, -q.b / n2, -q.c / n2, -q.d / n2)


def qpow(q: Quat, k: int) -> Quat:
    if k < 0:
        q, k = qinv(q), -k
    result = ONE
    while k:
        if k & 1:
            result = qmul(result, q)
        q = qmul(q, q)
        k >>= 1
    return result


_GENS = {"a": GEN_A, "b": GEN_B}


def gamma2(w: FreeWord) -> Quat:
    """Left-to-right product of the generator images of a reduced word."""
    result = ONE
    for base, exp in w.syllables:
        result = qmul(result, qpow(_GENS[base], exp))
    return result
