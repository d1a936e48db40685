"""Dense exact rational matrices, direct sums, Kronecker products, and the
word-to-orthogonal-matrix embedding ``gamma = gamma3 . gamma2 . gamma1``."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from gmpy2 import mpq

from .exactnum import SchemaError, as_rational, parse_rational, rat_to_str
from .quaternion import Quat, gamma2
from .words import gamma1

_ZERO = mpq(0)
_ONE = mpq(1)


class RatMatrix:
    """Immutable row-major matrix of ``mpq`` entries."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("matrices must be at least 1x1")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("ragged rows")
        self._init(data)

    def _init(self, data):
        self.rows = len(data)
        self.cols = len(data[0])
        self._data = data
        self._hash = None

    @classmethod
    def _raw(cls, data: tuple) -> "RatMatrix":
        m = object.__new__(cls)
        m._init(data)
        return m

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls._raw(tuple(
            tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)
        ))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "RatMatrix":
        cols = rows if cols is None else cols
        return cls._raw(tuple((_ZERO,) * cols for _ in range(rows)))

    @classmethod
    def scalar(cls, x) -> "RatMatrix":
        return cls([[x]])

    @classmethod
    def diag(cls, values: Sequence) -> "RatMatrix":
        vals = [as_rational(v) for v in values]
        n = len(vals)
        return cls._raw(tuple(
            tuple(vals[i] if i == j else _ZERO for j in range(n)) for i in range(n)
        ))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._data)
        return self._hash

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        return matmul(self, other)

    def __neg__(self) -> "RatMatrix":
        return RatMatrix._raw(tuple(tuple(-x for x in r) for r in self._data))

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return RatMatrix._raw(tuple(
            tuple(x + y for x, y in zip(r, s)) for r, s in zip(self._data, other._data)
        ))

    def scale(self, c) -> "RatMatrix":
        c = as_rational(c)
        return RatMatrix._raw(tuple(tuple(c * x for x in r) for r in self._data))

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix._raw(tuple(zip(*self._data)))

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product, skipping zero entries."""
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.shape} matrix")
        out = []
        for r in self._data:
            acc = _ZERO
            for x, y in zip(r, v):
                if x and y:
                    acc += x * y
            out.append(acc)
        return tuple(out)

    def is_orthogonal(self) -> bool:
        if self.rows != self.cols:
            return False
        return matmul(self, self.T) == RatMatrix.identity(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(_fmt(x) for x in r) for r in self._data)
        return f"RatMatrix({self.rows}x{self.cols}: {body})"

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[rat_to_str(x) for x in r] for r in self._data],
        }

    @classmethod
    def from_json(cls, data) -> "RatMatrix":
        try:
            rows, cols = int(data["rows"]), int(data["cols"])
            entries = [[parse_rational(x) for x in r] for r in data["entries"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad matrix: {exc}") from exc
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise SchemaError("matrix entries do not match rows/cols")
        return cls(entries)


def _fmt(x) -> str:
    return str(x.numerator) if x.denominator == 1 else rat_to_str(x)


def matmul(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    if A.cols != B.rows:
        raise ValueError(f"cannot multiply {A.shape} by {B.shape}")
    bdata = B._data
    width = B.cols
    out = []
    for arow in A._data:
        acc = [_ZERO] * width
        for k, x in enumerate(arow):
            if not x:
                continue
            brow = bdata[k]
            for j in range(width):
                y = brow[j]
                if y:
                    acc[j] += x * y
        out.append(tuple(acc))
    return RatMatrix._raw(tuple(out))


def matprod(mats: Iterable[RatMatrix], n: int) -> RatMatrix:
    """Product of a sequence of ``n x n`` matrices; identity when empty."""
    result = None
    for m in mats:
        result = m if result is None else matmul(result, m)
    return RatMatrix.identity(n) if result is None else result


def dsum(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    """Block-diagonal ``[[A, 0], [0, B]]``."""
    left_pad = (_ZERO,) * B.cols
    right_pad = (_ZERO,) * A.cols
    data = tuple(r + left_pad for r in A._data) + tuple(right_pad + r for r in B._data)
    return RatMatrix._raw(data)


def dsum_all(mats: Sequence[RatMatrix]) -> RatMatrix:
    if not mats:
        raise ValueError("empty direct sum")
    total_cols = sum(m.cols for m in mats)
    data = []
    offset = 0
    for m in mats:
        before = (_ZERO,) * offset
        after = (_ZERO,) * (total_cols - offset - m.cols)
        data.extend(before + r + after for r in m._data)
        offset += m.cols
    return RatMatrix._raw(tuple(data))


def kron(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    """Block matrix with blocks ``a_ij * B``."""
    data = []
    for arow in A._data:
        for brow in B._data:
            data.append(tuple(a * b for a in arow for b in brow))
    return RatMatrix._raw(tuple(data))


def kron_power(A: RatMatrix, k: int) -> RatMatrix:
    if k < 1:
        raise ValueError("Kronecker power needs k >= 1")
    result = A
    for _ in range(k - 1):
        result = kron(A, result)
    return result


def gamma3(q: Quat) -> RatMatrix:
    r, x, y, z = q
    return RatMatrix._raw((
        (r, x, y, z),
        (-x, r, z, -y),
        (-y, -z, r, x),
        (-z, y, -x, r),
    ))


@lru_cache(maxsize=None)
def _letter_image(k: int) -> RatMatrix:
    return gamma3(gamma2(gamma1((k,))))


def gamma(word: Sequence[int], n: int | None = None) -> RatMatrix:
    """Orthogonal 4x4 image of a plain word over x1..xn."""
    for k in word:
        if k < 1 or (n is not None and k > n):
            raise ValueError(f"letter x{k} outside the alphabet of size {n}")
    return matprod((_letter_image(k) for k in word), 4)


GEN_A_MATRIX = RatMatrix([
    [mpq(3, 5), mpq(4, 5), 0, 0],
    [mpq(-4, 5), mpq(3, 5), 0, 0],
    [0, 0, mpq(3, 5), mpq(4, 5)],
    [0, 0, mpq(-4, 5), mpq(3, 5)],
])
GEN_B_MATRIX = RatMatrix([
    [mpq(3, 5), 0, mpq(4, 5), 0],
    [0, mpq(3, 5), 0, mpq(-4, 5)],
    [mpq(-4, 5), 0, mpq(3, 5), 0],
    [0, mpq(4, 5), 0, mpq(3, 5)],
])


def abs_key(M: RatMatrix) -> tuple:
    """Absolute values of the first three top-row entries."""
    return tuple(abs(M[0, j]) for j in range(3))


def top_row_unit(M: RatMatrix) -> bool:
    return sum(x * x for x in M.row(0)) == 1
