import itertools
import random

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from qfalab.exactnum import SchemaError
from qfalab.quaternion import GEN_A, GEN_B, ONE, qinv, qmul
from qfalab.ratmatrix import (
    GEN_A_MATRIX,
    GEN_B_MATRIX,
    RatMatrix,
    abs_key,
    dsum,
    gamma,
    gamma3,
    kron,
    matmul,
    top_row_unit,
)

Q = lambda s: mpq(s)  # noqa: E731
I4 = RatMatrix.identity(4)


def test_matmul_examples():
    assert matmul(GEN_A_MATRIX, gamma3(qinv(GEN_A))) == I4
    top = matmul(GEN_A_MATRIX, GEN_B_MATRIX).row(0)
    assert top == tuple(map(Q, ["9/25", "12/25", "12/25", "-16/25"]))
    P1 = RatMatrix.diag([1, 0, 0, 0])
    assert matmul(P1, P1) == P1


def test_matmul_dimension_error():
    with pytest.raises(ValueError):
        matmul(RatMatrix.identity(2), RatMatrix.identity(3))


def test_dsum_examples():
    assert dsum(RatMatrix.identity(2), RatMatrix.identity(2)) == I4
    m = dsum(GEN_A_MATRIX, GEN_B_MATRIX)
    assert m.shape == (8, 8)
    assert m[0, 4] == 0 and m[4, 4] == GEN_B_MATRIX[0, 0]


def test_kron_examples():
    M = RatMatrix([[1, 2], [3, 4]])
    assert kron(RatMatrix.identity(2), M) == dsum(M, M)
    assert kron(RatMatrix.scalar(2), M) == M.scale(2)


def test_gamma3_examples():
    assert gamma3(GEN_A) == GEN_A_MATRIX
    assert gamma3(ONE) == I4


def test_gamma_examples():
    assert gamma([]) == I4
    g1 = gamma([1])
    assert g1.row(0) == tuple(map(Q, ["9/25", "12/25", "12/25", "-16/25"]))
    assert gamma([1, 1]) == matmul(g1, g1)


def test_abs_key_examples():
    assert abs_key(GEN_A_MATRIX) == (Q("3/5"), Q("4/5"), Q(0))
    assert abs_key(GEN_B_MATRIX) == (Q("3/5"), Q(0), Q("4/5"))
    assert abs_key(gamma([1])) == (Q("9/25"), Q("12/25"), Q("12/25"))


def test_gamma_images_orthogonal_sigma3():
    for length in range(5):
        for w in itertools.product(range(1, 4), repeat=length):
            M = gamma(w, 3)
            assert M.is_orthogonal() and top_row_unit(M)


def test_json_round_trip_and_errors():
    M = GEN_A_MATRIX
    assert RatMatrix.from_json(M.to_json()) == M
    with pytest.raises(SchemaError):
        RatMatrix.from_json({"rows": 2, "cols": 2, "entries": [["1"]]})


small = st.fractions(min_value=-5, max_value=5, max_denominator=7).map(
    lambda f: mpq(f.numerator, f.denominator)
)
mat2 = st.lists(small, min_size=4, max_size=4).map(lambda v: RatMatrix([v[:2], v[2:]]))


@given(mat2, mat2, mat2, mat2)
def test_mixed_products(A, B, C, D):
    assert matmul(dsum(A, B), dsum(C, D)) == dsum(matmul(A, C), matmul(B, D))
    assert matmul(kron(A, B), kron(C, D)) == kron(matmul(A, C), matmul(B, D))


def test_gamma3_homomorphism_random_units():
    rng = random.Random(3)
    gens = [GEN_A, GEN_B, qinv(GEN_A), qinv(GEN_B)]

    def rand_unit():
        x = ONE
        for _ in range(rng.randint(0, 6)):
            x = qmul(x, rng.choice(gens))
        return x

    for _ in range(100):
        p, q = rand_unit(), rand_unit()
        assert gamma3(qmul(p, q)) == matmul(gamma3(p), gamma3(q))


@given(st.lists(st.integers(1, 4), max_size=5), st.lists(st.integers(1, 4), max_size=5))
def test_gamma_homomorphic(u, v):
    assert gamma(u + v, 4) == matmul(gamma(u, 4), gamma(v, 4))
