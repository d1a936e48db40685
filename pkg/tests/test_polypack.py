import itertools
import math

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from qfalab.polypack import (
    LambdaRational,
    Polynomial,
    cantor_pair,
    complete_square,
    decompose_poly,
    f2,
    f2_polynomial,
    fermat_fourth_power_check,
    fk,
    fk_degree,
    four_squares,
    in_lambda,
    injectivity_scan,
    lambda_grid,
)

Q = mpq


def test_f2_examples():
    assert f2(0, 0) == 0
    assert f2(Q(1, 5), Q(2, 5)) == Q(395538, 244140625)
    assert f2(1, 1) == 9


def test_fk_base_and_recursion():
    x, y, z = Q(1, 5), Q(2, 25), Q(3, 5)
    assert fk([x, y]) == f2(x, y)
    assert fk([x, y, z]) == f2(x, f2(y, z) / 25)
    with pytest.raises(ValueError):
        fk([x])


def test_f6_arity_and_degree():
    xs = [Q(a, 5) for a in range(1, 7)]
    assert fk(xs) > 0
    assert fk_degree(6) == 12**5


def test_fk_degree_matches_expansion():
    p = f2_polynomial()
    assert p.degree() == fk_degree(2)
    # substitute f2 into itself: degree multiplies by 12 per level
    x = Polynomial.variable(3, 0)
    y = Polynomial.variable(3, 1)
    z = Polynomial.variable(3, 2)
    inner = (y**4 + z**4) ** 3 + y**4
    outer = (x**4 + inner**4) ** 3 + x**4
    assert outer.degree() == fk_degree(3)


def test_fk_inner_values_stay_in_lambda():
    for xs in itertools.product([Q(0), Q(1, 5), Q(4, 5), Q(7, 25)], repeat=3):
        inner = f2(xs[1], xs[2]) / 25
        assert 0 <= inner < 1


@pytest.mark.parametrize("n,split", [(0, (0, 0, 0, 0)), (3, (1, 1, 1, 0)), (7, (2, 1, 1, 1))])
def test_four_squares_examples(n, split):
    assert four_squares(n) == split


def _brute_greatest(n):
    r = math.isqrt(n)
    best = None
    for t in itertools.combinations_with_replacement(range(r, -1, -1), 4):
        if sum(a * a for a in t) == n:
            best = t if best is None or t > best else best
    return best


def test_four_squares_against_brute_force():
    for n in range(0, 400):
        assert four_squares(n) == _brute_greatest(n)


def test_four_squares_cap():
    with pytest.raises(ValueError):
        four_squares(10**9 + 1)
    a = four_squares(10**9)
    assert sum(x * x for x in a) == 10**9


@pytest.mark.parametrize("S,delta", [(4, 0), (3, 1), (11, 5)])
def test_complete_square_examples(S, delta):
    assert complete_square(S) == delta


@given(st.integers(0, 10**12))
def test_complete_square_property(S):
    d = complete_square(S)
    r = math.isqrt(S + d)
    assert r * r == S + d
    # minimality: no square lies in [S, S + d)
    if d:
        assert math.isqrt(S + d - 1) ** 2 < S


def test_cantor_examples():
    assert cantor_pair(1, 1) == 4
    assert cantor_pair(0, 0) == 0
    assert cantor_pair(Q(2, 25), Q(11, 25)) == Q(297, 625) == cantor_pair(Q(3, 25), Q(9, 25))


def test_decompose_f2():
    terms = decompose_poly(f2_polynomial())
    got = {t.exponents: t.coeff for t in terms}
    assert got == {(12, 0): 1, (8, 4): 3, (4, 8): 3, (0, 12): 1, (4, 0): 1}
    assert [t.degree for t in terms] == sorted(t.degree for t in terms)
    assert all(t.split == four_squares(t.coeff) for t in terms)
    assert [t for t in terms if t.coeff == 3][0].split == (1, 1, 1, 0)
    assert decompose_poly(Polynomial(2)) == []


def test_decompose_indices_restart_per_degree():
    p = Polynomial(2, {(1, 0): 2, (0, 1): 5, (1, 1): 1})
    terms = decompose_poly(p)
    assert [(t.degree, t.index) for t in terms] == [(1, 1), (1, 2), (2, 1)]
    assert terms[0].exponents == (0, 1)


def test_scan_examples():
    assert injectivity_scan(f2, 2).ok
    assert injectivity_scan(f2, 0).ok
    cantor = injectivity_scan(cantor_pair, 2, collect_all=True)
    assert not cantor.ok
    assert cantor.has_collision((Q(2, 25), Q(11, 25)), (Q(3, 25), Q(9, 25)))
    values = {v for v, _ in cantor.classes}
    assert Q(297, 625) in values
    with pytest.raises(ValueError):
        injectivity_scan(f2, 4)


def test_scan_first_collision_is_lexicographic():
    r = injectivity_scan(cantor_pair, 2)
    (p1, p2) = r.collision
    assert cantor_pair(*p1) == cantor_pair(*p2) == r.value
    assert p1 < p2


def test_f2_range_on_grid():
    for x, y in itertools.product(lambda_grid(2), repeat=2):
        assert 0 <= f2(x, y) <= 9


def test_fermat_companion():
    assert list(fermat_fourth_power_check(10**4)) == []


def test_lambda_rational():
    x = LambdaRational(10, 2)
    assert (x.a, x.k) == (2, 1) and x.value == Q(2, 5)
    assert LambdaRational.from_rational(Q(3, 125)).k == 3
    assert f2(LambdaRational(1, 1), LambdaRational(2, 1)) == f2(Q(1, 5), Q(2, 5))
    with pytest.raises(ValueError):
        LambdaRational(5, 1)
    with pytest.raises(ValueError):
        LambdaRational.from_rational(Q(1, 3))
    assert in_lambda(0) and not in_lambda(1) and not in_lambda(Q(1, 10))


@given(st.integers(0, 124), st.integers(0, 124), st.integers(0, 124), st.integers(0, 124))
def test_f2_injective_on_random_pairs(a, b, c, d):
    x1, y1, x2, y2 = (Q(v, 125) for v in (a, b, c, d))
    if (x1, y1) != (x2, y2):
        assert f2(x1, y1) != f2(x2, y2)


def test_polynomial_arithmetic():
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    p = (x + y) ** 2
    assert p.terms == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert p([Q(1, 2), Q(1, 3)]) == Q(25, 36)
    assert p.coefficient_sum() == 4
