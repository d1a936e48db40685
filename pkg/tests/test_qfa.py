import itertools
import random

import mpmath
import pytest
from gmpy2 import mpq

from qfalab.exactnum import PRIMES, RadicalSignature, SchemaError, radsig_to_float
from qfalab.qfa import (
    Qfa,
    RadicalQfa,
    accept_rational,
    accept_signature,
    example1_qfa,
    exact_signature,
    normalizer_signature,
    validate,
)
from qfalab.ratmatrix import RatMatrix
from qfalab.reduction import (
    claus_trim,
    compile_ambiguity,
    compile_injectivity,
    materialize_initial,
)
from toys import CLAUS, corpus


def test_example1_valid_and_values():
    q = example1_qfa()
    assert validate(q) == []
    assert accept_rational(q, "") == 1
    assert accept_rational(q, "a") == mpq(9, 25)
    assert accept_rational(q, "aa") == mpq(49, 625)


def test_validate_reports_violations():
    q = example1_qfa()
    bad_init = Qfa(q.projection, q.generators, (1, 1))
    assert any("squared length" in p for p in validate(bad_init))
    scaled = RatMatrix([[mpq(6, 5), mpq(-8, 5)], [mpq(4, 5), mpq(3, 5)]])
    bad_gen = Qfa(q.projection, {"a": scaled}, (1, 0))
    assert any("not orthogonal" in p for p in validate(bad_gen))
    bad_proj = Qfa(RatMatrix([[1, 1], [0, 0]]), q.generators, (1, 0))
    assert validate(bad_proj)


def test_unknown_letter():
    with pytest.raises(ValueError):
        accept_rational(example1_qfa(), "b")
    with pytest.raises(ValueError):
        accept_signature(compile_injectivity(corpus()[0]), ["nope"])


def test_example1_distinct_powers():
    q = example1_qfa()
    values = set()
    state = q.initial
    A = q.generators["a"]
    for _ in range(1001):
        values.add((state[0] ** 2))
        state = A.apply(state)
    assert len(values) == 1001


def test_empty_word_signature(positive):
    q = compile_injectivity(positive)
    assert accept_signature(q, []) == RadicalSignature.from_sqrt({2: 1, 7: 1})


def test_positive_collision_signatures(positive):
    q = compile_injectivity(positive)
    assert accept_signature(q, ["L:s1:H", "L:s1:G"]) == accept_signature(q, ["L:s1:G", "L:s1:H"])


def test_negative_single_letters_differ_from_empty(negative):
    q = compile_injectivity(negative)
    eps = accept_signature(q, [])
    for x in q.letters:
        assert accept_signature(q, [x]) != eps


def _true_probability(q, word):
    """||P X u||^2 from a high-precision float initial vector."""
    with mpmath.workdps(60):
        u = materialize_initial(q)
        X = q.product_matrix(word)
        v = [
            sum(mpmath.mpf(int(X[i, j].numerator)) / int(X[i, j].denominator) * u[j]
                for j in range(len(u)))
            for i in range(len(u))
        ]
        return v[0] ** 2 + v[4] ** 2


def _sig_value(sig):
    return mpmath.mpf(radsig_to_float(sig, 40))


def test_exact_signature_matches_float_oracle():
    rng = random.Random(5)
    automata = [compile_injectivity(i) for i in corpus()[:8]] + [claus_trim(CLAUS)]
    with mpmath.workdps(60):
        norm = _sig_value(normalizer_signature())
        for q in automata:
            for _ in range(10):
                w = [rng.choice(q.letters) for _ in range(rng.randint(0, 4))]
                expected = _true_probability(q, w)
                got = _sig_value(exact_signature(q, w)) / norm
                assert abs(got - expected) < mpmath.mpf(10) ** -30
                assert 0 <= got <= 1 + mpmath.mpf(10) ** -20


def test_squared_entry_signature_in_unit_interval():
    rng = random.Random(9)
    with mpmath.workdps(60):
        norm = _sig_value(normalizer_signature())
        for inst in corpus()[:10]:
            q = compile_injectivity(inst)
            for _ in range(10):
                w = [rng.choice(q.letters) for _ in range(rng.randint(0, 5))]
                val = _sig_value(accept_signature(q, w)) / norm
                assert -mpmath.mpf(10) ** -20 <= val <= 1 + mpmath.mpf(10) ** -20


def test_trimmed_uses_exact_form():
    q = claus_trim(CLAUS)
    w = [q.letters[0], q.letters[-1]]
    assert accept_signature(q, w) == exact_signature(q, w)
    assert exact_signature(q, w).has_quarter_exponents()


def test_ambiguity_signature_matches_injectivity(positive):
    q8, q9 = compile_injectivity(positive), compile_ambiguity(positive)
    for length in range(4):
        for w in itertools.product(q8.letters, repeat=length):
            assert accept_signature(q8, w) == accept_signature(q9, w)


@pytest.mark.parametrize("maker", [compile_injectivity, compile_ambiguity])
def test_radical_json_round_trip(maker, positive):
    q = maker(positive)
    again = RadicalQfa.from_json(q.to_json())
    assert again == q and again.letters == q.letters


def test_trimmed_json_round_trip():
    q = claus_trim(CLAUS)
    assert RadicalQfa.from_json(q.to_json()) == q


def test_radical_json_errors():
    with pytest.raises(SchemaError):
        RadicalQfa.from_json({"kind": "radical"})
    with pytest.raises(SchemaError):
        RadicalQfa.from_json({"kind": "other"})


def test_qfa_json_round_trip():
    q = example1_qfa()
    assert Qfa.from_json(q.to_json()) == q
    data = q.to_json()
    data["dimension"] = 3
    with pytest.raises(SchemaError):
        Qfa.from_json(data)


def test_normalizer_is_sum_of_roots():
    with mpmath.workdps(40):
        expected = sum(mpmath.sqrt(p) for p in PRIMES)
        assert abs(_sig_value(normalizer_signature()) - expected) < mpmath.mpf(10) ** -35
