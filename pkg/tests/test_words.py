import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfalab.words import (
    FreeWord,
    format_freeword,
    free_reduce,
    gamma1,
    parse_freeword,
    parse_plain_word,
    random_freeword,
    word_transform,
)


def fw(text):
    return parse_freeword(text)


@pytest.mark.parametrize("k,expected", [(1, "a b"), (3, "a^3 b")])
def test_gamma1_examples(k, expected):
    assert gamma1([k]) == fw(expected)


def test_gamma1_empty():
    assert gamma1([]) == FreeWord(())


def test_free_reduce_examples():
    assert free_reduce([("a", 1), ("a", -1), ("b", 1)]) == fw("b")
    assert fw("a^3 b^2 a^-4 b").syllables == (("a", 3), ("b", 2), ("a", -4), ("b", 1))
    assert free_reduce([("a", 1), ("b", 1), ("b", -1), ("a", -1)]) == FreeWord(())


def test_transform_examples():
    w = fw("a^3 b^2 a^-4 b")
    assert word_transform(w, "neg_a") == fw("a^-3 b^2 a^4 b")
    assert word_transform(w, "neg_ab") == fw("a^-3 b^-2 a^4 b^-1")
    assert word_transform(fw("a b"), "reverse") == fw("b a")


def test_format_round_trip():
    w = fw("a^3 b^2 a^-4 b")
    assert format_freeword(w) == "a^3 b^2 a^-4 b"
    assert parse_freeword(format_freeword(FreeWord(()))) == FreeWord(())


def test_gamma1_injective_sigma5_len6():
    seen = {}
    for length in range(0, 7):
        for word in itertools.product(range(1, 6), repeat=length):
            image = gamma1(word)
            assert image not in seen, (word, seen.get(image))
            seen[image] = word
    assert len(seen) == sum(5**k for k in range(7))


def test_plain_word_parse():
    assert parse_plain_word("x1 x3") == (1, 3)


freewords = st.integers(0, 2**32).map(lambda s: random_freeword(random.Random(s), 12))


@given(freewords, st.sampled_from(["reverse", "neg_a", "neg_b", "neg_ab"]))
def test_transforms_are_involutions(w, variant):
    assert word_transform(word_transform(w, variant), variant) == w


@given(freewords)
def test_neg_ab_composes(w):
    assert word_transform(w, "neg_ab") == word_transform(word_transform(w, "neg_b"), "neg_a")


@given(freewords, freewords)
def test_reduced_form_and_inverse(u, v):
    for w in (u, v, u * v):
        assert all(s[0] != t[0] for s, t in zip(w.syllables, w.syllables[1:]))
        assert all(e != 0 for _, e in w.syllables)
    assert u * u.inverse() == FreeWord(())
