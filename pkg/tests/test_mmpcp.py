import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfalab.exactnum import SchemaError
from qfalab.mmpcp import MixedSolution, MmpcpInstance, apply_selectors, brute_search, check_solution
from toys import CLAUS, corpus


def test_check_solution_examples(positive, same):
    assert check_solution(positive, MixedSolution(("s1", "s1"), ("H", "G"), ("G", "H")))
    with pytest.raises(ValueError):
        check_solution(positive, MixedSolution(("s1", "s1"), ("H", "H"), ("H", "H")))
    assert check_solution(same, MixedSolution(("s1",), ("H",), ("G",)))


@pytest.mark.parametrize(
    "sol",
    [
        MixedSolution((), (), ()),
        MixedSolution(("s1",), ("H", "G"), ("G",)),
        MixedSolution(("s9",), ("H",), ("G",)),
        MixedSolution(("s1",), ("X",), ("G",)),
    ],
)
def test_check_solution_ill_formed(positive, sol):
    with pytest.raises(ValueError):
        check_solution(positive, sol)


def test_brute_search_examples(positive, negative):
    sol = brute_search(positive, 4)
    assert sol.word == ("s1", "s1") and check_solution(positive, sol)
    assert brute_search(negative, 6) is None
    empty = MmpcpInstance((), ("d1",), {}, {})
    assert brute_search(empty, 3) is None


def test_brute_search_cap(positive, monkeypatch):
    with pytest.raises(ValueError):
        brute_search(positive, 9)
    monkeypatch.setenv("QFALAB_BUDGET", "1000000:9")
    assert brute_search(positive, 9) is not None


def test_instance_validation():
    with pytest.raises(ValueError):
        MmpcpInstance(("s1",), ("s1",), {"s1": "s1"}, {"s1": "s1"})
    with pytest.raises(ValueError):
        MmpcpInstance(("s1",), ("d1",), {"s1": "d2"}, {"s1": "d1"})
    with pytest.raises(ValueError):
        MmpcpInstance(("s1", "s2"), ("d1",), {"s1": "d1"}, {"s1": "d1"})


def test_instance_json(positive):
    assert MmpcpInstance.from_json(positive.to_json()) == positive
    with pytest.raises(SchemaError):
        MmpcpInstance.from_json({"sigma": ["s1"]})


def _oracle(inst, max_len):
    """Plain enumeration of all words and selector pairs, canonical order."""
    rank = {"H": 0, "G": 1}
    for length in range(1, max_len + 1):
        for word in itertools.product(inst.sigma, repeat=length):
            sols = []
            for sa in itertools.product("HG", repeat=length):
                for sb in itertools.product("HG", repeat=length):
                    if sa != sb and apply_selectors(inst, word, sa) == apply_selectors(inst, word, sb):
                        sols.append((sa, sb))
            if sols:
                sa, sb = min(sols, key=lambda p: ([rank[x] for x in p[0]], [rank[x] for x in p[1]]))
                return MixedSolution(word, sa, sb)
    return None


@pytest.mark.parametrize("inst", corpus())
def test_brute_search_matches_oracle(inst):
    assert brute_search(inst, 4, restrict_claus=False) == _oracle(inst, 4)


def test_claus_restriction():
    sol = brute_search(CLAUS, 4)
    if sol is not None:
        assert sol.word[0] == "s1" and sol.word[-1] == "s2"


imgs = st.lists(st.sampled_from(["d1", "d2"]), min_size=1, max_size=3).map(" ".join)


@given(imgs, imgs, imgs, imgs)
def test_solutions_always_check(h1, h2, g1, g2):
    inst = MmpcpInstance(("s1", "s2"), ("d1", "d2"), {"s1": h1, "s2": h2}, {"s1": g1, "s2": g2})
    sol = brute_search(inst, 3)
    if sol is not None:
        assert check_solution(inst, sol)
