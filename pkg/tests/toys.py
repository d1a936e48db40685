"""Small MMPCP instances shared by the test modules."""

import random

from qfalab.mmpcp import MmpcpInstance

POSITIVE = MmpcpInstance(("s1",), ("d1",), {"s1": "d1"}, {"s1": "d1 d1"})
NEGATIVE = MmpcpInstance(("s1",), ("d1", "d2"), {"s1": "d1"}, {"s1": "d2"})
SAME = MmpcpInstance(("s1",), ("d1",), {"s1": "d1"}, {"s1": "d1"})
CLAUS = MmpcpInstance(
    ("s1", "s2"),
    ("d1", "d2"),
    {"s1": "d1", "s2": "d1 d2"},
    {"s1": "d1 d1", "s2": "d2"},
    claus=True,
)

HANDPICKED = [
    POSITIVE,
    NEGATIVE,
    SAME,
    MmpcpInstance(("s1",), ("d1", "d2"), {"s1": "d1 d2"}, {"s1": "d2 d1"}),
    MmpcpInstance(("s1",), ("d1",), {"s1": "d1"}, {"s1": "d1 d1 d1"}),
    MmpcpInstance(("s1",), ("d1", "d2"), {"s1": "d1 d2"}, {"s1": "d1 d2 d1 d2"}),
    MmpcpInstance(("s1",), ("d1", "d2"), {"s1": "d1 d2"}, {"s1": "d1"}),
    MmpcpInstance(("s1",), ("d1", "d2"), {"s1": "d2"}, {"s1": "d2 d2 d2 d2"}),
    MmpcpInstance(
        ("s1", "s2"), ("d1", "d2"), {"s1": "d1", "s2": "d1 d2"}, {"s1": "d1 d1", "s2": "d2"}
    ),
    MmpcpInstance(("s1", "s2"), ("d1", "d2"), {"s1": "d1", "s2": "d2"}, {"s1": "d2", "s2": "d1"}),
    MmpcpInstance(("s1", "s2"), ("d1", "d2"), {"s1": "d1", "s2": "d2"}, {"s1": "d1", "s2": "d1"}),
    MmpcpInstance(
        ("s1", "s2"), ("d1", "d2"), {"s1": "d1 d1", "s2": "d2"}, {"s1": "d1", "s2": "d2 d2"}
    ),
    MmpcpInstance(
        ("s1", "s2"), ("d1", "d2"), {"s1": "d1 d2", "s2": "d1"}, {"s1": "d2 d1", "s2": "d2"}
    ),
]


def random_instances(count, seed=7):
    """Deterministic pseudo-random instances with one or two source letters."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.choice((1, 2))
        sigma = tuple(f"s{i + 1}" for i in range(k))
        delta = ("d1", "d2")

        def img():
            return " ".join(rng.choice(delta) for _ in range(rng.randint(1, 3)))

        out.append(MmpcpInstance(sigma, delta, {s: img() for s in sigma}, {s: img() for s in sigma}))
    return out


def corpus():
    """Handpicked instances followed by random ones; 25 in total."""
    return HANDPICKED + random_instances(25 - len(HANDPICKED))


def bound_for(inst):
    return 6 if len(inst.sigma) == 1 else 4
