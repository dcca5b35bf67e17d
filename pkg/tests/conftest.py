import random

import pytest

from starconfig.fields import GF, QQ, ExactMatrix
from starconfig.codes import LinearCode

FIELDS = [GF(2), GF(3), GF(5)]


def random_matrix(rng: random.Random, k: int, n: int, spec):
    if spec.kind == "gf":
        rows = [[rng.randrange(spec.modulus) for _ in range(n)]
                for _ in range(k)]
    else:
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(k)]
    return ExactMatrix.from_rows(spec, rows)


def random_code(rng: random.Random, k: int, n: int, spec) -> LinearCode:
    """Full-rank generator matrix without zero columns, by rejection."""
    while True:
        m = random_matrix(rng, k, n, spec)
        try:
            return LinearCode(m)
        except Exception:
            continue


def random_code_any(rng: random.Random, max_k=4, max_n=9,
                    fields=FIELDS) -> LinearCode:
    k = rng.randint(1, max_k)
    n = rng.randint(k, max_n)
    return random_code(rng, k, n, rng.choice(fields))


@pytest.fixture
def rng():
    return random.Random(0xC0DE)


@pytest.fixture
def e0():
    return LinearCode(ExactMatrix.from_rows(GF(2), [[1, 0, 1], [0, 1, 1]]),
                      ["x1", "x2", "x1+x2"])


@pytest.fixture
def b3():
    rows = [[1, 0, 0, 1, 1, 1, 1, 0, 0],
            [0, 1, 0, 1, -1, 0, 0, 1, 1],
            [0, 0, 1, 0, 0, 1, -1, 1, -1]]
    labels = ["x1", "x2", "x3", "x1+x2", "x1-x2", "x1+x3", "x1-x3",
              "x2+x3", "x2-x3"]
    return LinearCode(ExactMatrix.from_rows(GF(5), rows), labels)
