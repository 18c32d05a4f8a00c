import random

import pytest

from torus_nielsen.intlin import IntMatrix


@pytest.fixture
def rng():
    return random.Random(20240229)


def _random_unimodular(rng: random.Random, n: int, steps: int = 6) -> IntMatrix:
    rows = IntMatrix.identity(n).to_rows()
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            rows[0][0] = -rows[0][0]
            continue
        if rng.random() < 0.2:
            rows[i], rows[j] = rows[j], rows[i]
        else:
            q = rng.choice((-2, -1, 1, 2))
            rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
    return IntMatrix.from_rows(rows)


@pytest.fixture
def random_unimodular():
    """``random_unimodular(rng, n)``: a product of a few elementary row operations."""
    return _random_unimodular


def det_small(rows) -> int:
    """Cofactor determinant for the 1x1..3x3 matrices the random suites draw."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    return sum((-1) ** j * rows[0][j] * det_small([r[:j] + r[j + 1:] for r in rows[1:]])
               for j in range(n))


@pytest.fixture
def random_phi():
    """``random_phi(rng, n, lo, hi, eigenvalue_one)``: random integer matrix rows,
    optionally filtered to ``det(phi - I) = 0`` or ``!= 0``."""

    def draw(rng: random.Random, n: int, lo: int = -3, hi: int = 3,
             eigenvalue_one=None, attempts: int = 100000):
        for _ in range(attempts):
            rows = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]
            if eigenvalue_one is None:
                return rows
            shifted = [[x - (i == j) for j, x in enumerate(r)] for i, r in enumerate(rows)]
            if (det_small(shifted) == 0) == eigenvalue_one:
                return rows
        raise RuntimeError("no matrix with the requested property drawn")

    return draw
