import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from lat.matcore import Matrix, make

# -- hypothesis strategies ------------------------------------------------------

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))


@st.composite
def matrices(draw, rows=None, cols=None, max_dim=4):
    r = draw(st.integers(0, max_dim)) if rows is None else rows
    c = draw(st.integers(0, max_dim)) if cols is None else cols
    return make(r, c, draw(st.lists(rationals, min_size=r * c, max_size=r * c)))


def rand_matrix(rng: random.Random, rows: int, cols: int) -> Matrix:
    return make(rows, cols, [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(rows * cols)])


# -- index-level oracles (share no code with the library) --------------------------

def oracle_product(a: Matrix, b: Matrix) -> list[list]:
    return [
        [sum((a[i, l] * b[l, j] for l in range(a.cols)), Fraction(0)) for j in range(b.cols)]
        for i in range(a.rows)
    ]


def oracle_kron(a: Matrix, b: Matrix) -> list[list]:
    return [
        [a[i // b.rows, j // b.cols] * b[i % b.rows, j % b.cols] for j in range(a.cols * b.cols)]
        for i in range(a.rows * b.rows)
    ]


def oracle_colmajor(a: Matrix) -> list:
    return [a[i, j] for j in range(a.cols) for i in range(a.rows)]


# -- acceptance reporting -----------------------------------------------------------

_ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """Context manager timing one acceptance criterion and recording PASS/FAIL."""

    @contextmanager
    def run(number: int, title: str):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            _ACCEPTANCE.append(f"criterion {number}: FAIL  {title} ({time.perf_counter() - start:.2f}s)")
            raise
        _ACCEPTANCE.append(f"criterion {number}: PASS  {title} ({time.perf_counter() - start:.2f}s)")

    return run


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
