from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import matrices
from lat.biproduct import (
    Biproduct, block, cells, check_biproduct, junc, junc_def, junc_n, recompose,
    scale_biproduct, self_cancellable_biproduct, split, split_def, split_n, standard_biproduct,
    std_junc, std_split, swap_biproduct,
)
from lat.errors import DegenerateScale, EmptyList, ShapeMismatch
from lat.matcore import add, compose, from_rows, identity, scale, sub, transpose, zero
from lat.tensor import direct_sum

dims = st.integers(0, 5)


def test_standard_1_1_components():
    bp = standard_biproduct(1, 1)
    assert bp.pi1 == from_rows([[1, 0]])
    assert bp.pi2 == from_rows([[0, 1]])
    assert bp.i1 == from_rows([[1], [0]])
    assert bp.i2 == from_rows([[0], [1]])


def test_standard_2_1_projection():
    assert standard_biproduct(2, 1).pi1 == from_rows([[1, 0, 0], [0, 1, 0]])


@given(dims, dims)
def test_standard_projections_are_converse_injections(m, n):
    bp = standard_biproduct(m, n)
    assert transpose(bp.pi1) == bp.i1
    assert transpose(bp.pi2) == bp.i2


@given(dims, dims)
def test_every_construction_satisfies_the_axioms(m, n):
    std = standard_biproduct(m, n)
    assert check_biproduct(std).passed
    assert check_biproduct(swap_biproduct(standard_biproduct(n, m))).passed
    for k in (1, 2, 3):
        assert check_biproduct(scale_biproduct(std, k)).passed


@given(matrices(max_dim=4))
def test_self_cancellable_satisfies_the_axioms(c):
    bp = self_cancellable_biproduct(c)
    assert (bp.m, bp.n) == (c.cols, c.rows)
    assert check_biproduct(bp).passed
    assert check_biproduct(scale_biproduct(bp, 3)).passed


def test_swap_of_1_1():
    assert swap_biproduct(standard_biproduct(1, 1)).i1 == from_rows([[0], [1]])


@given(matrices(rows=2, max_dim=3), matrices(rows=3, max_dim=3))
def test_swapped_split_reverses(a, b):
    if a.cols != b.cols:
        return
    sw = swap_biproduct(standard_biproduct(3, 2))
    assert split(sw, a, b) == std_split(b, a)


def test_double_swap_is_identity():
    bp = standard_biproduct(2, 3)
    twice = swap_biproduct(swap_biproduct(bp))
    assert all(getattr(twice, k) == getattr(bp, k) for k in ("pi1", "pi2", "i1", "i2"))


def test_self_cancellable_with_zero_is_standard():
    bp = self_cancellable_biproduct(zero(3, 2))
    std = standard_biproduct(2, 3)
    assert all(getattr(bp, k) == getattr(std, k) for k in ("pi1", "pi2", "i1", "i2"))


def test_self_cancellable_scalar_split():
    alpha, a, b = Fraction(3, 2), from_rows([[2]]), from_rows([[7]])
    bp = self_cancellable_biproduct(from_rows([[alpha]]))
    assert split(bp, a, b) == from_rows([[2], [7 - alpha * 2]])


@given(st.data())
def test_self_cancellable_junc_and_split(data):
    m, n, p = (data.draw(st.integers(0, 4)) for _ in range(3))
    c = data.draw(matrices(n, m))
    bp = self_cancellable_biproduct(c)
    a, b = data.draw(matrices(p, m)), data.draw(matrices(p, n))
    assert junc(bp, a, b) == std_junc(add(a, compose(b, c)), b)
    x, y = data.draw(matrices(m, p)), data.draw(matrices(n, p))
    assert split(bp, x, y) == std_split(x, sub(y, compose(c, x)))


def test_scale_by_one_and_by_two():
    std = standard_biproduct(2, 3)
    same = scale_biproduct(std, 1)
    assert all(getattr(same, k) == getattr(std, k) for k in ("pi1", "pi2", "i1", "i2"))
    assert scale_biproduct(standard_biproduct(1, 1), 2).pi1 == standard_biproduct(2, 2).pi1
    with pytest.raises(DegenerateScale):
        scale_biproduct(std, 0)


def test_checker_reports_zeroed_projection():
    std = standard_biproduct(3, 2)
    broken = Biproduct(std.pi1, zero(2, 5), std.i1, std.i2)
    report = check_biproduct(broken)
    assert not report.passed
    assert "pi2.i2 = id" in [f.label for f in report.failures]
    assert check_biproduct(std).passed


def test_biproduct_rejects_wrong_shapes():
    std = standard_biproduct(2, 2)
    with pytest.raises(ShapeMismatch):
        Biproduct(std.pi1, std.pi2, std.i1, zero(3, 2))


# -- junc, split, blocks ----------------------------------------------------------

def test_junc_worked_example():
    a = from_rows([[1, 2], [4, 5]])
    b = from_rows([[3], [6]])
    assert std_junc(a, b) == from_rows([[1, 2, 3], [4, 5, 6]])
    # the same through composition with the projections
    bp = standard_biproduct(2, 1)
    assert compose(a, bp.pi1) == from_rows([[1, 2, 0], [4, 5, 0]])


@given(dims, dims)
def test_reflection(m, n):
    bp = standard_biproduct(m, n)
    assert junc(bp, bp.i1, bp.i2) == identity(m + n)
    assert split(bp, bp.pi1, bp.pi2) == identity(m + n)


@given(st.data())
def test_fast_path_matches_definition(data):
    m, n, p = (data.draw(st.integers(0, 4)) for _ in range(3))
    bp = standard_biproduct(m, n)
    a, b = data.draw(matrices(p, m)), data.draw(matrices(p, n))
    assert junc(bp, a, b) == junc_def(bp, a, b)
    c, d = data.draw(matrices(m, p)), data.draw(matrices(n, p))
    assert split(bp, c, d) == split_def(bp, c, d)


def test_split_stacks():
    assert std_split(from_rows([[1, 2]]), from_rows([[3, 4]])) == from_rows([[1, 2], [3, 4]])


def test_junc_shape_error():
    with pytest.raises(ShapeMismatch):
        std_junc(zero(2, 2), zero(3, 2))


def test_block_of_scalars():
    assert block(*(from_rows([[v]]) for v in (1, 2, 3, 4))) == from_rows([[1, 2], [3, 4]])


@given(st.data())
def test_block_exchange_and_direct_sum(data):
    r1, r2, c1, c2 = (data.draw(st.integers(0, 3)) for _ in range(4))
    a, b = data.draw(matrices(r1, c1)), data.draw(matrices(r1, c2))
    c, d = data.draw(matrices(r2, c1)), data.draw(matrices(r2, c2))
    rowwise = std_split(std_junc(a, b), std_junc(c, d))
    assert block(a, b, c, d) == rowwise
    assert block(a, zero(r1, c2), zero(r2, c1), d) == direct_sum(a, d)


@given(matrices(max_dim=4))
def test_n_ary_decompositions(a):
    if a.cols:
        assert junc_n([a.block(0, a.rows, j, j + 1) for j in range(a.cols)]) == a
    if a.rows:
        assert split_n([a.block(i, i + 1, 0, a.cols) for i in range(a.rows)]) == a
    assert recompose(cells(a), a.rows, a.cols) == a


def test_n_ary_edge_cases():
    a = from_rows([[1, 2]])
    assert junc_n([a]) == a
    with pytest.raises(EmptyList):
        junc_n([])
    with pytest.raises(EmptyList):
        split_n([])
    grid = cells(identity(2))
    assert [[c[0, 0] for c in row] for row in grid] == [[1, 0], [0, 1]]
    assert all(c[0, 0] == 0 for row in cells(zero(2, 2)) for c in row)


def test_scaled_split_is_split_of_scaled_blocks():
    bp = scale_biproduct(standard_biproduct(1, 2), 2)
    a = scale(3, from_rows([[1, 2, 3], [4, 5, 6]]))
    b = from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
    assert split(bp, a, b) == std_split(a, b)
