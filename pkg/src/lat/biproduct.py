"""Biproducts and the block combinators they induce.

A biproduct over objects ``m`` and ``n`` is four matrices

    pi1 : m x (m+n)     pi2 : n x (m+n)
    i1  : (m+n) x m     i2  : (m+n) x n

with ``pi1.i1 = id``, ``pi2.i2 = id`` and ``i1.pi1 + i2.pi2 = id``.
``junc`` (gluing side by side) and ``split`` (stacking) are defined relative to
one such record; for the standard biproduct they reduce to plain
concatenation, which is what the fast paths below do.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from .errors import DegenerateScale, EmptyList, ShapeMismatch
from .matcore import (
    RATIONAL, Field, Matrix, add, compose, equals, identity, negate, zero,
)
from .report import Failure, LawReport

__all__ = [
    "Biproduct", "standard_biproduct", "swap_biproduct", "self_cancellable_biproduct",
    "scale_biproduct", "check_biproduct", "junc", "split", "block", "junc_n",
    "split_n", "cells", "recompose", "hcat", "vcat",
]


@dataclass(frozen=True, eq=False)
class Biproduct:
    pi1: Matrix
    pi2: Matrix
    i1: Matrix
    i2: Matrix
    standard: bool = False

    def __post_init__(self):
        m, n = self.pi1.rows, self.pi2.rows
        s = m + n
        expected = {
            "pi1": (m, s), "pi2": (n, s), "i1": (s, m), "i2": (s, n),
        }
        for name, shape in expected.items():
            got = getattr(self, name).shape
            if got != shape:
                raise ShapeMismatch(
                    "biproduct", shape, got, f"{name} must be {shape[0]}x{shape[1]} for m={m}, n={n}"
                )

    @property
    def m(self) -> int:
        return self.pi1.rows

    @property
    def n(self) -> int:
        return self.pi2.rows

    @property
    def field(self) -> Field:
        return self.pi1.field

    def matrices(self) -> dict[str, Matrix]:
        return {"pi1": self.pi1, "pi2": self.pi2, "i1": self.i1, "i2": self.i2}


# -- plain concatenation ------------------------------------------------------

def hcat(a: Matrix, b: Matrix) -> Matrix:
    """``[a | b]`` by concatenating rows."""
    if a.rows != b.rows:
        raise ShapeMismatch("junc", a.shape, b.shape, "row counts differ")
    ac, bc = a.cols, b.cols
    out: list = []
    for i in range(a.rows):
        out.extend(a.entries[i * ac:(i + 1) * ac])
        out.extend(b.entries[i * bc:(i + 1) * bc])
    return Matrix._raw(a.rows, ac + bc, tuple(out), a.field)


def vcat(a: Matrix, b: Matrix) -> Matrix:
    """``[a ; b]`` by stacking."""
    if a.cols != b.cols:
        raise ShapeMismatch("split", a.shape, b.shape, "column counts differ")
    return Matrix._raw(a.rows + b.rows, a.cols, a.entries + b.entries, a.field)


# -- constructions ------------------------------------------------------------

def standard_biproduct(m: int, n: int, field: Field = RATIONAL) -> Biproduct:
    """Projections ``[id | 0]``, ``[0 | id]`` and their transposes as injections."""
    pi1 = hcat(identity(m, field), zero(m, n, field))
    pi2 = hcat(zero(n, m, field), identity(n, field))
    i1 = vcat(identity(m, field), zero(n, m, field))
    i2 = vcat(zero(m, n, field), identity(n, field))
    return Biproduct(pi1, pi2, i1, i2, standard=True)


def swap_biproduct(bp: Biproduct) -> Biproduct:
    """Exchange the two projections and the two injections."""
    return Biproduct(bp.pi2, bp.pi1, bp.i2, bp.i1)


def self_cancellable_biproduct(c: Matrix) -> Biproduct:
    """Biproduct parametric on ``c : n x m``.

    pi1 = [1 | 0],  pi2 = [c | 1],  i1 = [1 ; -c],  i2 = [0 ; 1]

    Its ``split`` of ``(a, b)`` is ``[a ; b - c.a]``: a block row operation.
    """
    n, m = c.shape
    f = c.field
    pi1 = hcat(identity(m, f), zero(m, n, f))
    pi2 = hcat(c, identity(n, f))
    i1 = vcat(identity(m, f), negate(c))
    i2 = vcat(zero(m, n, f), identity(n, f))
    return Biproduct(pi1, pi2, i1, i2)


def scale_biproduct(bp: Biproduct, k: int) -> Biproduct:
    """Each component Kronecker-multiplied on the right by ``id_k``."""
    from .tensor import kron

    if k < 1:
        raise DegenerateScale(f"cannot scale a biproduct by {k}")
    idk = identity(k, bp.field)
    return Biproduct(
        kron(bp.pi1, idk), kron(bp.pi2, idk), kron(bp.i1, idk), kron(bp.i2, idk),
        standard=bp.standard,
    )


def check_biproduct(bp: Biproduct) -> LawReport:
    """Check the three biproduct equations and the two orthogonality facts.

    The report's failures name each identity that does not hold, together
    with its two sides.
    """
    f = bp.field
    m, n = bp.m, bp.n
    p1, p2, i1, i2 = bp.pi1, bp.pi2, bp.i1, bp.i2
    checks = [
        ("pi1.i1 = id", lambda: compose(p1, i1), lambda: identity(m, f)),
        ("pi2.i2 = id", lambda: compose(p2, i2), lambda: identity(n, f)),
        ("i1.pi1 + i2.pi2 = id", lambda: add(compose(i1, p1), compose(i2, p2)),
         lambda: identity(m + n, f)),
        ("pi1.i2 = 0", lambda: compose(p1, i2), lambda: zero(m, n, f)),
        ("pi2.i1 = 0", lambda: compose(p2, i1), lambda: zero(n, m, f)),
    ]
    report = LawReport("biproduct axioms", trials=len(checks))
    for label, lhs, rhs in checks:
        left, right = lhs(), rhs()
        if not equals(left, right):
            report.failures.append(Failure(label, matrices={"lhs": left, "rhs": right}))
    return report


# -- combinators --------------------------------------------------------------

def junc(bp: Biproduct, a: Matrix, b: Matrix) -> Matrix:
    """``[a | b] = a.pi1 + b.pi2``."""
    if a.cols != bp.m or b.cols != bp.n or a.rows != b.rows:
        raise ShapeMismatch("junc", a.shape, b.shape, f"biproduct over {bp.m}+{bp.n}")
    if bp.standard:
        return hcat(a, b)
    return add(compose(a, bp.pi1), compose(b, bp.pi2))


def split(bp: Biproduct, c: Matrix, d: Matrix) -> Matrix:
    """``[c ; d] = i1.c + i2.d``."""
    if c.rows != bp.m or d.rows != bp.n or c.cols != d.cols:
        raise ShapeMismatch("split", c.shape, d.shape, f"biproduct over {bp.m}+{bp.n}")
    if bp.standard:
        return vcat(c, d)
    return add(compose(bp.i1, c), compose(bp.i2, d))


def junc_def(bp: Biproduct, a: Matrix, b: Matrix) -> Matrix:
    """Definitional ``a.pi1 + b.pi2``, bypassing the concatenation fast path."""
    return add(compose(a, bp.pi1), compose(b, bp.pi2))


def split_def(bp: Biproduct, c: Matrix, d: Matrix) -> Matrix:
    return add(compose(bp.i1, c), compose(bp.i2, d))


def std_junc(a: Matrix, b: Matrix) -> Matrix:
    return junc(standard_biproduct(a.cols, b.cols, a.field), a, b)


def std_split(c: Matrix, d: Matrix) -> Matrix:
    return split(standard_biproduct(c.rows, d.rows, c.field), c, d)


def block(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Matrix:
    """``[[a, b], [c, d]]`` as ``[[a ; c] | [b ; d]]`` over standard biproducts."""
    if a.rows != b.rows or c.rows != d.rows or a.cols != c.cols or b.cols != d.cols:
        raise ShapeMismatch("block", a.shape, d.shape, "blocks do not tile")
    return std_junc(std_split(a, c), std_split(b, d))


def junc_n(parts: Sequence[Matrix]) -> Matrix:
    """``[a1 | a2 | ... | ap]``, folded to the left."""
    if not parts:
        raise EmptyList("junc_n needs at least one matrix")
    return reduce(std_junc, parts)


def split_n(parts: Sequence[Matrix]) -> Matrix:
    """``[a1 ; a2 ; ... ; am]``, folded to the left."""
    if not parts:
        raise EmptyList("split_n needs at least one matrix")
    return reduce(std_split, parts)


def _unit_projection(j: int, size: int, field: Field) -> Matrix:
    e = [field.zero] * size
    e[j] = field.one
    return Matrix._raw(1, size, tuple(e), field)


def cells(a: Matrix) -> list[list[Matrix]]:
    """Grid of ``1 x 1`` blocks ``pi_j . a . i_k``."""
    f = a.field
    pis = [_unit_projection(j, a.rows, f) for j in range(a.rows)]
    injs = [_unit_projection(k, a.cols, f).T for k in range(a.cols)]
    return [[compose(compose(p, a), i) for i in injs] for p in pis]


def recompose(grid: Sequence[Sequence[Matrix]], rows: int | None = None,
              cols: int | None = None, field: Field = RATIONAL) -> Matrix:
    """Sum of ``i_j . c_jk . pi_k`` over the grid of ``1 x 1`` cells."""
    rows = len(grid) if rows is None else rows
    cols = (len(grid[0]) if grid else 0) if cols is None else cols
    if grid:
        field = grid[0][0].field if grid[0] else field
    total = zero(rows, cols, field)
    for j, line in enumerate(grid):
        inj = _unit_projection(j, rows, field).T
        for k, cell in enumerate(line):
            proj = _unit_projection(k, cols, field)
            total = add(total, compose(compose(inj, cell), proj))
    return total
