"""Kronecker product, direct sum, Hadamard product and the Khatri-Rao fork.

Also provides two structured compositions, ``(id_k (x) X) . Y`` and
``X . (id_k (x) Y)``, that never materialize the Kronecker factor.  Several
vectorization constructions compose with ``id (x) something`` whose dense
form would hold millions of zeros.
"""

from __future__ import annotations

from .errors import ShapeMismatch
from .matcore import RATIONAL, Matrix, compose, identity, transpose

__all__ = [
    "kron", "direct_sum", "hadamard", "bang", "ones", "kr_projections",
    "khatri_rao", "kron_id_compose", "compose_kron_id",
]


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product: each entry ``a_ij`` becomes the block ``a_ij * b``."""
    field = a.field
    ar, ac, br, bc = a.rows, a.cols, b.rows, b.cols
    rows, cols = ar * br, ac * bc
    out = [field.zero] * (rows * cols)
    bnz = b.nonzero_rows()
    for i, arow in enumerate(a.nonzero_rows()):
        for j, x in arow:
            for p, brow in enumerate(bnz):
                base = (i * br + p) * cols + j * bc
                for q, y in brow:
                    out[base + q] = x * y
    return Matrix._raw(rows, cols, tuple(out), field)


def direct_sum(a: Matrix, b: Matrix) -> Matrix:
    """Block-diagonal ``[[a, 0], [0, b]]``, built as ``[i1.a | i2.b]``."""
    from .biproduct import junc, standard_biproduct

    inj = standard_biproduct(a.rows, b.rows, a.field)
    glue = standard_biproduct(a.cols, b.cols, a.field)
    return junc(glue, compose(inj.i1, a), compose(inj.i2, b))


def hadamard(a: Matrix, b: Matrix) -> Matrix:
    if a.shape != b.shape:
        raise ShapeMismatch("hadamard", a.shape, b.shape)
    return Matrix._raw(a.rows, a.cols, tuple(x * y for x, y in zip(a.entries, b.entries)), a.field)


def ones(m: int, n: int, field=RATIONAL) -> Matrix:
    return Matrix._raw(m, n, (field.one,) * (m * n), field)


def bang(n: int, field=RATIONAL) -> Matrix:
    """The ``1 x n`` row of ones."""
    return ones(1, n, field)


def kr_projections(m: int, k: int, field=RATIONAL) -> tuple[Matrix, Matrix]:
    """Fork projections ``p1 = id_m (x) !_k`` and ``p2 = !_m (x) id_k``."""
    p1 = kron(identity(m, field), bang(k, field))
    p2 = kron(bang(m, field), identity(k, field))
    return p1, p2


def khatri_rao(a: Matrix, b: Matrix) -> Matrix:
    """Column-wise Kronecker product (fork) ``(p1^T . a) * (p2^T . b)``."""
    if a.cols != b.cols:
        raise ShapeMismatch("khatri_rao", a.shape, b.shape, "column counts differ")
    p1, p2 = kr_projections(a.rows, b.rows, a.field)
    return hadamard(compose(transpose(p1), a), compose(transpose(p2), b))


def kron_id_compose(k: int, x: Matrix, y: Matrix) -> Matrix:
    """``(id_k (x) x) . y`` computed block by block.

    ``y`` is cut into ``k`` horizontal slabs of ``x.cols`` rows; the result
    stacks ``x . slab`` for each slab.
    """
    if k * x.cols != y.rows:
        raise ShapeMismatch("compose", (k * x.rows, k * x.cols), y.shape, "Dimensions must agree")
    field = x.field
    xr, xc, c = x.rows, x.cols, y.cols
    out = [field.zero] * (k * xr * c)
    xnz = x.nonzero_rows()
    ynz = y.nonzero_rows()
    for s in range(k):
        yoff = s * xc
        for i, xrow in enumerate(xnz):
            base = (s * xr + i) * c
            for l, v in xrow:
                for q, w in ynz[yoff + l]:
                    out[base + q] += v * w
    return Matrix._raw(k * xr, c, tuple(out), field)


def compose_kron_id(x: Matrix, k: int, y: Matrix) -> Matrix:
    """``x . (id_k (x) y)`` computed block by block.

    ``x`` is cut into ``k`` vertical slabs of ``y.rows`` columns; the result
    places ``slab . y`` side by side.
    """
    if x.cols != k * y.rows:
        raise ShapeMismatch("compose", x.shape, (k * y.rows, k * y.cols), "Dimensions must agree")
    field = x.field
    yr, yc = y.rows, y.cols
    r, c = x.rows, k * yc
    out = [field.zero] * (r * c)
    ynz = y.nonzero_rows()
    for i, xrow in enumerate(x.nonzero_rows()):
        base = i * c
        for l, v in xrow:
            s, p = divmod(l, yr)
            off = base + s * yc
            for q, w in ynz[p]:
                out[off + q] += v * w
    return Matrix._raw(r, c, tuple(out), field)
