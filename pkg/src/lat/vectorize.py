"""Column-major vectorization with an explicit thinning factor.

``vec(k, A)`` takes ``A : n x (k*m)``, cuts it into ``k`` column slabs of
width ``m`` and stacks them, giving ``(k*n) x m``; for ``m == 1`` this is the
usual column-major stacking.  ``unvec`` is its inverse.  The pair forms a
self-adjunction of ``X |-> id_k (x) X`` with counit ``epsilon(k, n)``
(``n x k^2 n``) and unit ``eta(k, n)``, its transpose.
"""

from __future__ import annotations

from functools import lru_cache

from .biproduct import hcat, vcat
from .errors import DegenerateScale, IndivisibleThinning, LengthFactor, ShapeMismatch
from .matcore import RATIONAL, Field, Matrix, add, identity, transpose, zero
from .tensor import compose_kron_id, kron, kron_id_compose

__all__ = [
    "vec", "unvec", "epsilon", "jay", "eye", "eta", "commutation",
    "commutation_factored", "commutation_sum", "transpose_via_vec", "vec_mmm",
    "vec_mmm_dense", "mmm_vec", "mu", "unit_matrix",
]


def _check_k(k: int, what: str) -> None:
    if k < 1:
        raise DegenerateScale(f"{what}: thinning factor must be >= 1, got {k}")


def vec(k: int, a: Matrix) -> Matrix:
    """``n x (k*m)`` to ``(k*n) x m``."""
    _check_k(k, "vec")
    if a.cols % k:
        raise IndivisibleThinning(f"vec: {k} does not divide the {a.cols} columns of {a.rows}x{a.cols}")
    n, m = a.rows, a.cols // k
    e, c = a.entries, a.cols
    out: list = []
    for b in range(k):
        off = b * m
        for i in range(n):
            out.extend(e[i * c + off:i * c + off + m])
    return Matrix._raw(k * n, m, tuple(out), a.field)


def unvec(k: int, x: Matrix) -> Matrix:
    """``(k*n) x m`` to ``n x (k*m)``; inverse of :func:`vec`."""
    _check_k(k, "unvec")
    if x.rows % k:
        raise IndivisibleThinning(f"unvec: {k} does not divide the {x.rows} rows of {x.rows}x{x.cols}")
    n, m = x.rows // k, x.cols
    e = x.entries
    out: list = []
    for i in range(n):
        for b in range(k):
            r = b * n + i
            out.extend(e[r * m:(r + 1) * m])
    return Matrix._raw(n, k * m, tuple(out), x.field)


def eye(r: int, c: int, field: Field = RATIONAL) -> Matrix:
    """Rectangular identity: ones on the leading diagonal."""
    e = [field.zero] * (r * c)
    for i in range(min(r, c)):
        e[i * c + i] = field.one
    return Matrix._raw(r, c, tuple(e), field)


def jay(r: int, c: int, field: Field = RATIONAL) -> Matrix:
    """Second projection/injection of a standard biproduct, sized ``r x c``.

    ``[0 ; id_c]`` when ``r >= c``, otherwise ``[0 | id_r]``.
    """
    if r >= c:
        return vcat(zero(r - c, c, field), identity(c, field))
    return hcat(zero(r, c - r, field), identity(r, field))


@lru_cache(maxsize=128)
def _epsilon(k: int, m: int, field: Field) -> Matrix:
    if k == 1:
        return identity(m, field)
    n = k - 1
    p1 = eye(n * m, k * m, field)
    p2 = jay(m, k * m, field)
    return hcat(compose_kron_id(_epsilon(n, m, field), n, p1), p2)


def epsilon(k: int, m: int, field: Field = RATIONAL) -> Matrix:
    """Counit ``m x (k^2 m)``: ``eps_1 = id``, ``eps_{k+1} = [eps_k.(id_k (x) p1) | p2]``."""
    _check_k(k, "epsilon")
    return _epsilon(k, m, field)


@lru_cache(maxsize=128)
def _eta(k: int, m: int, field: Field) -> Matrix:
    return transpose(_epsilon(k, m, field))


def eta(k: int, m: int, field: Field = RATIONAL) -> Matrix:
    """Unit ``(k^2 m) x m``, the transpose of the counit."""
    _check_k(k, "eta")
    return _eta(k, m, field)


def commutation(n: int, m: int, field: Field = RATIONAL) -> Matrix:
    """``K_nm`` of shape ``(n*m) x (m*n)`` with ``K . vec(m, A) = vec(n, A^T)``.

    Closed form ``vec_{nm}(unvec_n(eps_m))``.
    """
    _check_k(n, "commutation")
    _check_k(m, "commutation")
    return vec(n * m, unvec(n, epsilon(m, n, field)))


def commutation_factored(n: int, m: int, field: Field = RATIONAL) -> Matrix:
    """``(id_nm (x) eps_n) . (id_{nm.n} (x) eps_m) . eta_nm``."""
    _check_k(n, "commutation")
    _check_k(m, "commutation")
    nm = n * m
    right = kron_id_compose(nm * n, epsilon(m, n, field), eta(nm, m * n, field))
    return kron_id_compose(nm, epsilon(n, 1, field), right)


def unit_matrix(n: int, m: int, i: int, j: int, field: Field = RATIONAL) -> Matrix:
    """``n x m`` matrix with a single one at ``(i, j)``."""
    e = [field.zero] * (n * m)
    e[i * m + j] = field.one
    return Matrix._raw(n, m, tuple(e), field)


def commutation_sum(n: int, m: int, field: Field = RATIONAL) -> Matrix:
    """Index-wise ``sum_ij H_ij (x) H_ij^T`` over the ``n x m`` unit matrices."""
    _check_k(n, "commutation")
    _check_k(m, "commutation")
    total = zero(n * m, m * n, field)
    for i in range(n):
        for j in range(m):
            h = unit_matrix(n, m, i, j, field)
            total = add(total, kron(h, transpose(h)))
    return total


def transpose_via_vec(a: Matrix) -> Matrix:
    """Transpose using only ``vec``/``unvec``: ``unvec_r(vec_{rc}(unvec_r(a)))``."""
    r, c = a.shape
    if r == 0 or c == 0:
        return Matrix._raw(c, r, (), a.field)
    return unvec(r, vec(r * c, unvec(r, a)))


def vec_mmm(n: int, vb: Matrix, vc: Matrix) -> Matrix:
    """Product of two vectorized matrices, result vectorized.

    With ``vb = vec(n, B)`` for ``B : j x n`` and ``vc = vec(k, C)`` for
    ``C : n x k``, returns ``(id_k (x) eps_n) . (id_{kn} (x) vb) . vc``, which is
    ``vec(k, B . C)``.

    The middle factor ``(id_{kn} (x) vb) . vc`` has ``k n^2 j`` rows but the
    counit reads only ``n`` of every ``n^2`` of them, so it is evaluated
    lazily at those rows.  This is the same composite as the dense
    three-factor product (see :func:`vec_mmm_dense`) at a factor ``n`` less work.
    """
    j, k = _vec_mmm_dims(n, vb, vc)
    field = vb.field
    eps_rows = epsilon(n, j, field).nonzero_rows()
    x, y = vb.entries, vc.entries
    jn = j * n
    slab = n * jn
    out = []
    for s in range(k):
        for row in eps_rows:
            acc = field.zero
            for col, v in row:
                # row s*slab + col of (id_{kn} (x) vb) . vc is vb[r] * vc[q]
                q, r = divmod(s * slab + col, jn)
                acc += v * x[r] * y[q]
            out.append(acc)
    return Matrix._raw(k * j, 1, tuple(out), field)


def vec_mmm_dense(n: int, vb: Matrix, vc: Matrix) -> Matrix:
    """Literal evaluation of the three-factor composite behind :func:`vec_mmm`."""
    j, k = _vec_mmm_dims(n, vb, vc)
    applied = kron_id_compose(k * n, vb, vc)
    return kron_id_compose(k, epsilon(n, j, vb.field), applied)


def _vec_mmm_dims(n: int, vb: Matrix, vc: Matrix) -> tuple[int, int]:
    if vb.cols != 1 or vc.cols != 1:
        raise ShapeMismatch("vec_mmm", vb.shape, vc.shape, "arguments must be column vectors")
    _check_k(n, "vec_mmm")
    a, b = vb.rows, vc.rows
    if a % n or b % n:
        raise LengthFactor("n must be a common length factor")
    return a // n, b // n


def mmm_vec(a: Matrix, b: Matrix) -> Matrix:
    """``a . b`` computed entirely on vectorized representations."""
    if a.cols != b.rows:
        raise ShapeMismatch("mmm_vec", a.shape, b.shape, "Dimensions must agree")
    n, c = a.cols, b.cols
    if n == 0 or c == 0:
        return zero(a.rows, c, a.field)
    return unvec(c, vec_mmm(n, vec(n, a), vec(c, b)))


def mu(k: int, n: int, field: Field = RATIONAL) -> Matrix:
    """Multiplication ``(k^2 n) x (k^4 n)`` of the monad ``n |-> k^2 n``.

    ``id_k (x) eps_k`` with the counit taken at object ``k*n``, so that both
    unit laws hold against ``eta``.
    """
    _check_k(k, "mu")
    return kron(identity(k, field), epsilon(k, k * n, field))
