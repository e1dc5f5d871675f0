"""Blocked algorithms: three matrix-multiplication schemes and Gauss-Jordan
elimination driven by swap and self-cancellable biproducts."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .biproduct import (
    block, hcat, self_cancellable_biproduct, split, standard_biproduct,
    swap_biproduct, vcat,
)
from .errors import NotRowEchelon, ShapeMismatch, Singular
from .matcore import Matrix, add, compose, identity, scale, sub, zero
from .tensor import direct_sum

__all__ = [
    "mmm_dc", "mmm_naive", "mmm_blocked_2x2", "LOOP_ORDERS", "gauss_t",
    "is_row_echelon", "mpref", "inv_row_echelon", "GjeResult", "gje", "ge",
    "pivot_columns", "mmm_blocked",
]


def _agree(op: str, x: Matrix, y: Matrix) -> None:
    if x.cols != y.rows:
        raise ShapeMismatch(op, x.shape, y.shape, "Dimensions must agree")


# -- multiplication -----------------------------------------------------------

def mmm_dc(x: Matrix, y: Matrix) -> Matrix:
    """Divide and conquer on the shared dimension ``k``.

    ``[A | B] . [C ; D] = A.C + B.D`` with the cut at ``round(k/2)``; a
    shared dimension of one is an outer product.
    """
    _agree("mmm_dc", x, y)
    k = x.cols
    if k == 0:
        return zero(x.rows, y.cols, x.field)
    if k == 1:
        return compose(x, y)
    h = (k + 1) // 2   # round half up, as MATLAB's round does for k/2
    a, b = x.block(0, x.rows, 0, h), x.block(0, x.rows, h, k)
    c, d = y.block(0, h, 0, y.cols), y.block(h, k, 0, y.cols)
    return add(mmm_dc(a, c), mmm_dc(b, d))


LOOP_ORDERS = ("jkl", "kjl", "jlk", "ljk", "klj", "lkj")


def mmm_naive(a: Matrix, b: Matrix, order: str = "jkl") -> Matrix:
    """Triple loop over rows ``j`` of ``a``, columns ``k`` of ``b`` and the
    accumulation index ``l``, nested in the given order."""
    _agree("mmm_naive", a, b)
    if sorted(order) != ["j", "k", "l"]:
        raise ValueError(f"loop order must permute 'jkl', got {order!r}")
    m, p, n = a.rows, a.cols, b.cols
    ae, be = a.entries, b.entries
    c = [a.field.zero] * (m * n)
    extent = {"j": m, "k": n, "l": p}
    pos = {v: i for i, v in enumerate(order)}
    for idx in product(*(range(extent[v]) for v in order)):
        j, k, l = idx[pos["j"]], idx[pos["k"]], idx[pos["l"]]
        c[j * n + k] = c[j * n + k] + ae[j * p + l] * be[l * n + k]
    return Matrix._raw(m, n, tuple(c), a.field)


def mmm_blocked_2x2(r, s, t, u, a, b, c, d):
    """``[[R, S], [T, U]] . [[A, B], [C, D]]`` as four blocks."""
    for left, right in ((r, a), (s, c), (r, b), (s, d), (t, a), (u, c), (t, b), (u, d)):
        _agree("mmm_blocked_2x2", left, right)
    return (
        add(compose(r, a), compose(s, c)),
        add(compose(r, b), compose(s, d)),
        add(compose(t, a), compose(u, c)),
        add(compose(t, b), compose(u, d)),
    )


def mmm_blocked(x: Matrix, y: Matrix) -> Matrix:
    """Cut both factors into 2x2 blocks at their midpoints, multiply blockwise
    and glue the four result blocks back together."""
    _agree("mmm_blocked", x, y)
    r, k, c = x.rows, x.cols, y.cols
    hr, hk, hc = (r + 1) // 2, (k + 1) // 2, (c + 1) // 2
    w, v, t, u = mmm_blocked_2x2(
        x.block(0, hr, 0, hk), x.block(0, hr, hk, k), x.block(hr, r, 0, hk), x.block(hr, r, hk, k),
        y.block(0, hk, 0, hc), y.block(0, hk, hc, c), y.block(hk, k, 0, hc), y.block(hk, k, hc, c),
    )
    return block(w, v, t, u)


# -- elimination ----------------------------------------------------------------

def gauss_t(alpha, a: Matrix, b: Matrix) -> Matrix:
    """``[a ; alpha*a + b]``."""
    if a.cols != b.cols:
        raise ShapeMismatch("gauss_t", a.shape, b.shape, "column counts differ")
    return vcat(a, add(scale(alpha, a), b))


def _leading(row) -> int | None:
    for j, v in enumerate(row):
        if v:
            return j
    return None


def pivot_columns(m: Matrix) -> list[int]:
    return [p for p in (_leading(m.row(i)) for i in range(m.rows)) if p is not None]


def is_row_echelon(m: Matrix) -> bool:
    """Leading columns strictly increase and zero rows come last."""
    last = -1
    seen_zero = False
    for i in range(m.rows):
        p = _leading(m.row(i))
        if p is None:
            seen_zero = True
            continue
        if seen_zero or p <= last:
            return False
        last = p
    return True


def mpref(m: Matrix) -> int:
    """Size of the largest leading square block in row-echelon form with a
    nonzero diagonal."""
    k = 0
    limit = min(m.rows, m.cols)
    while k < limit:
        row = m.row(k)
        if row[k] == 0 or any(row[:k]):
            break
        k += 1
    return k


def inv_row_echelon(x: Matrix) -> Matrix:
    """Inverse of a square row-echelon matrix by back substitution."""
    n = x.rows
    if x.cols != n:
        raise ShapeMismatch("inv_row_echelon", x.shape, x.shape, "matrix must be square")
    for i in range(n):
        if any(x[i, j] for j in range(i)):
            raise NotRowEchelon(f"entry below the diagonal in row {i}")
        if x[i, i] == 0:
            raise Singular(f"zero pivot at ({i}, {i})")
    f = x.field
    inv = [[f.zero] * n for _ in range(n)]
    for col in range(n):
        for i in range(n - 1, -1, -1):
            acc = f.one if i == col else f.zero
            for j in range(i + 1, n):
                acc -= x[i, j] * inv[j][col]
            inv[i][col] = f.div(acc, x[i, i])
    return Matrix(n, n, [v for row in inv for v in row], f)


def _swap_top(m: Matrix, p: int) -> Matrix:
    """Exchange row 0 with row ``p`` using swapped biproducts.

    The leading ``p+1`` rows ``[r0 ; mid ; rp]`` are rebuilt in swap mode as
    ``[r0 ; [mid ; rp]^s]^s = [rp ; mid ; r0]``.
    """
    f = m.field
    r0 = m.block(0, 1, 0, m.cols)
    mid = m.block(1, p, 0, m.cols)
    rp = m.block(p, p + 1, 0, m.cols)
    rest = m.block(p + 1, m.rows, 0, m.cols)
    inner = split(swap_biproduct(standard_biproduct(1, p - 1, f)), mid, rp)
    head = split(swap_biproduct(standard_biproduct(p, 1, f)), r0, inner)
    return vcat(head, rest)


@dataclass(frozen=True)
class GjeResult:
    result: Matrix
    witness: Matrix
    pivot_cols: list[int]


def _eliminate(m: Matrix, scalar_pivot: bool):
    """Return ``(R, E, pivots)`` with ``R = E . m`` in row-echelon form."""
    f = m.field
    r, c = m.shape
    if r == 0 or c == 0:
        return m, identity(r, f), []
    perm = identity(r, f)
    if m[0, 0] == 0:
        p = next((i for i in range(1, r) if m[i, 0] != 0), None)
        if p is None:
            # leading column is all zero: keep it and carry on to its right
            rr, e, piv = _eliminate(m.block(0, r, 1, c), scalar_pivot)
            return hcat(zero(r, 1, f), rr), e, [q + 1 for q in piv]
        m = _swap_top(m, p)
        perm = _swap_top(perm, p)
    k = 1 if scalar_pivot else mpref(m)
    x = m.block(0, k, 0, k)
    b = m.block(0, k, k, c)
    a = m.block(k, r, 0, k)
    d = m.block(k, r, k, c)
    if scalar_pivot:
        factor = scale(f.div(f.one, x[0, 0]), a)  # A / x
    else:
        factor = compose(a, inv_row_echelon(x))   # A . X^-1
    schur = sub(d, compose(factor, b))
    sub_r, sub_e, sub_piv = _eliminate(schur, scalar_pivot)
    res = block(x, b, zero(r - k, k, f), sub_r)
    # elementary step [1 0 ; -A.X^-1 1]: split of pi1, pi2 of the
    # self-cancellable biproduct for C = A.X^-1
    std = standard_biproduct(k, r - k, f)
    elem = split(self_cancellable_biproduct(factor), std.pi1, std.pi2)
    witness = compose(compose(direct_sum(identity(k, f), sub_e), elem), perm)
    return res, witness, list(range(k)) + [q + k for q in sub_piv]


def gje(m: Matrix) -> GjeResult:
    """Blocked Gauss-Jordan elimination to row-echelon form.

    At each level the largest leading row-echelon block ``X`` is taken as
    pivot block and ``[[X, B], [A, D]]`` becomes
    ``[[X, B], [0, gje(D - A.X^-1.B)]]``.  A zero leading entry is first
    cured by a row exchange (first nonzero row from the top); an all-zero
    leading column is left in place.  ``witness`` is the invertible matrix
    with ``result = witness . m``.
    """
    res, w, piv = _eliminate(m, scalar_pivot=False)
    return GjeResult(res, w, piv)


def ge(m: Matrix) -> Matrix:
    """Classical elimination: scalar pivot ``x``, recursing on ``D - (A/x).B``."""
    return _eliminate(m, scalar_pivot=True)[0]
