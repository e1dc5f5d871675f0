"""Shape-tagged dense matrices and the categorical primitives on them.

A matrix with ``rows`` rows and ``cols`` columns is read as an arrow
``cols -> rows``: composition ``compose(A, B)`` is "A after B" and requires
``A.cols == B.rows``.

Two scalar fields are provided.  :data:`RATIONAL` is exact: entries are
Python ``int`` (integral values) or :class:`fractions.Fraction`, both of which
are canonical rationals, and equality is exact.  :data:`FLOAT64` stores
``float`` entries and compares with an absolute tolerance.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from itertools import compress
from typing import Iterable, Sequence

from .errors import LengthMismatch, MatrixFormatError, ShapeMismatch

__all__ = [
    "Field", "RATIONAL", "FLOAT64", "Matrix", "make", "from_rows", "identity",
    "zero", "compose", "add", "sub", "negate", "scale", "transpose", "equals",
    "parse_matrix", "format_matrix", "read_matrix", "write_matrix",
]


class Field:
    """Scalar realization: how entries are coerced, formatted and compared."""

    name = "abstract"
    zero: object = 0
    one: object = 1

    def coerce(self, x):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b

    def div(self, a, b):
        raise NotImplementedError

    def format(self, x) -> str:
        return str(x)

    def __repr__(self):
        return f"<field {self.name}>"


class RationalField(Field):
    name = "rational"
    zero = 0
    one = 1

    def coerce(self, x):
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, numbers.Rational):
            return self.coerce(Fraction(x.numerator, x.denominator))
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, float):
            return self.coerce(Fraction(x))
        raise TypeError(f"cannot use {x!r} as a rational scalar")

    def parse(self, text: str):
        try:
            return self.coerce(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise MatrixFormatError(f"bad rational entry {text!r}") from exc

    def div(self, a, b):
        return self.coerce(Fraction(a) / b)

    def format(self, x) -> str:
        return str(x)


class Float64Field(Field):
    name = "f64"
    zero = 0.0
    one = 1.0

    def __init__(self, tol: float = 1e-9):
        self.tol = tol

    def coerce(self, x):
        if isinstance(x, str):
            return self.parse(x)
        return float(x)

    def parse(self, text: str):
        try:
            return float(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise MatrixFormatError(f"bad numeric entry {text!r}") from exc

    def eq(self, a, b) -> bool:
        return abs(a - b) <= self.tol

    def div(self, a, b):
        return a / b

    def format(self, x) -> str:
        return repr(float(x))


RATIONAL = RationalField()
FLOAT64 = Float64Field()


class Matrix:
    """Immutable dense matrix, entries stored row-major."""

    __slots__ = ("rows", "cols", "entries", "field", "_nz")

    def __init__(self, rows: int, cols: int, entries: Sequence, field: Field = RATIONAL):
        if rows < 0 or cols < 0:
            raise ValueError(f"negative extent {rows}x{cols}")
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise LengthMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_nz", None)

    @classmethod
    def _raw(cls, rows, cols, entries, field):
        # trusted constructor: entries already a coerced tuple of the right length
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "entries", entries)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "_nz", None)
        return m

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def size(self) -> int:
        return self.rows * self.cols

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry {ij} outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def nonzero_rows(self) -> list[list[tuple[int, object]]]:
        """Per row, the ``(col, value)`` pairs of nonzero entries (cached)."""
        if self._nz is None:
            c = self.cols
            rows: list[list] = [[] for _ in range(self.rows)]
            e = self.entries
            if c:
                for p in compress(range(len(e)), e):
                    rows[p // c].append((p % c, e[p]))
            object.__setattr__(self, "_nz", rows)
        return self._nz

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        """Submatrix of rows ``r0:r1`` and columns ``c0:c1``."""
        if not (0 <= r0 <= r1 <= self.rows and 0 <= c0 <= c1 <= self.cols):
            raise IndexError(f"block [{r0}:{r1}, {c0}:{c1}] outside {self.rows}x{self.cols}")
        c = self.cols
        e = self.entries
        out: list = []
        for i in range(r0, r1):
            out.extend(e[i * c + c0:i * c + c1])
        return Matrix._raw(r1 - r0, c1 - c0, tuple(out), self.field)

    def map(self, f) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, tuple(map(f, self.entries)), self.field)

    def __matmul__(self, other):
        return compose(self, other)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return negate(self)

    def __rmul__(self, alpha):
        return scale(alpha, self)

    @property
    def T(self):
        return transpose(self)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return equals(self, other)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols} [{body}])"


def make(rows: int, cols: int, entries: Iterable, field: Field = RATIONAL) -> Matrix:
    """Matrix of the given shape from row-major ``entries``."""
    return Matrix(rows, cols, [field.coerce(x) for x in entries], field)


def from_rows(rows: Sequence[Sequence], cols: int | None = None, field: Field = RATIONAL) -> Matrix:
    """Matrix from a list of rows.  ``cols`` is needed only when ``rows`` is empty."""
    r = len(rows)
    if r == 0:
        return Matrix(0, cols or 0, (), field)
    c = len(rows[0])
    if cols is not None and cols != c:
        raise LengthMismatch(f"expected {cols} columns, got {c}")
    flat = []
    for row in rows:
        if len(row) != c:
            raise LengthMismatch(f"ragged rows: {len(row)} != {c}")
        flat.extend(row)
    return make(r, c, flat, field)


def identity(n: int, field: Field = RATIONAL) -> Matrix:
    e = [field.zero] * (n * n)
    e[::n + 1] = [field.one] * n
    return Matrix._raw(n, n, tuple(e), field)


def zero(m: int, n: int, field: Field = RATIONAL) -> Matrix:
    return Matrix._raw(m, n, (field.zero,) * (m * n), field)


def compose(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product ``a . b`` ("a after b")."""
    if a.cols != b.rows:
        raise ShapeMismatch("compose", a.shape, b.shape, "Dimensions must agree")
    field = a.field
    r, c = a.rows, b.cols
    out = [field.zero] * (r * c)
    bnz = b.nonzero_rows()
    for i, arow in enumerate(a.nonzero_rows()):
        base = i * c
        for l, x in arow:
            for k, y in bnz[l]:
                out[base + k] += x * y
    return Matrix._raw(r, c, tuple(out), field)


def _same_shape(op, a, b):
    if a.shape != b.shape:
        raise ShapeMismatch(op, a.shape, b.shape)


def add(a: Matrix, b: Matrix) -> Matrix:
    _same_shape("add", a, b)
    return Matrix._raw(a.rows, a.cols, tuple(map(_plus, a.entries, b.entries)), a.field)


def sub(a: Matrix, b: Matrix) -> Matrix:
    _same_shape("sub", a, b)
    return Matrix._raw(a.rows, a.cols, tuple(map(_minus, a.entries, b.entries)), a.field)


def _plus(x, y):
    return x + y


def _minus(x, y):
    return x - y


def negate(a: Matrix) -> Matrix:
    return Matrix._raw(a.rows, a.cols, tuple(-x for x in a.entries), a.field)


def scale(alpha, a: Matrix) -> Matrix:
    alpha = a.field.coerce(alpha)
    return Matrix._raw(a.rows, a.cols, tuple(alpha * x for x in a.entries), a.field)


def transpose(a: Matrix) -> Matrix:
    r, c = a.rows, a.cols
    e = a.entries
    out = tuple(e[i * c + j] for j in range(c) for i in range(r))
    return Matrix._raw(c, r, out, a.field)


def equals(a: Matrix, b: Matrix) -> bool:
    """Same shape and equal entries (exact, or within the field's tolerance)."""
    if a.shape != b.shape:
        return False
    if a.field is RATIONAL and b.field is RATIONAL:
        return a.entries == b.entries
    eq = (a.field if a.field is not RATIONAL else b.field).eq
    return all(eq(x, y) for x, y in zip(a.entries, b.entries))


# -- text format ------------------------------------------------------------
#
#   rows cols
#   e11 e12 ...
#   ...
#
# Entries are integers, decimals or p/q rationals.


def parse_matrix(text: str, field: Field = RATIONAL) -> Matrix:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise MatrixFormatError("empty matrix file")
    header = lines[0].split()
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise MatrixFormatError(f"bad header line {lines[0]!r}; expected 'rows cols'")
    rows, cols = int(header[0]), int(header[1])
    body = lines[1:]
    if rows * cols == 0:
        if any(body):
            raise MatrixFormatError("empty matrix must have no entry lines")
        return Matrix(rows, cols, (), field)
    if len(body) != rows:
        raise MatrixFormatError(f"expected {rows} entry lines, got {len(body)}")
    entries = []
    for n, line in enumerate(body, start=2):
        toks = line.split()
        if len(toks) != cols:
            raise MatrixFormatError(f"line {n}: expected {cols} entries, got {len(toks)}")
        entries.extend(field.parse(t) for t in toks)
    return Matrix(rows, cols, entries, field)


def format_matrix(a: Matrix) -> str:
    lines = [f"{a.rows} {a.cols}"]
    if a.size:
        fmt = a.field.format
        lines.extend(" ".join(fmt(x) for x in a.row(i)) for i in range(a.rows))
    return "\n".join(lines) + "\n"


def read_matrix(path, field: Field = RATIONAL) -> Matrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read(), field)


def write_matrix(path, a: Matrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(a))
