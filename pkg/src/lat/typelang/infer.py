"""Dimension inference: constraint generation and a small polynomial solver.

Each node yields an :class:`ArrowType` ``target <- source`` and a list of
:class:`Constraint` equations between dimensions.  The solver handles ground
equations, equations that isolate a variable of degree one, and cancels
variable factors common to every term (dimension variables are positive).
Anything else is reported as :class:`Unresolved` rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..errors import LatError
from .dims import Dim, cancel
from .syntax import BinOp, Builtin, Expr, Transpose, Unvec, Var, Vec


@dataclass(frozen=True)
class ArrowType:
    """``target <- source``; as a matrix, ``target`` rows by ``source`` columns."""

    target: Dim
    source: Dim

    @property
    def rows(self) -> Dim:
        return self.target

    @property
    def cols(self) -> Dim:
        return self.source

    def substitute(self, sub: Mapping[str, Dim]) -> "ArrowType":
        return ArrowType(self.target.substitute(sub), self.source.substitute(sub))

    @property
    def is_ground(self) -> bool:
        return self.target.is_const and self.source.is_const

    def __str__(self):
        return f"{_paren(self.target)} x {_paren(self.source)}"

    def arrow(self) -> str:
        return f"{_paren(self.target)} <- {_paren(self.source)}"


def _paren(d: Dim) -> str:
    s = str(d)
    return f"({s})" if " " in s else s


@dataclass(frozen=True)
class Origin:
    rule: str
    span: tuple
    sides: tuple = ()   # spans of the two operands, when there are two

    def describe(self, text: str | None = None) -> str:
        def show(span):
            lo, hi = span
            if text is not None:
                return f"'{text[lo:hi]}' at {lo}..{hi}"
            return f"{lo}..{hi}"

        out = f"{self.rule} at {show(self.span)}"
        if len(self.sides) == 2:
            out += f" (left operand {show(self.sides[0])}, right operand {show(self.sides[1])})"
        return out


@dataclass(frozen=True)
class Constraint:
    left: Dim
    right: Dim
    what: str       # e.g. "targets", "sources", "inner dimensions"
    origin: Origin


class InferenceError(LatError):
    """Common base of the inference errors."""


class UnboundName(InferenceError):
    def __init__(self, name: str, span):
        self.name = name
        self.span = span
        super().__init__(f"unbound name {name!r} at {span[0]}..{span[1]}")


class TypeMismatch(InferenceError):
    def __init__(self, constraint: Constraint, left: Dim, right: Dim, text: str | None = None):
        self.constraint = constraint
        self.left = left
        self.right = right
        o = constraint.origin
        super().__init__(
            f"{o.rule}: {constraint.what} {left} ≠ {right}; in {o.describe(text)}"
        )


class Unresolved(InferenceError):
    def __init__(self, residual: list, text: str | None = None):
        self.residual = residual
        lines = [
            f"  {l} = {r}  ({c.what}, {c.origin.describe(text)})" for c, l, r in residual
        ]
        super().__init__("cannot solve dimension equations:\n" + "\n".join(lines))


@dataclass
class Typing:
    type: ArrowType
    subst: dict
    constraints: list = field(default_factory=list)
    fresh: dict = field(default_factory=dict)   # fresh variable -> Origin


class Checker:
    """Single-use inference engine; owns the fresh-variable counter."""

    def __init__(self, env: Mapping[str, ArrowType], text: str | None = None):
        self.env = dict(env)
        self.text = text
        self.constraints: list[Constraint] = []
        self.fresh_origins: dict[str, Origin] = {}
        self._used = False

    def fresh(self, rule: str, node: Expr) -> Dim:
        name = f"?{len(self.fresh_origins) + 1}"
        self.fresh_origins[name] = Origin(rule, node.span)
        return Dim.var(name)

    def eq(self, left: Dim, right: Dim, what: str, rule: str, node: Expr, sides=()):
        self.constraints.append(Constraint(left, right, what, Origin(rule, node.span, sides)))

    def gen(self, e: Expr) -> ArrowType:
        if isinstance(e, Var):
            if e.name not in self.env:
                raise UnboundName(e.name, e.span)
            return self.env[e.name]
        if isinstance(e, Builtin):
            a = [Dim.of(x) for x in e.args]
            if e.name == "id":
                return ArrowType(a[0], a[0])
            if e.name == "zero":
                return ArrowType(a[0], a[1])
            if e.name == "bang":
                return ArrowType(Dim.const(1), a[0])
            k, m = a
            if e.name == "eps":
                return ArrowType(m, k * k * m)
            if e.name == "eta":
                return ArrowType(k * k * m, m)
            if e.name == "K":
                return ArrowType(k * m, m * k)
            raise AssertionError(e.name)
        if isinstance(e, Transpose):
            t = self.gen(e.arg)
            return ArrowType(t.source, t.target)
        if isinstance(e, Vec):
            t = self.gen(e.arg)
            k, m = Dim.of(e.k), self.fresh("vec", e)
            self.eq(t.source, k * m, "sources", "vec", e)
            return ArrowType(k * t.target, m)
        if isinstance(e, Unvec):
            t = self.gen(e.arg)
            k, n = Dim.of(e.k), self.fresh("unvec", e)
            self.eq(t.target, k * n, "targets", "unvec", e)
            return ArrowType(n, k * t.source)
        if isinstance(e, BinOp):
            l, r = self.gen(e.left), self.gen(e.right)
            sides = (e.left.span, e.right.span)
            op = e.op
            if op == "compose":
                self.eq(l.source, r.target, "inner dimensions", op, e, sides)
                return ArrowType(l.target, r.source)
            if op in ("add", "hadamard"):
                self.eq(l.target, r.target, "targets", op, e, sides)
                self.eq(l.source, r.source, "sources", op, e, sides)
                return l
            if op == "junc":
                self.eq(l.target, r.target, "targets", op, e, sides)
                return ArrowType(l.target, l.source + r.source)
            if op == "split":
                self.eq(l.source, r.source, "sources", op, e, sides)
                return ArrowType(l.target + r.target, l.source)
            if op == "kron":
                return ArrowType(l.target * r.target, l.source * r.source)
            if op == "dsum":
                return ArrowType(l.target + r.target, l.source + r.source)
            if op == "fork":
                self.eq(l.source, r.source, "sources", op, e, sides)
                return ArrowType(l.target * r.target, l.source)
        raise TypeError(f"not an expression: {e!r}")

    def run(self, e: Expr, extra: list[Constraint] = ()) -> Typing:
        if self._used:
            raise RuntimeError("a Checker instance is single-use")
        self._used = True
        t = self.gen(e)
        self.constraints.extend(extra)
        sub = solve(self.constraints, self.text)
        return Typing(t.substitute(sub), sub, list(self.constraints), dict(self.fresh_origins))


# -- solver --------------------------------------------------------------------

def _isolate(diff: Dim):
    """Try to read ``diff = 0`` as ``v = rhs``.

    Returns ``(v, rhs)`` on success, ``"mismatch"`` when the equation has no
    positive solution, or ``None`` when undecided.
    """
    # Every term positive (or every term negative) can never sum to zero.
    if all(c > 0 for c in diff.terms.values()) or all(c < 0 for c in diff.terms.values()):
        return "mismatch"
    for mono, a in sorted(diff.terms.items()):
        if len(mono) != 1:
            continue
        v = mono[0]
        if any(v in m for m in diff.terms if m != mono):
            continue
        rest = diff - Dim({mono: a})
        if any(c % a for c in rest.terms.values()):
            if rest.is_const:
                return "mismatch"
            continue
        rhs = Dim({m: -c // a for m, c in rest.terms.items()})
        if rhs.is_natural and not rhs.is_zero:
            return v, rhs
        if rest.is_const:
            return "mismatch"
    return None


def solve(constraints: list[Constraint], text: str | None = None) -> dict:
    """Solve to a substitution or raise :class:`TypeMismatch`/:class:`Unresolved`."""
    sub: dict[str, Dim] = {}
    pending = list(constraints)
    progress = True
    while pending and progress:
        progress = False
        stuck = []
        for c in pending:
            l, r = c.left.substitute(sub), c.right.substitute(sub)
            diff = cancel(l - r)
            if diff.is_zero:
                continue
            found = _isolate(diff)
            if found == "mismatch":
                raise TypeMismatch(c, l, r, text)
            if found is None:
                stuck.append(c)
                continue
            v, rhs = found
            sub = {k: d.substitute({v: rhs}) for k, d in sub.items()}
            sub[v] = rhs
            progress = True
        pending = stuck
    if pending:
        raise Unresolved(
            [(c, c.left.substitute(sub), c.right.substitute(sub)) for c in pending], text
        )
    return sub


def infer(e: Expr, env: Mapping[str, ArrowType], text: str | None = None,
          extra: list[Constraint] = ()) -> Typing:
    """Principal type of ``e`` under ``env`` together with the solving substitution."""
    return Checker(env, text).run(e, list(extra))


def shape_type(rows, cols) -> ArrowType:
    """Arrow type of a ``rows x cols`` matrix; each extent an int or a variable name."""
    return ArrowType(Dim.of(rows), Dim.of(cols))
