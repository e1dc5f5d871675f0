"""Run well-typed expressions against matrix bindings, and load environments."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from ..biproduct import std_junc, std_split
from ..matcore import RATIONAL, Field, Matrix, add, compose, identity, read_matrix, transpose, zero
from ..tensor import bang, direct_sum, hadamard, khatri_rao, kron
from ..vectorize import commutation, epsilon, eta, unvec, vec
from ..errors import LatError
from .dims import Dim
from .infer import ArrowType, Constraint, Origin, infer
from .syntax import BinOp, Builtin, Expr, Transpose, Unvec, Var, Vec

_BINARY = {
    "compose": compose,
    "add": add,
    "hadamard": hadamard,
    "kron": kron,
    "dsum": direct_sum,
    "fork": khatri_rao,
    "junc": std_junc,
    "split": std_split,
}


class NotGround(LatError):
    pass


def _ground(arg, sub: Mapping[str, Dim]) -> int:
    d = Dim.of(arg).substitute(sub)
    if not d.is_const:
        raise NotGround(f"dimension {arg} is not determined (reduces to {d})")
    return d.value


def evaluate(e: Expr, env: Mapping[str, Matrix], types: Mapping[str, ArrowType] | None = None,
             text: str | None = None, field: Field = RATIONAL) -> Matrix:
    """Infer, bind symbolic dimensions to the matrices' shapes, then evaluate.

    ``types`` may give symbolic arrow types for some names; their dimensions
    are tied to the actual shapes of the bound matrices.
    """
    tyenv, extra = bind_shapes(types or {}, env)
    typing = infer(e, tyenv, text, extra)
    return _eval(e, env, typing.subst, field)


def bind_shapes(types: Mapping[str, ArrowType], env: Mapping[str, Matrix]):
    """Type environment plus the constraints tying declared types to actual shapes.

    Names with a matrix but no declared type get the matrix's ground type.
    """
    tyenv = dict(types)
    extra = []
    for name, m in env.items():
        ground = ArrowType(Dim.const(m.rows), Dim.const(m.cols))
        declared = types.get(name)
        if declared is None:
            tyenv[name] = ground
            continue
        origin = Origin(f"binding of {name}", (0, 0))
        extra.append(Constraint(declared.target, ground.target, "rows", origin))
        extra.append(Constraint(declared.source, ground.source, "columns", origin))
    return tyenv, extra


def _eval(e: Expr, env, sub, field) -> Matrix:
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Builtin):
        a = [_ground(x, sub) for x in e.args]
        if e.name == "id":
            return identity(a[0], field)
        if e.name == "zero":
            return zero(a[0], a[1], field)
        if e.name == "bang":
            return bang(a[0], field)
        if e.name == "eps":
            return epsilon(a[0], a[1], field)
        if e.name == "eta":
            return eta(a[0], a[1], field)
        if e.name == "K":
            return commutation(a[0], a[1], field)
    if isinstance(e, Transpose):
        return transpose(_eval(e.arg, env, sub, field))
    if isinstance(e, Vec):
        return vec(_ground(e.k, sub), _eval(e.arg, env, sub, field))
    if isinstance(e, Unvec):
        return unvec(_ground(e.k, sub), _eval(e.arg, env, sub, field))
    if isinstance(e, BinOp):
        return _BINARY[e.op](_eval(e.left, env, sub, field), _eval(e.right, env, sub, field))
    raise TypeError(f"not an expression: {e!r}")


# -- environment files ---------------------------------------------------------
#
#   # name rows cols [matrix-file]
#   A  j   n   a.mat
#   B  ?   2
#
# Extents are naturals, dimension-variable names, or ``?`` for a fresh one.


@dataclass
class EnvEntry:
    name: str
    type: ArrowType
    path: Path | None


class EnvFormatError(LatError):
    pass


def parse_env(text: str, base: Path | None = None) -> list[EnvEntry]:
    entries = []
    fresh = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) not in (3, 4):
            raise EnvFormatError(f"line {lineno}: expected 'name rows cols [path]'")
        name = toks[0]
        dims = []
        for tok in toks[1:3]:
            if tok == "?":
                fresh += 1
                dims.append(Dim.var(f"?env{fresh}"))
            elif tok.isdigit():
                dims.append(Dim.const(int(tok)))
            elif tok.isidentifier():
                dims.append(Dim.var(tok))
            else:
                raise EnvFormatError(f"line {lineno}: bad extent {tok!r}")
        path = None
        if len(toks) == 4:
            path = Path(toks[3])
            if base is not None and not path.is_absolute():
                path = base / path
        entries.append(EnvEntry(name, ArrowType(dims[0], dims[1]), path))
    return entries


def load_env(path, field: Field = RATIONAL):
    """Read an environment file; returns ``(types, matrices)``."""
    path = Path(path)
    entries = parse_env(path.read_text(encoding="utf-8"), path.parent)
    types = {e.name: e.type for e in entries}
    matrices = {e.name: read_matrix(e.path, field) for e in entries if e.path is not None}
    return types, matrices
