"""A small matrix expression language with dimension inference."""

from .dims import Dim
from .evaluate import (
    EnvEntry, EnvFormatError, NotGround, bind_shapes, evaluate, load_env, parse_env,
)
from .infer import (
    ArrowType, Checker, Constraint, InferenceError, Origin, TypeMismatch, Typing,
    UnboundName, Unresolved, infer, shape_type, solve,
)
from .syntax import (
    BinOp, Builtin, Expr, ParseError, Transpose, Unvec, Var, Vec, parse_expr, pretty,
)

__all__ = [
    "Dim", "ArrowType", "Constraint", "Origin", "Typing", "Checker", "infer", "solve",
    "shape_type", "InferenceError", "TypeMismatch", "Unresolved", "UnboundName",
    "Expr", "Var", "BinOp", "Transpose", "Vec", "Unvec", "Builtin", "parse_expr",
    "pretty", "ParseError", "evaluate", "load_env", "parse_env", "EnvEntry",
    "EnvFormatError", "NotGround", "bind_shapes",
]
