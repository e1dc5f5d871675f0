"""Surface syntax of the matrix expression language: AST, parser, printer.

Grammar, lowest precedence first (all binary operators associate left)::

    dsum    := sum ("(+)" sum)*
    sum     := tensor ("+" tensor)*
    tensor  := comp (("x" | ".*" | "fork") comp)*
    comp    := factor ("." factor)*
    factor  := atom ("^T")*
    atom    := ident | "id" dim | "zero" dim dim | "bang" dim
             | "eps" dim dim | "eta" dim dim | "K" dim dim
             | "vec" dim atom | "unvec" dim atom
             | "[" expr "|" expr "]" | "[" expr ";" expr "]" | "(" expr ")"
    dim     := nat | ident
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from ..errors import LatError

Span = tuple  # (start, end) character offsets
DimArg = Union[int, str]

KEYWORDS = {"x", "fork", "id", "zero", "bang", "eps", "eta", "K", "vec", "unvec"}
BUILTIN_ARITY = {"id": 1, "bang": 1, "zero": 2, "eps": 2, "eta": 2, "K": 2}


class ParseError(LatError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at offset {pos}")

    def pointer(self) -> str:
        """The offending line with a caret under the error position."""
        if not self.text:
            return ""
        start = self.text.rfind("\n", 0, self.pos) + 1
        end = self.text.find("\n", self.pos)
        line = self.text[start:end if end >= 0 else len(self.text)]
        return f"{line}\n{' ' * (self.pos - start)}^"


# -- AST -----------------------------------------------------------------------

@dataclass(frozen=True)
class Expr:
    span: Span = field(default=(0, 0), compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class BinOp(Expr):
    """``op`` is one of compose, add, kron, hadamard, fork, dsum, junc, split."""

    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Transpose(Expr):
    arg: Expr


@dataclass(frozen=True)
class Vec(Expr):
    k: DimArg
    arg: Expr


@dataclass(frozen=True)
class Unvec(Expr):
    k: DimArg
    arg: Expr


@dataclass(frozen=True)
class Builtin(Expr):
    """Constant matrices: id, zero, bang, eps, eta, K."""

    name: str
    args: tuple


# -- lexer ---------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<sym>\(\+\)|\.\*|\^T|[.+\[\]|;(),]))"
)


@dataclass
class Token:
    kind: str   # num, ident, kw, sym, eof
    text: str
    start: int
    end: int


def tokenize(text: str) -> list[Token]:
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        val = m.group(kind)
        start = m.start(kind)
        if kind == "ident" and val in KEYWORDS:
            kind = "kw"
        toks.append(Token(kind, val, start, m.end()))
        pos = m.end()
    end = len(text.rstrip())
    toks.append(Token("eof", "", end, end))
    return toks


# -- parser --------------------------------------------------------------------

_LEVELS = [
    {"(+)": "dsum"},
    {"+": "add"},
    {"x": "kron", ".*": "hadamard", "fork": "fork"},
    {".": "compose"},
]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{msg}, found {found}", tok.start, self.text)

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind not in ("sym", "kw"):
            self.error(f"expected {text!r}")
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "eof":
            self.error("unexpected token")
        return e

    def expr(self, level: int = 0) -> Expr:
        if level == len(_LEVELS):
            return self.factor()
        ops = _LEVELS[level]
        left = self.expr(level + 1)
        while self.tok.kind in ("sym", "kw") and self.tok.text in ops:
            op = ops[self.advance().text]
            right = self.expr(level + 1)
            left = BinOp(op, left, right, span=(left.span[0], right.span[1]))
        return left

    def factor(self) -> Expr:
        e = self.atom()
        while self.tok.kind == "sym" and self.tok.text == "^T":
            t = self.advance()
            e = Transpose(e, span=(e.span[0], t.end))
        return e

    def dim(self) -> DimArg:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return int(t.text)
        if t.kind == "ident":
            self.advance()
            return t.text
        self.error("expected a dimension (number or name)")

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "ident":
            self.advance()
            return Var(t.text, span=(t.start, t.end))
        if t.kind == "kw" and t.text in BUILTIN_ARITY:
            self.advance()
            arity = BUILTIN_ARITY[t.text]
            if self.tok.kind == "sym" and self.tok.text == "(":
                # call form: eps(2, 2)
                self.advance()
                args = [self.dim()]
                for _ in range(arity - 1):
                    self.expect(",")
                    args.append(self.dim())
                self.expect(")")
                args = tuple(args)
            else:
                args = tuple(self.dim() for _ in range(arity))
            return Builtin(t.text, args, span=(t.start, self.toks[self.i - 1].end))
        if t.kind == "kw" and t.text in ("vec", "unvec"):
            self.advance()
            k = self.dim()
            arg = self.atom()
            cls = Vec if t.text == "vec" else Unvec
            return cls(k, arg, span=(t.start, arg.span[1]))
        if t.kind == "sym" and t.text == "[":
            self.advance()
            first = self.expr()
            sep = self.tok
            if sep.kind != "sym" or sep.text not in ("|", ";"):
                self.error("expected '|' or ';' inside brackets")
            self.advance()
            second = self.expr()
            close = self.expect("]")
            op = "junc" if sep.text == "|" else "split"
            return BinOp(op, first, second, span=(t.start, close.end))
        if t.kind == "sym" and t.text == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        self.error("expected an expression")


def parse_expr(text: str) -> Expr:
    """Parse ``text`` into an :class:`Expr`; raises :class:`ParseError`."""
    return _Parser(text).parse()


# -- printer -------------------------------------------------------------------

_PREC = {"dsum": 1, "add": 2, "kron": 3, "hadamard": 3, "fork": 3, "compose": 4}
_SYMBOL = {"dsum": "(+)", "add": "+", "kron": "x", "hadamard": ".*", "fork": "fork", "compose": "."}
_ATOM = 6


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp) and e.op in _PREC:
        return _PREC[e.op]
    if isinstance(e, Transpose):
        return 5
    return _ATOM


def _wrap(e: Expr, need: int) -> str:
    s = pretty(e)
    return f"({s})" if _prec(e) < need else s


def pretty(e: Expr) -> str:
    """Render an expression so that :func:`parse_expr` gives it back."""
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Builtin):
        return " ".join([e.name, *map(str, e.args)])
    if isinstance(e, (Vec, Unvec)):
        word = "vec" if isinstance(e, Vec) else "unvec"
        return f"{word} {e.k} {_wrap(e.arg, _ATOM)}"
    if isinstance(e, Transpose):
        return f"{_wrap(e.arg, 5)}^T"
    if isinstance(e, BinOp):
        if e.op == "junc":
            return f"[{pretty(e.left)} | {pretty(e.right)}]"
        if e.op == "split":
            return f"[{pretty(e.left)} ; {pretty(e.right)}]"
        p = _PREC[e.op]
        return f"{_wrap(e.left, p)} {_SYMBOL[e.op]} {_wrap(e.right, p + 1)}"
    raise TypeError(f"not an expression: {e!r}")
