"""Symbolic dimensions as polynomials over dimension variables.

A :class:`Dim` is kept in normal form: a mapping from monomials (sorted
tuples of variable names, repeated for powers) to nonzero integer
coefficients.  Two dimensions are equal iff their normal forms are.
Well-formed dimensions have natural coefficients; differences built while
solving may be negative.
"""

from __future__ import annotations

from collections import Counter
from functools import reduce
from math import gcd
from typing import Mapping

Monomial = tuple  # sorted tuple of variable names; () is the constant monomial


class Dim:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            if c:
                clean[tuple(sorted(mono))] = clean.get(tuple(sorted(mono)), 0) + c
        object.__setattr__(self, "terms", {m: c for m, c in clean.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("Dim is immutable")

    @classmethod
    def const(cls, n: int) -> "Dim":
        return cls({(): n})

    @classmethod
    def var(cls, name: str) -> "Dim":
        return cls({(name,): 1})

    @staticmethod
    def of(x) -> "Dim":
        if isinstance(x, Dim):
            return x
        if isinstance(x, int):
            return Dim.const(x)
        if isinstance(x, str):
            return Dim.var(x)
        raise TypeError(f"not a dimension: {x!r}")

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other) -> "Dim":
        other = Dim.of(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return Dim(t)

    __radd__ = __add__

    def __neg__(self) -> "Dim":
        return Dim({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Dim":
        return self + (-Dim.of(other))

    def __mul__(self, other) -> "Dim":
        other = Dim.of(other)
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                t[m] = t.get(m, 0) + c1 * c2
        return Dim(t)

    __rmul__ = __mul__

    def __rsub__(self, other) -> "Dim":
        return Dim.of(other) - self

    # -- queries -------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_const(self) -> bool:
        return all(m == () for m in self.terms)

    @property
    def value(self) -> int:
        if not self.is_const:
            raise ValueError(f"dimension {self} is not ground")
        return self.terms.get((), 0)

    def variables(self) -> set[str]:
        return {v for m in self.terms for v in m}

    @property
    def is_natural(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def substitute(self, sub: Mapping[str, "Dim"]) -> "Dim":
        if not sub or not (self.variables() & sub.keys()):
            return self
        total = Dim()
        for mono, c in self.terms.items():
            term = Dim.const(c)
            for v in mono:
                term = term * (sub[v] if v in sub else Dim.var(v))
            total = total + term
        return total

    def __eq__(self, other):
        if isinstance(other, int):
            other = Dim.const(other)
        if not isinstance(other, Dim):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Dim({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (-len(m), m)):
            c = self.terms[mono]
            body = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in sorted(Counter(mono).items())
            )
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            parts.append(("-" if c < 0 else "+", text))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out


def cancel(d: Dim) -> Dim:
    """Divide out the integer content and any variable common to every term.

    Dimension variables are taken to be positive, so a common variable factor
    cannot vanish and may be cancelled from an equation ``d = 0``.
    """
    if d.is_zero:
        return d
    content = reduce(gcd, (abs(c) for c in d.terms.values()))
    common = None
    for mono in d.terms:
        cnt = Counter(mono)
        common = cnt if common is None else common & cnt
    sign = -1 if next(iter(sorted(d.terms.items())))[1] < 0 else 1
    out = {}
    for mono, c in d.terms.items():
        rest = Counter(mono)
        rest.subtract(common)
        out[tuple(sorted(rest.elements()))] = sign * c // content
    return Dim(out)
