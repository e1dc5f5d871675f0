"""Type-directed random generator of well-typed expressions.

``TermGen.term(rows, cols, depth)`` returns an expression whose type is
``rows x cols`` by construction, binding fresh matrix variables as it goes.
Half of the variables are declared with symbolic dimensions so the solver
has to recover them from the bound shapes.
"""

import random

from conftest import rand_matrix
from lat.typelang import ArrowType, BinOp, Builtin, Dim, Transpose, Unvec, Var, Vec


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


class TermGen:
    def __init__(self, rng: random.Random, max_dim: int = 4):
        self.rng = rng
        self.max_dim = max_dim
        self.matrices = {}
        self.types = {}
        self._dimvars = 0

    def _extent(self, n: int) -> Dim:
        if self.rng.random() < 0.5:
            return Dim.const(n)
        self._dimvars += 1
        return Dim.var(f"d{self._dimvars}")

    def var(self, rows, cols):
        name = f"M{len(self.matrices)}"
        self.matrices[name] = rand_matrix(self.rng, rows, cols)
        self.types[name] = ArrowType(self._extent(rows), self._extent(cols))
        return Var(name)

    def leaf(self, rows, cols):
        rng = self.rng
        options = [lambda: self.var(rows, cols), lambda: Builtin("zero", (rows, cols))]
        if rows == cols:
            options.append(lambda: Builtin("id", (rows,)))
            for n in _divisors(rows):
                options.append(lambda n=n: Builtin("K", (n, rows // n)))
        if rows == 1:
            options.append(lambda: Builtin("bang", (cols,)))
        for k in range(1, 4):
            if cols == k * k * rows:
                options.append(lambda k=k: Builtin("eps", (k, rows)))
            if rows == k * k * cols:
                options.append(lambda k=k: Builtin("eta", (k, cols)))
        return rng.choice(options)()

    def term(self, rows, cols, depth):
        rng = self.rng
        if depth <= 0:
            return self.leaf(rows, cols)
        d = depth - 1
        small = lambda: rng.randint(1, self.max_dim)  # noqa: E731
        rules = [
            lambda: self.leaf(rows, cols),
            lambda: (lambda p: BinOp("compose", self.term(rows, p, d), self.term(p, cols, d)))(small()),
            lambda: BinOp("add", self.term(rows, cols, d), self.term(rows, cols, d)),
            lambda: BinOp("hadamard", self.term(rows, cols, d), self.term(rows, cols, d)),
            lambda: Transpose(self.term(cols, rows, d)),
        ]
        if cols >= 2:
            c1 = rng.randint(1, cols - 1)
            rules.append(lambda: BinOp("junc", self.term(rows, c1, d), self.term(rows, cols - c1, d)))
        if rows >= 2:
            r1 = rng.randint(1, rows - 1)
            rules.append(lambda: BinOp("split", self.term(r1, cols, d), self.term(rows - r1, cols, d)))
        if rows >= 2 and cols >= 2:
            r1, c1 = rng.randint(1, rows - 1), rng.randint(1, cols - 1)
            rules.append(lambda: BinOp("dsum", self.term(r1, c1, d), self.term(rows - r1, cols - c1, d)))
        a, c = rng.choice(_divisors(rows)), rng.choice(_divisors(cols))
        rules.append(lambda: BinOp("kron", self.term(a, c, d), self.term(rows // a, cols // c, d)))
        rules.append(lambda: BinOp("fork", self.term(a, cols, d), self.term(rows // a, cols, d)))
        k = rng.choice(_divisors(rows))
        rules.append(lambda: Vec(k, self.term(rows // k, k * cols, d)))
        k2 = rng.choice(_divisors(cols))
        rules.append(lambda: Unvec(k2, self.term(k2 * rows, cols // k2, d)))
        return rng.choice(rules)()
