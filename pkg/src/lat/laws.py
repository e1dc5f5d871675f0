"""Named algebraic laws checked on random exact-rational instances.

Every law is a function of a :class:`Trial`, which hands out random
dimensions, thinning factors and matrices, and records each generated matrix
so that a failing equation can be reported with its inputs.  A law yields
``(label, lhs, rhs)`` triples; the runner compares the two sides with the
field's equality.

Trials are seeded individually: trial ``i`` of a run with seed ``s`` uses
``Random(f"{law}:{s}:{i}")``, so any failure replays from ``(law, s, i)``
alone, independently of which other laws ran or in what order.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from . import biproduct as bp_mod
from .biproduct import (
    Biproduct, block, check_biproduct, junc, scale_biproduct, self_cancellable_biproduct,
    split, standard_biproduct, std_junc, std_split, swap_biproduct,
)
from .blocked import LOOP_ORDERS, mmm_blocked_2x2, mmm_dc, mmm_naive
from .matcore import RATIONAL, Field, Matrix, add, compose, equals, identity, make, transpose, zero
from .report import Failure, LawReport
from .tensor import bang, direct_sum, khatri_rao, kr_projections, kron
from .vectorize import commutation, epsilon, eta, unvec, vec

MUTATIONS = ("pi2-zero",)


class Trial:
    """Random source for one trial of one law."""

    def __init__(self, rng: random.Random, max_dim: int, max_k: int,
                 field: Field = RATIONAL, mutation: str | None = None):
        self.rng = rng
        self.max_dim = max_dim
        self.max_k = max_k
        self.field = field
        self.mutation = mutation
        self.inputs: dict[str, Matrix] = {}

    def dim(self, lo: int = 0) -> int:
        return self.rng.randint(lo, max(lo, self.max_dim))

    def k(self) -> int:
        return self.rng.randint(1, self.max_k)

    def scalar(self):
        return Fraction(self.rng.randint(-9, 9), self.rng.randint(1, 9))

    def mat(self, name: str, rows: int, cols: int) -> Matrix:
        m = make(rows, cols, (self.scalar() for _ in range(rows * cols)), self.field)
        self.inputs[name] = m
        return m

    def std(self, m: int, n: int) -> Biproduct:
        """Standard biproduct, or its mutated variant when a mutation is active."""
        bp = standard_biproduct(m, n, self.field)
        if self.mutation == "pi2-zero":
            return Biproduct(bp.pi1, zero(n, m + n, self.field), bp.i1, bp.i2)
        return bp

    def random_biproduct(self, m: int, n: int) -> Biproduct:
        kind = self.rng.choice(("standard", "swap", "self-cancellable"))
        if kind == "standard":
            return self.std(m, n)
        if kind == "swap":
            return swap_biproduct(self.std(n, m))
        return self_cancellable_biproduct(self.mat("C", n, m))


Equation = tuple  # (label, lhs, rhs)


@dataclass(frozen=True)
class Law:
    name: str
    check: Callable[[Trial], Iterable[Equation]]
    doc: str = ""


LAWS: dict[str, Law] = {}


def law(name: str):
    def register(fn):
        LAWS[name] = Law(name, fn, (fn.__doc__ or "").strip())
        return fn
    return register


def _axioms(bp: Biproduct):
    for failure in check_biproduct(bp).failures:
        yield failure.label, failure.matrices["lhs"], failure.matrices["rhs"]


# -- biproducts ------------------------------------------------------------------

@law("biproduct-standard")
def _(t: Trial):
    """Biproduct equations for the standard biproduct."""
    yield from _axioms(t.std(t.dim(), t.dim()))


@law("biproduct-swap")
def _(t: Trial):
    """Biproduct equations after exchanging the two halves."""
    yield from _axioms(swap_biproduct(t.std(t.dim(), t.dim())))


@law("biproduct-self-cancellable")
def _(t: Trial):
    """Biproduct equations for the self-cancellable biproduct of a random C."""
    m, n = t.dim(), t.dim()
    yield from _axioms(self_cancellable_biproduct(t.mat("C", n, m)))


@law("biproduct-scaled")
def _(t: Trial):
    """Biproduct equations for a random biproduct scaled by id_k."""
    yield from _axioms(scale_biproduct(t.random_biproduct(t.dim(), t.dim()), t.k()))


@law("junc-cancellation")
def _(t: Trial):
    """[A|B].i1 = A and [A|B].i2 = B."""
    m, n, p = t.dim(), t.dim(), t.dim()
    bp = t.std(m, n)
    a, b = t.mat("A", p, m), t.mat("B", p, n)
    ab = junc(bp, a, b)
    yield "[A|B].i1 = A", compose(ab, bp.i1), a
    yield "[A|B].i2 = B", compose(ab, bp.i2), b


@law("split-cancellation")
def _(t: Trial):
    """pi1.[C;D] = C and pi2.[C;D] = D."""
    m, n, p = t.dim(), t.dim(), t.dim()
    bp = t.std(m, n)
    c, d = t.mat("C", m, p), t.mat("D", n, p)
    cd = split(bp, c, d)
    yield "pi1.[C;D] = C", compose(bp.pi1, cd), c
    yield "pi2.[C;D] = D", compose(bp.pi2, cd), d


@law("junc-fusion")
def _(t: Trial):
    """C.[A|B] = [C.A | C.B]."""
    m, n, p, q = t.dim(), t.dim(), t.dim(), t.dim()
    bp = t.std(m, n)
    a, b, c = t.mat("A", p, m), t.mat("B", p, n), t.mat("C", q, p)
    yield "C.[A|B] = [C.A|C.B]", compose(c, junc(bp, a, b)), junc(bp, compose(c, a), compose(c, b))


@law("split-fusion")
def _(t: Trial):
    """[A;B].C = [A.C ; B.C]."""
    m, n, p, q = t.dim(), t.dim(), t.dim(), t.dim()
    bp = t.std(m, n)
    a, b, c = t.mat("A", m, p), t.mat("B", n, p), t.mat("C", p, q)
    yield "[A;B].C = [A.C;B.C]", compose(split(bp, a, b), c), split(bp, compose(a, c), compose(b, c))


@law("exchange")
def _(t: Trial):
    """[[A|B];[C|D]] = [[A;C]|[B;D]]."""
    m, n, p, q = t.dim(), t.dim(), t.dim(), t.dim()
    cols, rows = t.std(m, n), t.std(p, q)
    a, b = t.mat("A", p, m), t.mat("B", p, n)
    c, d = t.mat("C", q, m), t.mat("D", q, n)
    lhs = split(rows, junc(cols, a, b), junc(cols, c, d))
    rhs = junc(cols, split(rows, a, c), split(rows, b, d))
    yield "[[A|B];[C|D]] = [[A;C]|[B;D]]", lhs, rhs


@law("reflection")
def _(t: Trial):
    """[i1|i2] = id = [pi1;pi2], and junc/split agree with their definitions."""
    m, n = t.dim(), t.dim()
    bp = t.std(m, n)
    s = identity(m + n, t.field)
    yield "[i1|i2] = id", junc(bp, bp.i1, bp.i2), s
    yield "[pi1;pi2] = id", split(bp, bp.pi1, bp.pi2), s
    p = t.dim()
    a, b = t.mat("A", p, m), t.mat("B", p, n)
    yield "[A|B] = A.pi1 + B.pi2", junc(bp, a, b), bp_mod.junc_def(bp, a, b)
    c, d = t.mat("C", m, p), t.mat("D", n, p)
    yield "[C;D] = i1.C + i2.D", split(bp, c, d), bp_mod.split_def(bp, c, d)


@law("blocked-addition")
def _(t: Trial):
    """[A|B] + [C|D] = [A+C | B+D], and the same for split."""
    m, n, p = t.dim(), t.dim(), t.dim()
    bp = t.std(m, n)
    a, b, c, d = t.mat("A", p, m), t.mat("B", p, n), t.mat("C", p, m), t.mat("D", p, n)
    yield "[A|B]+[C|D] = [A+C|B+D]", add(junc(bp, a, b), junc(bp, c, d)), junc(bp, add(a, c), add(b, d))
    e, f = t.mat("E", m, p), t.mat("F", n, p)
    g, h = t.mat("G", m, p), t.mat("H", n, p)
    yield "[E;F]+[G;H] = [E+G;F+H]", add(split(bp, e, f), split(bp, g, h)), split(bp, add(e, g), add(f, h))


@law("divide-and-conquer")
def _(t: Trial):
    """[A|B].[C;D] = A.C + B.D, and the recursive product agrees with compose."""
    m, n, p, q = t.dim(), t.dim(), t.dim(), t.dim()
    a, b = t.mat("A", p, m), t.mat("B", p, n)
    c, d = t.mat("C", m, q), t.mat("D", n, q)
    yield "[A|B].[C;D] = A.C + B.D", compose(std_junc(a, b), std_split(c, d)), add(compose(a, c), compose(b, d))
    x, y = std_junc(a, b), std_split(c, d)
    yield "mmm_dc = compose", mmm_dc(x, y), compose(x, y)


@law("blockwise-mmm")
def _(t: Trial):
    """[[R,S],[T,U]].[[A,B],[C,D]] computed by blocks."""
    r1, r2, k1, k2, c1, c2 = (t.dim() for _ in range(6))
    r, s, tt, u = t.mat("R", r1, k1), t.mat("S", r1, k2), t.mat("T", r2, k1), t.mat("U", r2, k2)
    a, b, c, d = t.mat("A", k1, c1), t.mat("B", k1, c2), t.mat("C", k2, c1), t.mat("D", k2, c2)
    w, x, y, z = mmm_blocked_2x2(r, s, tt, u, a, b, c, d)
    yield "blocked 2x2 product", block(w, x, y, z), compose(block(r, s, tt, u), block(a, b, c, d))


@law("mmm-naive-orders")
def _(t: Trial):
    """The naive triple loop agrees with compose in every loop order."""
    m, n, p = t.dim(), t.dim(), t.dim()
    a, b = t.mat("A", m, n), t.mat("B", n, p)
    ref = compose(a, b)
    for order in LOOP_ORDERS:
        yield f"naive {order} = compose", mmm_naive(a, b, order), ref


# -- Kronecker product and direct sum --------------------------------------------

@law("kron-assoc")
def _(t: Trial):
    """(A x B) x C = A x (B x C)."""
    a = t.mat("A", t.dim(), t.dim())
    b = t.mat("B", t.dim(), t.dim())
    c = t.mat("C", t.dim(1), t.dim(1))
    yield "(AxB)xC = Ax(BxC)", kron(kron(a, b), c), kron(a, kron(b, c))


@law("kron-functor")
def _(t: Trial):
    """(A x B).(C x D) = (A.C) x (B.D), and id x id = id."""
    m, n, p, q, r, s = (t.dim() for _ in range(6))
    a, c = t.mat("A", m, n), t.mat("C", n, p)
    b, d = t.mat("B", q, r), t.mat("D", r, s)
    yield "(AxB).(CxD) = (A.C)x(B.D)", compose(kron(a, b), kron(c, d)), kron(compose(a, c), compose(b, d))
    yield "id x id = id", kron(identity(m, t.field), identity(q, t.field)), identity(m * q, t.field)


@law("kron-distributes")
def _(t: Trial):
    """A x (B + C) = AxB + AxC and (B + C) x A = BxA + CxA."""
    a = t.mat("A", t.dim(), t.dim())
    m, n = t.dim(), t.dim()
    b, c = t.mat("B", m, n), t.mat("C", m, n)
    yield "Ax(B+C) = AxB + AxC", kron(a, add(b, c)), add(kron(a, b), kron(a, c))
    yield "(B+C)xA = BxA + CxA", kron(add(b, c), a), add(kron(b, a), kron(c, a))


@law("kron-scaled-biproduct")
def _(t: Trial):
    """pi_j x id_k and i_j x id_k are the components of the standard biproduct of mk, nk."""
    m, n, k = t.dim(), t.dim(), t.k()
    scaled = scale_biproduct(standard_biproduct(m, n, t.field), k)
    target = standard_biproduct(m * k, n * k, t.field)
    for name in ("pi1", "pi2", "i1", "i2"):
        yield f"{name} x id_k", getattr(scaled, name), getattr(target, name)


@law("kron-junc-fusion")
def _(t: Trial):
    """[A|B] x C = [AxC | BxC]."""
    p, m, n = t.dim(), t.dim(), t.dim()
    a, b = t.mat("A", p, m), t.mat("B", p, n)
    c = t.mat("C", t.dim(), t.dim())
    yield "[A|B]xC = [AxC|BxC]", kron(std_junc(a, b), c), std_junc(kron(a, c), kron(b, c))


@law("kron-split-fusion")
def _(t: Trial):
    """[A;B] x C = [AxC ; BxC]."""
    p, m, n = t.dim(), t.dim(), t.dim()
    a, b = t.mat("A", m, p), t.mat("B", n, p)
    c = t.mat("C", t.dim(), t.dim())
    yield "[A;B]xC = [AxC;BxC]", kron(std_split(a, b), c), std_split(kron(a, c), kron(b, c))


@law("direct-sum-absorption")
def _(t: Trial):
    """[A|B].(C (+) D) = [A.C | B.D], and id_2 x A = A (+) A."""
    p, m, n, q, r = (t.dim() for _ in range(5))
    a, b = t.mat("A", p, m), t.mat("B", p, n)
    c, d = t.mat("C", m, q), t.mat("D", n, r)
    yield "[A|B].(C+D) = [A.C|B.D]", compose(std_junc(a, b), direct_sum(c, d)), std_junc(compose(a, c), compose(b, d))
    yield "id2 x A = A (+) A", kron(identity(2, t.field), a), direct_sum(a, a)


@law("direct-sum-naturality")
def _(t: Trial):
    """(A (+) B).i1 = i1.A and (A (+) B).i2 = i2.B."""
    m, n, p, q = t.dim(), t.dim(), t.dim(), t.dim()
    a, b = t.mat("A", m, n), t.mat("B", p, q)
    src, tgt = t.std(n, q), t.std(m, p)
    s = direct_sum(a, b)
    yield "(A+B).i1 = i1.A", compose(s, src.i1), compose(tgt.i1, a)
    yield "(A+B).i2 = i2.B", compose(s, src.i2), compose(tgt.i2, b)


@law("khatri-rao")
def _(t: Trial):
    """! fork A = A = A fork !, and A x B = (A.p1) fork (B.p2)."""
    m, n = t.dim(), t.dim()
    a = t.mat("A", m, n)
    yield "! fork A = A", khatri_rao(bang(n, t.field), a), a
    yield "A fork ! = A", khatri_rao(a, bang(n, t.field)), a
    p, q = t.dim(), t.dim()
    b = t.mat("B", p, q)
    p1, p2 = kr_projections(n, q, t.field)
    yield "AxB = (A.p1) fork (B.p2)", kron(a, b), khatri_rao(compose(a, p1), compose(b, p2))


# -- vectorization ----------------------------------------------------------------

@law("vec-universal")
def _(t: Trial):
    """X = vec_k A iff A = eps_k.(id_k x X), checked in both directions."""
    k, n, m = t.k(), t.dim(), t.dim()
    a = t.mat("A", n, k * m)
    idk = identity(k, t.field)
    yield "A = eps.(id x vec A)", compose(epsilon(k, n, t.field), kron(idk, vec(k, a))), a
    x = t.mat("X", k * n, m)
    yield "X = vec(eps.(id x X))", vec(k, compose(epsilon(k, n, t.field), kron(idk, x))), x


@law("vec-closed-forms")
def _(t: Trial):
    """vec_k A = (id_k x A).eta_k and unvec_k X = eps_k.(id_k x X)."""
    k, n, m = t.k(), t.dim(), t.dim()
    idk = identity(k, t.field)
    a = t.mat("A", n, k * m)
    yield "vec A = (id x A).eta", vec(k, a), compose(kron(idk, a), eta(k, m, t.field))
    x = t.mat("X", k * n, m)
    yield "unvec X = eps.(id x X)", unvec(k, x), compose(epsilon(k, n, t.field), kron(idk, x))
    yield "unvec (vec A) = A", unvec(k, vec(k, a)), a
    yield "vec (unvec X) = X", vec(k, unvec(k, x)), x


@law("vec-linearity")
def _(t: Trial):
    """vec(A + B) = vec A + vec B."""
    k, n, m = t.k(), t.dim(), t.dim()
    a, b = t.mat("A", n, k * m), t.mat("B", n, k * m)
    yield "vec(A+B) = vec A + vec B", vec(k, add(a, b)), add(vec(k, a), vec(k, b))


@law("roth")
def _(t: Trial):
    """vec_m(A.B.C) = (C^T x A).vec_k B."""
    j, n, k, m = t.dim(), t.dim(), t.dim(1), t.dim(1)
    a, b, c = t.mat("A", j, n), t.mat("B", n, k), t.mat("C", k, m)
    yield "vec(A.B.C) = (C^T x A).vec B", vec(m, compose(compose(a, b), c)), compose(kron(transpose(c), a), vec(k, b))


@law("vec-of-composition")
def _(t: Trial):
    """vec_k(B.C) = (id_k x B).vec_k C and vec_m(C.B) = (B^T x id_n).vec_k C."""
    k, n, m, j = t.k(), t.dim(), t.dim(), t.dim()
    b, c = t.mat("B", j, n), t.mat("C", n, k * m)
    yield "vec(B.C) = (id x B).vec C", vec(k, compose(b, c)), compose(kron(identity(k, t.field), b), vec(k, c))
    mm = t.dim(1)
    c2, b2 = t.mat("C'", n, k), t.mat("B'", k, mm)
    yield "vec(C.B) = (B^T x id).vec C", vec(mm, compose(c2, b2)), compose(kron(transpose(b2), identity(n, t.field)), vec(k, c2))


@law("blocked-transposition")
def _(t: Trial):
    """vec_{k+k'}[A|B] = [vec_k A ; vec_k' B]."""
    k, k2, n, m = t.k(), t.k(), t.dim(), t.dim()
    a, b = t.mat("A", n, k * m), t.mat("B", n, k2 * m)
    yield "vec[A|B] = [vec A; vec B]", vec(k + k2, std_junc(a, b)), std_split(vec(k, a), vec(k2, b))


@law("converse-duality")
def _(t: Trial):
    """(vec_k A)^T = unvec_k(A^T), and vec_k(A^T) = (A x id_m).eta_m row-major."""
    k, n, m = t.k(), t.dim(), t.dim()
    a = t.mat("A", n, k * m)
    yield "(vec A)^T = unvec(A^T)", transpose(vec(k, a)), unvec(k, transpose(a))
    mm = t.dim(1)
    b = t.mat("B", k, mm)
    yield "vec(B^T) = (B x id).eta", vec(k, transpose(b)), compose(kron(b, identity(mm, t.field)), eta(mm, 1, t.field))


@law("epsilon-reflection")
def _(t: Trial):
    """vec_k eps_k = id and eps_k = unvec_k id."""
    k, n = t.k(), t.dim()
    e = epsilon(k, n, t.field)
    yield "vec eps = id", vec(k, e), identity(k * n, t.field)
    yield "eps = unvec id", e, unvec(k, identity(k * n, t.field))


@law("epsilon-kron-id")
def _(t: Trial):
    """eps_k(n) x id_j = eps_k(n*j)."""
    k, n, j = t.k(), t.dim(), t.dim()
    yield "eps x id = eps", kron(epsilon(k, n, t.field), identity(j, t.field)), epsilon(k, n * j, t.field)


@law("commutation-transpose")
def _(t: Trial):
    """K_nm . vec_m A = vec_n A^T."""
    n, m = t.dim(1), t.dim(1)
    a = t.mat("A", n, m)
    yield "K.vec A = vec A^T", compose(commutation(n, m, t.field), vec(m, a)), vec(n, transpose(a))


@law("commutation-naturality")
def _(t: Trial):
    """K_qp.(A x B) = (B x A).K_ts for A : p x s, B : q x t."""
    p, s, q, tt = (t.dim(1) for _ in range(4))
    a, b = t.mat("A", p, s), t.mat("B", q, tt)
    f = t.field
    yield "K.(AxB) = (BxA).K", compose(commutation(q, p, f), kron(a, b)), compose(kron(b, a), commutation(tt, s, f))


@law("commutation-unit")
def _(t: Trial):
    """K_nn . eta_n = eta_n."""
    n = t.dim(1)
    e = eta(n, 1, t.field)
    yield "K.eta = eta", compose(commutation(n, n, t.field), e), e


# -- runner -------------------------------------------------------------------------

def trial_rng(law_name: str, seed: int, index: int) -> random.Random:
    return random.Random(f"{law_name}:{seed}:{index}")


def run_law(law: Law | str, trials: int = 200, seed: int = 0, max_dim: int = 6,
            max_k: int = 4, field: Field = RATIONAL, mutation: str | None = None,
            first: int = 0) -> LawReport:
    """Check ``law`` on trials ``first .. first+trials-1``."""
    if isinstance(law, str):
        law = LAWS[law]
    if mutation is not None and mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}; choose from {MUTATIONS}")
    report = LawReport(law.name, trials=trials)
    start = time.perf_counter()
    for i in range(first, first + trials):
        t = Trial(trial_rng(law.name, seed, i), max_dim, max_k, field, mutation)
        for label, lhs, rhs in law.check(t):
            if not equals(lhs, rhs):
                mats = dict(t.inputs)
                mats.update(lhs=lhs, rhs=rhs)
                report.failures.append(Failure(f"{label} [trial {i}]", seed, mats))
                break
    report.elapsed = time.perf_counter() - start
    return report


def _run_named(args):
    name, kwargs = args
    return run_law(name, **kwargs)


def run_laws(names: Iterable[str] | None = None, jobs: int = 1, **kwargs) -> list[LawReport]:
    """Run the named laws (all by default), optionally across worker processes.

    Reports come back in registry order whatever the scheduling.
    """
    names = list(LAWS) if names is None else list(names)
    unknown = [n for n in names if n not in LAWS]
    if unknown:
        raise KeyError(f"unknown laws: {', '.join(unknown)}")
    if jobs <= 1:
        return [run_law(n, **kwargs) for n in names]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_named, [(n, kwargs) for n in names]))
