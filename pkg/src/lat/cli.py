"""``lat``: command-line driver for the matrix algebra toolkit.

Exit codes: 0 success, 1 domain error (shape, type, law failure),
2 parse error (expression, matrix or environment file), 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import blocked, laws
from .biproduct import (
    check_biproduct, scale_biproduct, self_cancellable_biproduct, standard_biproduct,
    swap_biproduct,
)
from .errors import LatError, MatrixFormatError
from .matcore import FLOAT64, RATIONAL, Float64Field, compose, equals, format_matrix, read_matrix
from .typelang import (
    EnvFormatError, InferenceError, ParseError, bind_shapes, evaluate, infer, load_env,
    parse_expr,
)
from .vectorize import (
    commutation, commutation_factored, commutation_sum, epsilon, eta, mmm_vec, unvec, vec,
    vec_mmm,
)

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE, EXIT_IO = 0, 1, 2, 3

MMM_ALGOS = {
    "dc": blocked.mmm_dc,
    "naive": blocked.mmm_naive,
    "blocked": blocked.mmm_blocked,
    "vec": mmm_vec,
}

COMMUTATION = {"closed": commutation, "factored": commutation_factored, "sum": commutation_sum}


def _field(args):
    if args.scalar == "f64":
        return Float64Field(args.tol) if args.tol is not None else FLOAT64
    return RATIONAL


def _read(args, path):
    return read_matrix(path, _field(args))


def _emit(args, m) -> None:
    text = format_matrix(m)
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


# -- commands ----------------------------------------------------------------------

def cmd_typecheck(args) -> int:
    text = Path(args.expr).read_text(encoding="utf-8")
    types, matrices = load_env(args.env, _field(args))
    e = parse_expr(text)
    tyenv, extra = bind_shapes(types, matrices)
    typing = infer(e, tyenv, text, extra)
    print(f"{typing.type}    ({typing.type.arrow()})")
    for name, d in sorted(typing.subst.items()):
        origin = typing.fresh.get(name)
        note = f"    (fresh, from {origin.describe(text)})" if origin else ""
        print(f"  {name} = {d}{note}")
    return EXIT_OK


def cmd_eval(args) -> int:
    text = Path(args.expr).read_text(encoding="utf-8")
    types, matrices = load_env(args.env, _field(args))
    missing = sorted(set(types) - set(matrices))
    if missing:
        raise EnvFormatError(f"no matrix file given for {', '.join(missing)}")
    _emit(args, evaluate(parse_expr(text), matrices, types, text, _field(args)))
    return EXIT_OK


def cmd_laws(args) -> int:
    if args.list:
        for name, law in laws.LAWS.items():
            print(f"{name:28} {law.doc}")
        return EXIT_OK
    if args.trials < 1:
        raise LatError("--trials must be at least 1")
    reports = laws.run_laws(
        args.law or None, jobs=args.jobs, trials=args.trials, seed=args.seed,
        max_dim=args.max_dim, max_k=args.max_k, field=_field(args), mutation=args.mutate,
    )
    for r in reports:
        print(r.summary())
        for f in r.failures[: args.show]:
            print("    " + f.describe().replace("\n", "\n    "))
    failed = sum(not r.passed for r in reports)
    total = sum(r.elapsed for r in reports)
    print(f"{len(reports) - failed}/{len(reports)} laws passed in {total:.2f}s")
    return EXIT_DOMAIN if failed else EXIT_OK


def cmd_mmm(args) -> int:
    a, b = _read(args, args.a), _read(args, args.b)
    if args.algo == "naive":
        product = blocked.mmm_naive(a, b, args.order)
    else:
        product = MMM_ALGOS[args.algo](a, b)
    _emit(args, product)
    if equals(product, compose(a, b)):
        print(f"# {args.algo}: agrees with oracle", file=sys.stderr)
        return EXIT_OK
    print(f"# {args.algo}: DISAGREES with oracle", file=sys.stderr)
    return EXIT_DOMAIN


def cmd_gje(args) -> int:
    m = _read(args, args.matrix)
    res = blocked.gje(m)
    _emit(args, res.result)
    if args.witness:
        print("# witness", file=sys.stderr)
        sys.stdout.write(format_matrix(res.witness))
        sys.stdout.flush()
    print(f"# pivots in columns {res.pivot_cols} (rank {len(res.pivot_cols)})", file=sys.stderr)
    return EXIT_OK


def cmd_emit(args) -> int:
    f = _field(args)
    if args.which == "eps":
        m = epsilon(args.a, args.b, f)
    elif args.which == "eta":
        m = eta(args.a, args.b, f)
    else:
        m = commutation(args.a, args.b, f)
    _emit(args, m)
    return EXIT_OK


def cmd_commutation(args) -> int:
    _emit(args, COMMUTATION[args.method](args.n, args.m, _field(args)))
    return EXIT_OK


def cmd_vec(args) -> int:
    _emit(args, vec(args.k, _read(args, args.matrix)))
    return EXIT_OK


def cmd_unvec(args) -> int:
    _emit(args, unvec(args.k, _read(args, args.matrix)))
    return EXIT_OK


def cmd_vecmmm(args) -> int:
    _emit(args, vec_mmm(args.n, _read(args, args.vb), _read(args, args.vc)))
    return EXIT_OK


def cmd_biproduct(args) -> int:
    f = _field(args)
    if args.kind == "self-cancellable":
        if not args.c:
            raise LatError("self-cancellable biproducts need --c MATRIX (n x m)")
        bp = self_cancellable_biproduct(_read(args, args.c))
    else:
        bp = standard_biproduct(args.m, args.n, f)
        if args.kind == "swap":
            bp = swap_biproduct(standard_biproduct(args.n, args.m, f))
    if args.scale > 1:
        bp = scale_biproduct(bp, args.scale)
    report = check_biproduct(bp)
    print(report.summary())
    for failure in report.failures:
        print("    " + failure.describe().replace("\n", "\n    "))
    return EXIT_OK if report.passed else EXIT_DOMAIN


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lat", description="Typed linear algebra with biproducts.")
    p.add_argument("--scalar", choices=("rational", "f64"), default="rational",
                   help="scalar field for matrix entries (default: exact rationals)")
    p.add_argument("--tol", type=float, default=None,
                   help="absolute tolerance for f64 comparisons (default 1e-9)")
    sub = p.add_subparsers(dest="command", required=True)

    def out(sp):
        sp.add_argument("-o", "--output", help="write the matrix here instead of stdout")

    sp = sub.add_parser("typecheck", help="infer the principal type of an expression")
    sp.add_argument("expr", help="file holding the expression")
    sp.add_argument("env", help="environment file: lines 'name rows cols [matrix-file]'")
    sp.set_defaults(func=cmd_typecheck)

    sp = sub.add_parser("eval", help="evaluate an expression against matrix files")
    sp.add_argument("expr")
    sp.add_argument("env")
    out(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("laws", help="check the named algebraic laws on random instances")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-dim", type=int, default=6)
    sp.add_argument("--max-k", type=int, default=4, help="largest thinning/scaling factor")
    sp.add_argument("--law", action="append", metavar="NAME", help="run only this law (repeatable)")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.add_argument("--mutate", choices=laws.MUTATIONS, help="inject a deliberate fault")
    sp.add_argument("--show", type=int, default=1, help="counterexamples printed per failing law")
    sp.add_argument("--list", action="store_true", help="list the laws and exit")
    sp.set_defaults(func=cmd_laws)

    sp = sub.add_parser("mmm", help="multiply two matrix files and cross-check with compose")
    sp.add_argument("--algo", choices=tuple(MMM_ALGOS), default="dc")
    sp.add_argument("--order", choices=blocked.LOOP_ORDERS, default="jkl",
                    help="loop order for --algo naive")
    sp.add_argument("a")
    sp.add_argument("b")
    out(sp)
    sp.set_defaults(func=cmd_mmm)

    sp = sub.add_parser("gje", help="blocked Gauss-Jordan elimination to row-echelon form")
    sp.add_argument("matrix")
    sp.add_argument("--witness", action="store_true",
                    help="also print E with result = E . input")
    out(sp)
    sp.set_defaults(func=cmd_gje)

    sp = sub.add_parser("emit", help="write eps k m, eta k m or K n m")
    sp.add_argument("which", choices=("eps", "eta", "K"))
    sp.add_argument("a", type=int)
    sp.add_argument("b", type=int)
    out(sp)
    sp.set_defaults(func=cmd_emit)

    sp = sub.add_parser("commutation", help="commutation matrix K n m")
    sp.add_argument("n", type=int)
    sp.add_argument("m", type=int)
    sp.add_argument("--method", choices=tuple(COMMUTATION), default="closed")
    out(sp)
    sp.set_defaults(func=cmd_commutation)

    for name, fn, what in (("vec", cmd_vec, "vectorize"), ("unvec", cmd_unvec, "devectorize")):
        sp = sub.add_parser(name, help=f"{what} with thinning factor k")
        sp.add_argument("k", type=int)
        sp.add_argument("matrix")
        out(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("vecmmm", help="product of two vectorized matrices")
    sp.add_argument("n", type=int, help="shared dimension")
    sp.add_argument("vb")
    sp.add_argument("vc")
    out(sp)
    sp.set_defaults(func=cmd_vecmmm)

    sp = sub.add_parser("check-biproduct", help="check the biproduct equations")
    sp.add_argument("kind", choices=("standard", "swap", "self-cancellable"))
    sp.add_argument("m", type=int, nargs="?", default=1)
    sp.add_argument("n", type=int, nargs="?", default=1)
    sp.add_argument("--c", help="matrix file for the self-cancellable biproduct")
    sp.add_argument("--scale", type=int, default=1, help="Kronecker every component with id_k")
    sp.set_defaults(func=cmd_biproduct)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        if exc.pointer():
            print(exc.pointer(), file=sys.stderr)
        return EXIT_PARSE
    except (MatrixFormatError, EnvFormatError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InferenceError as exc:
        print(f"type error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except LatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
