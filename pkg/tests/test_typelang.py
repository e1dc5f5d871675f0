import random

import pytest
from hypothesis import given, strategies as st

from conftest import rand_matrix
from termgen import TermGen
from lat.errors import ShapeMismatch
from lat.matcore import compose, from_rows, transpose
from lat.typelang import (
    ArrowType, BinOp, Builtin, Dim, ParseError, Transpose, TypeMismatch, UnboundName, Unresolved,
    Var, Vec, evaluate, infer, parse_env, parse_expr, pretty, shape_type,
)
from lat.typelang.dims import cancel
from lat.vectorize import epsilon, vec

A, B, C, D = Var("A"), Var("B"), Var("C"), Var("D")


# -- dimensions ------------------------------------------------------------------

def test_dim_normal_form():
    k, m = Dim.var("k"), Dim.var("m")
    assert k * m + m == m * (k + 1)
    assert (k + 1) * (k + 1) == k * k + 2 * k + 1
    assert str(k * k * m + 2 * k * m + m) == "k^2*m + 2*k*m + m"
    assert (k - k).is_zero and Dim.const(3).value == 3
    assert Dim.const(0) == 0


def test_cancel_common_factor():
    k, x = Dim.var("k"), Dim.var("x")
    assert cancel(k - k * x) == Dim.const(1) - x or cancel(k - k * x) == x - 1
    assert cancel(Dim.const(4) - 2 * x) in (2 - x, x - 2)


# -- parser ------------------------------------------------------------------------

def test_parse_examples():
    assert parse_expr("A . B") == BinOp("compose", A, B)
    assert parse_expr("[A | B] . [C ; D]") == BinOp(
        "compose", BinOp("junc", A, B), BinOp("split", C, D))
    assert parse_expr("A . B + C") == BinOp("add", BinOp("compose", A, B), C)


def test_precedence_ladder():
    # (+) loosest, then +, then x/.*/fork, then ., then ^T
    e = parse_expr("A (+) B + C x D . A^T")
    assert e == BinOp("dsum", A, BinOp("add", B, BinOp("kron", C, BinOp("compose", D, Transpose(A)))))
    assert parse_expr("A x B .* C") == BinOp("hadamard", BinOp("kron", A, B), C)
    assert parse_expr("A^T^T") == Transpose(Transpose(A))


def test_builtins_and_vec():
    assert parse_expr("vec k B") == Vec("k", B)
    assert parse_expr("eps 2 2") == Builtin("eps", (2, 2))
    assert parse_expr("eps(2, 2)") == parse_expr("eps 2 2")
    assert parse_expr("K(n,m) . id(6)") == BinOp(
        "compose", Builtin("K", ("n", "m")), Builtin("id", (6,)))
    assert parse_expr("vec 2 id 3") == Vec(2, Builtin("id", (3,)))
    assert parse_expr("(C^T x A) . vec k B") == BinOp(
        "compose", BinOp("kron", Transpose(C), A), Vec("k", B))


def test_spans_point_into_source():
    text = "[A | B] . C"
    e = parse_expr(text)
    assert text[slice(*e.span)] == text
    assert text[slice(*e.left.span)] == "[A | B]"
    assert text[slice(*e.left.right.span)] == "B"


@pytest.mark.parametrize("text,pos", [("[A | B", 6), ("A . ", 3), ("A $ B", 2), ("id", 2), ("(A", 2), ("eps(2)", 5)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.pos == pos


@given(st.integers(0, 2**32))
def test_pretty_round_trip(seed):
    rng = random.Random(seed)
    g = TermGen(rng)
    e = g.term(rng.randint(1, 4), rng.randint(1, 4), rng.randint(0, 4))
    assert parse_expr(pretty(e)) == e


# -- inference -----------------------------------------------------------------------

def test_junc_type():
    t = infer(parse_expr("[A | B]"), {"A": shape_type(2, 2), "B": shape_type(2, 1)})
    assert t.type == ArrowType(Dim.const(2), Dim.const(3))


def test_ill_typed_junc_reports_both_targets():
    with pytest.raises(TypeMismatch) as info:
        infer(parse_expr("[A | B]"), {"A": shape_type(2, 2), "B": shape_type(3, 2)})
    err = info.value
    assert {err.left, err.right} == {Dim.const(2), Dim.const(3)}
    assert "targets 2 ≠ 3" in str(err)
    assert err.constraint.origin.rule == "junc"
    assert len(err.constraint.origin.sides) == 2


def test_roth_principal_type():
    env = {"A": shape_type("j", "n"), "B": shape_type("n", "k"), "C": shape_type("k", "m")}
    t = infer(parse_expr("(C^T x A) . vec k B"), env)
    assert t.type == ArrowType(Dim.var("j") * Dim.var("m"), Dim.const(1))
    assert list(t.subst.values()) == [Dim.const(1)]
    (fresh,) = t.fresh
    assert t.fresh[fresh].rule == "vec"


def test_epsilon_type():
    t = infer(parse_expr("eps k m"), {})
    k, m = Dim.var("k"), Dim.var("m")
    assert t.type == ArrowType(m, k * k * m)


def test_vec_with_indivisible_ground_columns():
    with pytest.raises(TypeMismatch):
        infer(parse_expr("vec 2 A"), {"A": shape_type(2, 3)})


def test_unresolved_is_reported_not_guessed():
    # a^2 = b^2 has the single positive solution a = b, but the solver only
    # isolates variables of degree one and must not guess
    env = {"A": shape_type("a", 1), "B": shape_type("b", 1)}
    with pytest.raises(Unresolved) as info:
        infer(parse_expr("A x A + B x B"), env)
    assert info.value.residual


def test_common_factor_cancels_to_linear():
    env = {"A": shape_type("a", "b"), "B": shape_type("c", "d")}
    t = infer(parse_expr("A x B + A x A"), env)
    # either orientation of c = a, d = b is principal
    assert len(t.subst) == 2
    a, b = Dim.var("a").substitute(t.subst), Dim.var("b").substitute(t.subst)
    assert t.type == ArrowType(a * a, b * b)


def test_unbound_name():
    with pytest.raises(UnboundName):
        infer(parse_expr("A . Z"), {"A": shape_type(1, 1)})


def test_compose_solves_symbolic_inner_dimension():
    env = {"A": shape_type("p", "q"), "B": shape_type(3, 4)}
    t = infer(parse_expr("A . B"), env)
    assert t.type == ArrowType(Dim.var("p"), Dim.const(4))
    assert t.subst == {"q": Dim.const(3)}


# -- evaluation -------------------------------------------------------------------

def test_eval_junc_worked_example():
    env = {"A": from_rows([[1, 2], [4, 5]]), "B": from_rows([[3], [6]])}
    assert evaluate(parse_expr("[A | B]"), env) == from_rows([[1, 2, 3], [4, 5, 6]])


def test_eval_epsilon():
    assert evaluate(parse_expr("eps 2 2"), {}) == epsilon(2, 2)
    assert evaluate(parse_expr("eps(2,2)"), {}) == epsilon(2, 2)


@pytest.mark.parametrize("seed", range(5))
def test_eval_commutation_transposes(seed):
    a = rand_matrix(random.Random(seed), 2, 2)
    lhs = evaluate(parse_expr("K(2,2) . vec 2 A"), {"A": a})
    assert lhs == evaluate(parse_expr("vec 2 (A^T)"), {"A": a}) == vec(2, transpose(a))


def test_eval_roth_with_symbolic_declarations():
    rng = random.Random(5)
    a, b, c = rand_matrix(rng, 2, 3), rand_matrix(rng, 3, 4), rand_matrix(rng, 4, 2)
    types = {"A": shape_type("j", "n"), "B": shape_type("n", "k"), "C": shape_type("k", "m")}
    out = evaluate(parse_expr("(C^T x A) . vec k B"), {"A": a, "B": b, "C": c}, types)
    assert out == vec(2, compose(compose(a, b), c))


def test_env_file_format(tmp_path):
    entries = parse_env("# comment\nA j n a.mat\nB ? 2\n", tmp_path)
    assert [e.name for e in entries] == ["A", "B"]
    assert entries[0].type == shape_type("j", "n")
    assert entries[0].path == tmp_path / "a.mat"
    assert entries[1].type.source == Dim.const(2) and not entries[1].type.target.is_const


def fuzz_once(rng):
    g = TermGen(rng)
    rows, cols = rng.randint(1, 4), rng.randint(1, 4)
    e = g.term(rows, cols, rng.randint(1, 4))
    # ground environment: inferred type is exactly the evaluated shape
    ground = {n: shape_type(m.rows, m.cols) for n, m in g.matrices.items()}
    assert infer(e, ground).type == shape_type(rows, cols)
    # symbolic declarations tied to the bound shapes
    out = evaluate(e, g.matrices, g.types)
    assert out.shape == (rows, cols)


@pytest.mark.parametrize("seed", range(100))
def test_soundness_fuzz(seed):
    try:
        fuzz_once(random.Random(seed))
    except ShapeMismatch as exc:  # pragma: no cover - would be a checker bug
        pytest.fail(f"well-typed term raised a shape error: {exc}")
