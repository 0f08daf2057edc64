"""测试指数程序的符号表达式与批量求值"""
import numpy as np

from neostate.algebra import FiniteAbelianGroup, cyclic_group
from neostate.statesum import ExponentProgram, Term
from neostate.statesum.program import a0, evaluate_g, evaluate_h, g, grid_bindings, h, hsum
from neostate.structure import SemiWeakStructure, br_tau


def test_hexpr_cancellation():
    x, y = h("x"), h("y")
    assert (x + y - x).terms == y.terms
    assert (x - x).is_zero()
    assert str(2 * x) == "2*x"
    assert str(hsum()) == "0"
    assert (x * 3 - x * 3).is_zero()


def test_hexpr_is_order_independent():
    x, y = h("x"), h("y")
    assert x + y == y + x
    assert hash(x + y) == hash(y + x)


def test_alpha0_atom_string():
    assert str(a0(g("g1"), g("g2", "g3"), g())) == "a0(g1,g2.g3,1)"


def test_grid_bindings_cover_product():
    b = grid_bindings([("a", 2), ("b", 3)])
    assert len(b["a"]) == 6
    assert {(int(x), int(y)) for x, y in zip(b["a"], b["b"])} == {
        (x, y) for x in range(2) for y in range(3)
    }
    assert grid_bindings([]) == {}


def test_evaluate_tau_program_on_grid():
    S = br_tau(3, 1)
    prog = ExponentProgram((Term("tau", 1, (h("x"), h("y"))),))
    b = grid_bindings([("x", 3), ("y", 3)])
    values = prog.evaluate(S, b)
    assert values.tolist() == ((b["x"] * b["y"]) % 3).tolist()
    assert prog.inverse().evaluate(S, b).tolist() == ((-b["x"] * b["y"]) % 3).tolist()


def test_h_arguments_are_added_in_h():
    S = br_tau(3, 1)
    # τ(x + y, x) = x·(x + y)
    prog = ExponentProgram((Term("tau", 1, (h("x") + h("y"), h("x"))),))
    b = grid_bindings([("x", 3), ("y", 3)])
    expected = (b["x"] * (b["x"] + b["y"])) % 3
    assert prog.evaluate(S, b).tolist() == expected.tolist()


def test_table_override_and_modulus():
    S = br_tau(3, 1)
    mu = np.zeros((3, 3), dtype=np.int64)
    mu[1, 2] = 5
    prog = ExponentProgram((Term("mu", 1, (h("x"), h("y"))),))
    out = prog.evaluate(S, {"x": np.array([1, 2]), "y": np.array([2, 1])}, tables={"mu": mu}, modulus=6)
    assert out.tolist() == [5, 0]


def test_g_products_and_alpha0():
    G, H = cyclic_group(3), FiniteAbelianGroup((3,))
    alpha0 = np.zeros((3, 3, 3), dtype=np.int64)
    alpha0[1, 2, 1] = 2
    S = SemiWeakStructure.neutral(G, H, 3).with_maps(alpha0=alpha0)
    b = {"p": np.array([1, 2]), "q": np.array([1, 0])}
    assert evaluate_g(S, g("p", "q"), b).tolist() == [2, 2]
    assert evaluate_g(S, g(), b).tolist() == 0
    expr = a0(g("p"), g("p", "q"), g("q")) + h("p")
    assert evaluate_h(S, expr, b).tolist() == [(2 + 1) % 3, 2]


def test_renamed_and_variables():
    prog = ExponentProgram((Term("iota1", 1, (a0(g("a"), g("b"), g("c")) + h("x"), g("a"), g("b"))),))
    renamed = prog.renamed({"a": "e0", "x": "t3"})
    assert renamed.variables() == {"e0", "b", "c", "t3"}
    assert prog.scaled(1) is prog
    assert prog.scaled(-1).terms[0].sign == -1
    assert prog.tables() == {"iota1"}


def test_trivial_tables_are_skipped():
    S = br_tau(3, 1)
    prog = ExponentProgram((Term("alpha1", 1, (h("x"), h("y"), h("z"))),))
    out = prog.evaluate(S, grid_bindings([("x", 3), ("y", 3), ("z", 3)]))
    assert not out.any()
