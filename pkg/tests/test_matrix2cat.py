"""测试 2-范畴矩阵模型的组合律"""
import random

import pytest

from neostate.algebra import Cyclotomic, FiniteAbelianGroup, cyclic_group
from neostate.matrix2cat import (
    CycMatrix,
    OneMorphismMatrix,
    RigElement,
    TwoMorphismMatrix,
    compose_1,
    dual_2,
    hcompose_2,
    identity_2,
    random_like,
    random_one_morphism,
    random_two_morphism,
    swap_matrix,
    tensor_1,
    tensorator_matrix,
    vcompose_2,
)

H = FiniteAbelianGroup((2,))
OBJECTS = {0: 2, 1: 1}
SEEDS = range(25)


def _morphism(rng, source=OBJECTS, target=OBJECTS):
    return random_one_morphism(rng, H, source, target, max_degree=2)


def test_rig_element_arithmetic():
    a = RigElement.of(H, 0, 1, 1)
    b = RigElement.of(H, 1)
    assert a.degree == 3
    assert a.terms() == [0, 1, 1]
    assert (a + b).counts == (1, 3)
    # (1 + 2x)·x = x + 2
    assert (a * b).counts == (2, 1)
    with pytest.raises(ValueError):
        RigElement(H, (1,))


def test_compose_with_identity():
    rng = random.Random(1)
    f = _morphism(rng)
    ident = OneMorphismMatrix.identity(H, OBJECTS)
    assert compose_1(ident, f) == f
    assert compose_1(f, ident) == f


def test_compose_rejects_shape_mismatch():
    rng = random.Random(2)
    f = _morphism(rng, target={0: 1, 1: 1})
    with pytest.raises(ValueError):
        compose_1(f, f)


@pytest.mark.parametrize("seed", SEEDS)
def test_compose_is_associative(seed):
    rng = random.Random(seed)
    f, g, h = _morphism(rng), _morphism(rng), _morphism(rng)
    assert compose_1(compose_1(f, g), h) == compose_1(f, compose_1(g, h))


@pytest.mark.parametrize("seed", SEEDS)
def test_vertical_composition_is_associative(seed):
    rng = random.Random(seed)
    f = _morphism(rng)
    a = random_two_morphism(rng, f, f)
    b = random_two_morphism(rng, f, f)
    c = random_two_morphism(rng, f, f)
    assert vcompose_2(vcompose_2(a, b), c) == vcompose_2(a, vcompose_2(b, c))
    assert vcompose_2(identity_2(f), a) == a
    assert vcompose_2(a, identity_2(f)) == a


@pytest.mark.parametrize("seed", SEEDS)
def test_interchange_law(seed):
    rng = random.Random(seed)
    f = _morphism(rng)
    g = _morphism(rng)
    f1, g1 = random_like(rng, f, 2), random_like(rng, g, 2)
    f2, g2 = random_like(rng, f, 2), random_like(rng, g, 2)
    alpha, alpha1 = random_two_morphism(rng, f, f1), random_two_morphism(rng, f1, f2)
    beta, beta1 = random_two_morphism(rng, g, g1), random_two_morphism(rng, g1, g2)

    lhs = vcompose_2(hcompose_2(alpha, beta), hcompose_2(alpha1, beta1))
    rhs = hcompose_2(vcompose_2(alpha, alpha1), vcompose_2(beta, beta1))
    assert lhs == rhs


@pytest.mark.parametrize("seed", range(10))
def test_horizontal_identity(seed):
    rng = random.Random(seed)
    f = _morphism(rng)
    alpha = random_two_morphism(rng, f, random_like(rng, f, 2))
    ident = identity_2(OneMorphismMatrix.identity(H, OBJECTS))
    assert hcompose_2(ident, alpha) == alpha
    assert hcompose_2(alpha, ident) == alpha


@pytest.mark.parametrize("seed", range(10))
def test_dual_reverses_vertical_composition(seed):
    rng = random.Random(seed)
    f = _morphism(rng)
    g = random_like(rng, f, 2)
    a = random_two_morphism(rng, f, g)
    b = random_two_morphism(rng, g, g)
    assert dual_2(dual_2(a)) == a
    assert dual_2(vcompose_2(a, b)) == vcompose_2(dual_2(b), dual_2(a))


def test_two_morphism_shape_is_checked():
    rng = random.Random(3)
    f = _morphism(rng)
    good = random_two_morphism(rng, f, f)
    key, grid = good.entries[0]
    bad_entry = CycMatrix.build(
        grid[0][0].rows + 1, grid[0][0].cols, lambda r, c: Cyclotomic.zero()
    )
    rows = [list(row) for row in grid]
    rows[0][0] = bad_entry
    entries = ((key, tuple(tuple(r) for r in rows)),) + good.entries[1:]
    with pytest.raises(ValueError):
        TwoMorphismMatrix(f, f, entries)


def test_swap_matrices_are_mutually_inverse():
    for a, b in ((1, 3), (2, 2), (2, 3)):
        assert swap_matrix(a, b) @ swap_matrix(b, a) == CycMatrix.identity(a * b)


def test_tensor_product_degrees_multiply():
    G = cyclic_group(2)
    rng = random.Random(5)
    f = random_one_morphism(rng, H, {1: 2}, {1: 1}, max_degree=2)
    g = random_one_morphism(rng, H, {1: 1}, {1: 2}, max_degree=2)
    fg = tensor_1(f, g, G)
    assert fg.source == {0: 2}
    assert fg.target == {0: 2}
    for (i, j) in ((0, 0), (1, 0)):
        for (k, l) in ((0, 0), (0, 1)):
            row, col = i * 1 + j, k * 2 + l
            assert fg.degrees(0)[row][col] == f.degrees(1)[i][k] * g.degrees(1)[j][l]

    tau = tensorator_matrix(f, g, G)
    assert tau.source == fg
    assert tau.target == fg
