"""测试有限群与有限阿贝尔群"""
import numpy as np
import pytest

from neostate.algebra import FiniteAbelianGroup, FiniteGroup, cyclic_group, direct_product


def test_cyclic_group_basics():
    G = cyclic_group(5)
    assert G.order == 5
    assert G.multiply(2, 4) == 1
    assert G.multiply(1, 1, 1, 1, 1) == 0
    assert int(G.inv[2]) == 3
    assert G.element_order(0) == 1
    assert G.element_order(1) == 5
    assert G.is_abelian()


def test_rejects_tables_without_identity():
    with pytest.raises(ValueError):
        FiniteGroup(np.array([[1, 0], [0, 1]]))


def test_rejects_non_latin_square():
    with pytest.raises(ValueError):
        FiniteGroup(np.array([[0, 1], [1, 1]]))


def test_rejects_non_associative_table():
    # 单位元与拉丁方性质都满足，但 (1·1)·2 ≠ 1·(1·2)
    mul = np.array(
        [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
    )
    with pytest.raises(ValueError):
        FiniteGroup(mul)


def test_direct_product_orders():
    G = direct_product(cyclic_group(2), cyclic_group(3))
    assert G.order == 6
    assert G.is_abelian()
    assert max(G.element_order(x) for x in G.elements()) == 6


def test_group_automorphisms_of_cyclic_groups():
    assert len(list(cyclic_group(5).automorphisms())) == 4
    assert list(cyclic_group(2).automorphisms()) == [(0, 1)]
    with pytest.raises(ValueError):
        list(cyclic_group(12).automorphisms(limit=8))


def test_abelian_group_drops_trivial_factors():
    H = FiniteAbelianGroup((1, 2, 1, 3))
    assert H.cyclic_orders == (2, 3)
    assert H.rank == 2
    assert H.order == 6
    assert H.exponent == 6
    assert str(H) == "Z/2xZ/3"
    assert str(FiniteAbelianGroup((1,))) == "1"


def test_abelian_group_indexing_round_trip():
    H = FiniteAbelianGroup((2, 3))
    assert H.element(H.index((1, 2))) == (1, 2)
    assert H.index((3, -1)) == H.index((1, 2))
    assert H.components.shape == (6, 2)


def test_abelian_group_arithmetic():
    H = FiniteAbelianGroup((4,))
    assert H.add(3, 2) == 1
    assert H.neg(1) == 3
    assert H.scale(3, 3) == 1
    for a in H.elements():
        assert H.add(a, H.neg(a)) == 0


def test_abelian_group_automorphism_count():
    assert len(list(FiniteAbelianGroup((5,)).automorphisms())) == 4
    # GL(2, F_2) 的阶为 6
    assert len(list(FiniteAbelianGroup((2, 2)).automorphisms())) == 6


def test_as_group_agrees_with_addition():
    H = FiniteAbelianGroup((2, 2))
    G = H.as_group()
    assert G.order == 4
    assert all(G.multiply(a, b) == H.add(a, b) for a in H.elements() for b in H.elements())
