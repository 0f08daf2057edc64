"""测试平坦 G 标号、半平坦方程组与流式枚举"""
import gc
import itertools
import weakref

import numpy as np
import pytest

from neostate.algebra import FiniteAbelianGroup, FiniteGroup, cyclic_group
from neostate.complex import boundary_of_simplex, product_with_circle
from neostate.core.errors import BudgetExceededError, LabellingError
from neostate.labelling.hsystem import CoboundarySystem
from neostate.labelling import (
    LabellingStream,
    coboundary_matrix,
    coboundary_system,
    component_count,
    count_flat_g,
    count_labellings,
    enumerate_flat_g,
    enumerate_labellings,
    solve_h,
    spanning_forest_edges,
)
from neostate.structure import SemiWeakStructure, br_iota1, br_tau, trivial_structure


def _cocycle_alpha0_structure():
    G, H = cyclic_group(2), FiniteAbelianGroup((2,))
    alpha0 = np.zeros((2, 2, 2), dtype=np.int64)
    alpha0[1, 1, 1] = 1
    return SemiWeakStructure.neutral(G, H, 2).with_maps(alpha0=alpha0)


def test_spanning_forest(s4):
    tree = spanning_forest_edges(s4)
    assert len(tree) == s4.v0 - 1
    assert component_count(s4) == 1


def test_flat_count_on_simply_connected_sphere(s4):
    # S⁴ 单连通：平坦标号数 |G|^{v0-1}
    assert count_flat_g(s4, cyclic_group(3)) == 3**5
    assert count_flat_g(s4, cyclic_group(3), gauge_fix=True) == 1


def test_flat_count_on_product_with_circle():
    T = product_with_circle(boundary_of_simplex(3), 3)
    G = cyclic_group(2)
    # π₁ = Z：|Hom(Z, G)|·|G|^{v0-1}
    assert count_flat_g(T, G) == 2 * 2 ** (T.v0 - 1)
    assert count_flat_g(T, G, gauge_fix=True) == 2


def test_flat_labellings_are_flat(s4):
    G = cyclic_group(3)
    index = s4.edge_index
    for row in itertools.islice(enumerate_flat_g(s4, G), 50):
        for a, b, c in s4.triangles:
            assert row[index[(a, c)]] == G.multiply(row[index[(a, b)]], row[index[(b, c)]])


def test_flat_count_for_nonabelian_group():
    # S₃，置换复合表，恒等置换排在首位
    perms = list(itertools.permutations(range(3)))
    table = [[perms.index(tuple(p[q[i]] for i in range(3))) for q in perms] for p in perms]
    G = FiniteGroup(np.array(table))
    assert not G.is_abelian()
    assert count_flat_g(boundary_of_simplex(2), G) == 6**3


def test_coboundary_matrix_shape(s4):
    A = coboundary_matrix(s4)
    assert A.shape == (15, 20)
    assert set(np.abs(A).sum(axis=1).tolist()) == {4}


def test_solve_h_kernel_on_sphere(s4):
    H = FiniteAbelianGroup((3,))
    space = solve_h(s4, H, np.zeros((1, 1, 1), dtype=np.int64), np.zeros(s4.v1, dtype=np.int64))
    assert space is not None
    assert space.order == 3**10
    labels = space.labels_chunk(0, 5)
    assert labels.shape == (5, 20)


def test_coboundary_system_cache_follows_complex_lifetime():
    from neostate.labelling import hsystem

    T = boundary_of_simplex(4)
    H3, H6 = FiniteAbelianGroup((3,)), FiniteAbelianGroup((6,))
    system = coboundary_system(T, H3)
    assert coboundary_system(T, H3) is system
    assert coboundary_system(T, H6) is not system
    assert coboundary_system(boundary_of_simplex(4), H3) is not system

    ref = weakref.ref(T)
    cached = len(hsystem._SYSTEMS)
    del T, system
    gc.collect()
    assert ref() is None
    assert len(hsystem._SYSTEMS) < cached


def test_labelling_counts(s4):
    assert count_labellings(s4, br_tau(3, 1)) == 3**10
    assert count_labellings(s4, br_iota1(2, 1)) == 2**5 * 2**10
    assert count_labellings(s4, trivial_structure(1, 1)) == 1
    assert count_labellings(s4, _cocycle_alpha0_structure()) == 2**5 * 2**10


def test_stream_yields_admissible_labellings(s4):
    S = _cocycle_alpha0_structure()
    stream = LabellingStream(s4, S, chunk_size=64, debug_checks=True)
    seen = list(itertools.islice(iter(stream), 200))
    assert len(seen) == 200
    assert len({(lab.g, lab.h) for lab in seen}) == 200
    assert all(lab.is_admissible(S) for lab in seen[:20])


def test_stream_enumerates_every_labelling(s4):
    S = br_tau(2, 1)
    stream = LabellingStream(s4, S)
    labellings = list(stream)
    assert len(labellings) == len(stream) == 2**10
    assert len({lab.h for lab in labellings}) == 2**10


def test_restrict_and_failures(s4):
    S = br_tau(3, 1)
    lab = next(iter(LabellingStream(s4, S)))
    local = lab.restrict(s4.facets[0])
    assert set(local) >= {"g01", "g34", "h012", "h234"}
    broken = type(lab)(lab.T, lab.g, ((lab.h[0] + 1) % 3,) + lab.h[1:])
    assert broken.failures(S)
    assert not broken.is_admissible(S)


def test_budget_is_checked_before_iteration(s4):
    stream = LabellingStream(s4, br_tau(3, 1), budget=100)
    with pytest.raises(BudgetExceededError):
        next(iter(stream))


def test_enumerate_labellings_respects_budget(s4):
    S = br_iota1(2, 1)
    stream = enumerate_labellings(s4, S, budget=2**15)
    first = next(iter(stream))
    assert first.is_admissible(S)
    assert stream.count() == 2**15
    with pytest.raises(BudgetExceededError):
        next(iter(enumerate_labellings(s4, S, budget=2**15 - 1)))


def test_debug_checks_reject_corrupted_particulars(s4, monkeypatch):
    solve_many = CoboundarySystem.solve_many

    def corrupted(self, alpha0, g_rows):
        out, ok = solve_many(self, alpha0, g_rows)
        out[:, 0, 0] += 1
        return out, ok

    monkeypatch.setattr(CoboundarySystem, "solve_many", corrupted)
    S = br_tau(3, 1)
    assert LabellingStream(s4, S).count() == 3**10
    with pytest.raises(LabellingError, match="semi-flat"):
        LabellingStream(s4, S, debug_checks=True).count()
