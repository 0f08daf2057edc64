"""测试共享夹具"""
import os

import pytest

import numpy as np

from neostate.algebra import FiniteAbelianGroup, cyclic_group
from neostate.complex import boundary_of_5simplex
from neostate.structure import SemiWeakStructure, br_tau, semion_structure, trivial_structure

RUN_SLOW = os.environ.get("NEOSTATE_RUN_SLOW") == "1"


def pytest_collection_modifyitems(config, items):
    if RUN_SLOW:
        return
    skip_slow = pytest.mark.skip(reason="设置 NEOSTATE_RUN_SLOW=1 以运行验收计算")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def s4():
    return boundary_of_5simplex()


@pytest.fixture
def z2():
    return cyclic_group(2)


@pytest.fixture
def trivial_z2():
    return trivial_structure(cyclic_group(2), FiniteAbelianGroup((2,)), 2)


@pytest.fixture
def tau3():
    return br_tau(3, 1)


@pytest.fixture
def semion():
    return semion_structure()


@pytest.fixture
def z2_semion():
    """G = Z/2，H = Z/2 × Z/2：α⁰(1,1,1) = (1,0)，第二个分量上是半子

    α⁰ 与 α¹ 同时非平凡，但 α¹、τ 只看第二个分量。
    """
    G, H = cyclic_group(2), FiniteAbelianGroup((2, 2))
    alpha0 = np.zeros((2, 2, 2), dtype=np.int64)
    alpha0[1, 1, 1] = H.index((1, 0))
    x = H.components[:, 1]
    alpha1 = 2 * np.einsum("i,j,k->ijk", x, x, x)
    tau = np.outer(x, x)
    return SemiWeakStructure.neutral(G, H, 4, name="z2-semion").with_maps(
        alpha0=alpha0, alpha1=alpha1, tau=tau
    )
