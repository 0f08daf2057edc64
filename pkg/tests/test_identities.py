"""测试相干恒等式的穷举验证"""
import numpy as np
import pytest

from neostate.algebra import FiniteAbelianGroup, cyclic_group
from neostate.equivalence import Phi_twist, mu_twist
from neostate.structure import (
    IdentityName,
    SemiWeakStructure,
    br_iota1,
    br_iota2,
    br_tau,
    coboundary_alpha0,
    seeded_pentagonator,
    semion_structure,
    trivial_structure,
    verify_all,
    verify_identity,
)
from neostate.structure.identities import identity_programs


def test_trivial_structures_pass():
    for G, H, m in ((1, 1, 1), (2, 2, 2), (3, 2, 6)):
        report = verify_all(trivial_structure(G, H, m))
        assert report.passed, report.to_dict()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_br_tau_family_passes(n):
    for k in range(1, n):
        assert verify_all(br_tau(n, k)).passed


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_br_iota1_family_passes(n):
    for k in range(1, n * n):
        report = verify_all(br_iota1(n, k))
        assert report.passed, report.to_dict()


def test_semion_passes():
    assert verify_all(semion_structure()).passed


def test_seeded_pentagonator_passes():
    for seed in range(3):
        assert verify_all(seeded_pentagonator(3, 3, seed)).passed


def test_br_iota2_report_is_complete():
    report = verify_all(br_iota2(2, 1, verify=False))
    data = report.to_dict()
    assert set(data["identities"]) == {name.value for name in IdentityName}
    assert data["passed"] == report.passed


def test_hexagon_failure_has_counterexample():
    S = br_tau(3, 1)
    tau = np.zeros((3, 3), dtype=np.int64)
    tau[1, 1] = 1
    S = S.with_maps(tau=tau)
    check = verify_identity(S, IdentityName.HEX)
    assert not check.passed
    assert set(check.counterexample) == {"h1", "h2", "h3"}
    assert verify_identity(S, IdentityName.MOR4).passed
    report = verify_all(S)
    assert IdentityName.HEX in [c.name for c in report.failures()]


def test_obj4_detects_non_cocycle():
    G, H = cyclic_group(3), FiniteAbelianGroup((3,))
    alpha0 = np.zeros((3, 3, 3), dtype=np.int64)
    alpha0[1, 1, 1] = 1
    S = SemiWeakStructure.neutral(G, H, 3).with_maps(alpha0=alpha0)
    check = verify_identity(S, IdentityName.OBJ4)
    assert not check.passed
    assert check.checked == 3**4
    assert set(check.counterexample) == {"g1", "g2", "g3", "g4"}


def test_obj4_accepts_coboundaries():
    G, H = cyclic_group(3), FiniteAbelianGroup((3,))
    rng = np.random.default_rng(0)
    beta = rng.integers(0, 3, size=(3, 3))
    beta[0, :] = 0
    beta[:, 0] = 0
    S = SemiWeakStructure.neutral(G, H, 3).with_maps(alpha0=coboundary_alpha0(G, H, beta))
    assert verify_identity(S, IdentityName.OBJ4).passed


def test_identity_name_accepts_strings():
    check = verify_identity(br_tau(3, 1), "I2-LEFT")
    assert check.name is IdentityName.I2_LEFT
    assert check.passed


def test_report_records_normalization():
    S = br_tau(3, 1)
    tau = S.tau.copy()
    tau[0, 1] = 2
    report = verify_all(S.with_maps(tau=tau))
    assert not report.passed
    assert report.normalization == ["tau(0, 1) = 2 is not neutral"]
    assert report.to_dict()["normalization"] == report.normalization


@pytest.mark.parametrize(
    "name",
    [
        IdentityName.PENT5,
        IdentityName.I1_COCYCLE,
        IdentityName.I3_COCYCLE,
        IdentityName.I2_RIGHT,
        IdentityName.I2_LEFT,
        IdentityName.I1_MULT,
        IdentityName.I2_MULT,
        IdentityName.I3_MULT,
    ],
)
def test_interchanger_identities_carry_alpha1_strings(name):
    variables, variants = identity_programs(name)
    assert all("alpha1" in prog.tables() for _, prog in variants)
    # h 所在的对象只出现在被越过的 α⁰ 字母里，也要枚举
    assert variables[:3] == ("g1", "g2", "g3")


def test_both_alpha_maps_nontrivial(z2_semion):
    report = verify_all(z2_semion)
    assert report.passed, report.to_dict()


def test_mu_twisted_structure_with_nontrivial_alpha0_passes():
    Phi = np.zeros((3, 3), dtype=np.int64)
    Phi[1, 2] = 1
    Phi[2, 2] = 2
    S1, _ = Phi_twist(trivial_structure(3, 3, 3), Phi)
    mu = np.zeros((3, 3), dtype=np.int64)
    mu[1, 2] = mu[2, 1] = 1
    S2, _ = mu_twist(S1, mu)
    assert S2.alpha0.any() and S2.alpha1.any() and S2.pi.any()
    report = verify_all(S2)
    assert report.passed, report.to_dict()

    # 同样的 α¹ 配上平凡 π：只有展开 α¹ 串才能看出缺了 π'
    check = verify_identity(S2.with_maps(pi=np.zeros_like(S2.pi)), IdentityName.PENT5)
    assert not check.passed
