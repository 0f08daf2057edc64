"""测试内置结构构造器"""
import numpy as np
import pytest

from neostate.algebra import FiniteAbelianGroup, cyclic_group, root_of_unity
from neostate.core.errors import StructureError, VerificationError
from neostate.structure import (
    br_iota1,
    br_iota2,
    br_tau,
    coboundary_4cocycle,
    coboundary_alpha0,
    combine,
    pentagonator_structure,
    random_normalized_cochain,
    seeded_pentagonator,
    semion_structure,
    structure_from_spec,
    trivial_structure,
)


def test_trivial_structure_accepts_orders():
    S = trivial_structure(3, 2)
    assert S.G.order == 3
    assert S.H.order == 2
    assert S.m == 1
    assert all(S.is_trivial_map(k) for k in ("pi", "alpha1", "tau", "iota1", "iota2", "iota3"))


def test_br_tau_values():
    S = br_tau(3, 1)
    assert S.is_g_trivial
    assert S.value("tau", 1, 1) == root_of_unity(3, 1)
    assert S.is_trivial_map("alpha1")


@pytest.mark.parametrize("n,k", [(3, 0), (3, 3), (1, 1)])
def test_br_tau_rejects_out_of_range(n, k):
    with pytest.raises(StructureError):
        br_tau(n, k)


def test_br_iota1_uses_carry():
    S = br_iota1(3, 1)
    assert S.m == 9
    # 2 + 2 进位 3，ι¹(2,2,2) = ζ_9^{2·3} = ζ_3^2
    assert S.value("iota1", 2, 2, 2) == root_of_unity(3, 2)
    assert S.value("iota1", 2, 1, 1) == 1


def test_br_iota2_value():
    S = br_iota2(3, 1, verify=False)
    assert S.value("iota2", 1, 1, 1) == root_of_unity(3, 1)
    assert S.value("iota2", 2, 1, 2) == root_of_unity(3, 1)


def test_semion_data():
    S = semion_structure()
    assert S.m == 4
    assert S.value("alpha1", 1, 1, 1) == -1
    assert S.value("tau", 1, 1) == root_of_unity(4, 1)


def test_random_normalized_cochain_vanishes_on_identity():
    rng = np.random.default_rng(3)
    table = random_normalized_cochain((3, 3, 3), 5, rng)
    assert not table[0].any()
    assert not table[:, 0].any()
    assert not table[:, :, 0].any()
    assert table.max() < 5


def test_coboundary_4cocycle_of_zero():
    G = cyclic_group(3)
    assert not coboundary_4cocycle(G, np.zeros((3, 3, 3), dtype=np.int64), 4).any()


def test_coboundary_alpha0_into_trivial_group():
    G = cyclic_group(2)
    H = FiniteAbelianGroup((1,))
    beta = np.zeros((2, 2), dtype=np.int64)
    assert coboundary_alpha0(G, H, beta).shape == (2, 2, 2)


def test_pentagonator_rejects_non_cocycle():
    omega = np.zeros((3, 3, 3, 3), dtype=np.int64)
    omega[1, 1, 1, 1] = 1
    pentagonator_structure(3, omega, 3)
    with pytest.raises(VerificationError):
        pentagonator_structure(3, omega, 3, verify=True)


def test_seeded_pentagonator_is_deterministic():
    a = seeded_pentagonator(3, 3, seed=4)
    b = seeded_pentagonator(3, 3, seed=4)
    assert a == b
    assert a.is_h_trivial
    assert a.name == "pentagonator:3,3,4"


def test_combine_adds_exponents():
    S = combine(br_tau(3, 1), br_tau(3, 1))
    assert S == br_tau(3, 2)
    assert S.name == "br-tau:3,1+br-tau:3,1"


def test_combine_lifts_to_common_root_order():
    S = combine(br_tau(2, 1), semion_structure(), verify=False)
    assert S.m == 4
    assert S.value("tau", 1, 1) == root_of_unity(4, 3)


def test_combine_rejects_mismatched_groups():
    with pytest.raises(StructureError):
        combine(br_tau(3, 1), br_tau(2, 1))


@pytest.mark.parametrize(
    "spec,expected",
    [
        ("br-tau:3,1", br_tau(3, 1)),
        ("trivial:2,3", trivial_structure(2, 3)),
        ("trivial:2,3,6", trivial_structure(2, 3, 6)),
        ("br-iota1:2,1", br_iota1(2, 1)),
        ("semion", semion_structure()),
        ("combine:br-tau:3,1+br-tau:3,1", br_tau(3, 2)),
        ("pentagonator:2,2,1", seeded_pentagonator(2, 2, 1)),
    ],
)
def test_structure_from_spec(spec, expected):
    assert structure_from_spec(spec) == expected


@pytest.mark.parametrize(
    "spec", ["br-tau:3", "br-tau:3,x", "unknown:1", "combine:br-tau:3,1", "semion:1"]
)
def test_structure_from_spec_errors(spec):
    with pytest.raises(StructureError):
        structure_from_spec(spec)


def test_structure_from_spec_file(tmp_path):
    path = tmp_path / "s.yaml"
    path.write_text("G: 1\nH: 2\nm: 4\nmaps:\n  tau:\n    - 1 1 -> 1\n", encoding="utf-8")
    S = structure_from_spec(f"file:{path}")
    assert S.value("tau", 1, 1) == root_of_unity(4, 1)
    assert S.name == "s"
