"""测试结构数据的存储、提升与文件格式"""
import numpy as np
import pytest

from neostate.algebra import FiniteAbelianGroup, cyclic_group, root_of_unity
from neostate.core.errors import StructureError
from neostate.structure import (
    SemiWeakStructure,
    br_tau,
    dump_structure,
    load_structure,
    trivial_structure,
)
from neostate.structure.semiweak import structure_from_data, structure_to_data


def test_neutral_structure_shapes():
    S = SemiWeakStructure.neutral(cyclic_group(2), FiniteAbelianGroup((3,)), 6)
    assert S.alpha0.shape == (2, 2, 2)
    assert S.pi.shape == (2, 2, 2, 2)
    assert S.alpha1.shape == (3, 3, 3)
    assert S.tau.shape == (3, 3)
    assert S.iota1.shape == (3, 2, 2)
    assert S.iota2.shape == (2, 3, 2)
    assert S.iota3.shape == (2, 2, 3)
    assert S.is_normalized()


def test_tables_are_read_only_and_reduced():
    S = br_tau(3, 1).with_maps(tau=np.array([[0, 0, 0], [0, 4, 5], [0, 5, 7]]))
    assert S.tau.tolist() == [[0, 0, 0], [0, 1, 2], [0, 2, 1]]
    with pytest.raises(ValueError):
        S.tau[1, 1] = 0


def test_wrong_shape_rejected():
    S = trivial_structure(2, 2, 2)
    with pytest.raises(StructureError):
        S.with_maps(tau=np.zeros((3, 3), dtype=np.int64))
    with pytest.raises(StructureError):
        S.with_maps(alpha0=np.full((2, 2, 2), 5))
    with pytest.raises(StructureError):
        S.with_maps(sigma=np.zeros(2))


def test_value_is_exact_root_of_unity():
    S = br_tau(3, 1)
    assert S.value("tau", 1, 1) == root_of_unity(3, 1)
    assert S.value("tau", 1, 2) == root_of_unity(3, 2)
    with pytest.raises(StructureError):
        S.value("alpha0", 0, 0, 0)
    with pytest.raises(KeyError):
        S.table("sigma")


def test_lifting_preserves_equality():
    S = br_tau(3, 1)
    L = S.lifted(6)
    assert L.m == 6
    assert int(L.tau[1, 1]) == 2
    assert L == S
    assert L.value("tau", 1, 1) == S.value("tau", 1, 1)
    with pytest.raises(StructureError):
        S.lifted(4)


def test_equality_distinguishes_data():
    assert br_tau(3, 1) != br_tau(3, 2)
    assert br_tau(3, 1) != trivial_structure(1, 3, 3)
    assert trivial_structure(1, 3, 3) == trivial_structure(1, 3, 1)


def test_normalization_failures_name_the_entry():
    S = br_tau(3, 1)
    tau = S.tau.copy()
    tau[0, 2] = 1
    failures = S.with_maps(tau=tau).normalization_failures()
    assert failures == ["tau(0, 2) = 1 is not neutral"]


def test_text_format_lists_nonzero_entries():
    data = structure_to_data(br_tau(3, 1))
    assert data["G"] == {"cyclic": 1}
    assert data["H"] == {"cyclic": [3]}
    assert data["m"] == 3
    assert data["maps"] == {"tau": ["1 1 -> 1", "1 2 -> 2", "2 1 -> 2", "2 2 -> 1"]}
    assert structure_from_data(data) == br_tau(3, 1)


def test_text_format_parses_alpha0_and_products():
    data = {
        "G": {"cyclic": [2]},
        "H": {"cyclic": [2, 2]},
        "m": 2,
        "maps": {"alpha0": ["1 1 1 -> 0,1"], "iota1": ["1,1 1 1 -> 1"]},
    }
    S = structure_from_data(data)
    assert S.H.order == 4
    assert int(S.alpha0[1, 1, 1]) == S.H.index((0, 1))
    assert int(S.iota1[S.H.index((1, 1)), 1, 1]) == 1


@pytest.mark.parametrize(
    "maps",
    [
        {"sigma": ["1 -> 1"]},
        {"tau": ["1 1 1"]},
        {"tau": ["1 -> 1"]},
        {"iota1": ["1 2 1 -> 1"]},
        {"alpha0": ["1 1 1 -> 1,1"]},
    ],
)
def test_text_format_errors(maps):
    data = {"G": 2, "H": 2, "m": 2, "maps": maps}
    with pytest.raises(StructureError):
        structure_from_data(data)


def test_dump_and_load(tmp_path):
    path = tmp_path / "tau.yaml"
    S = br_tau(5, 2)
    dump_structure(S, path)
    loaded = load_structure(path)
    assert loaded == S
    assert loaded.name == "br-tau:5,2"


def test_load_uses_file_stem_without_name(tmp_path):
    path = tmp_path / "bare.yaml"
    path.write_text("G: 2\nH: 2\nm: 2\n", encoding="utf-8")
    S = load_structure(path)
    assert S.name == "bare"
    assert S == trivial_structure(2, 2, 2)


def test_load_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_structure(tmp_path / "missing.yaml")
    bad = tmp_path / "bad.yaml"
    bad.write_text("G: [1, 2\n", encoding="utf-8")
    with pytest.raises(StructureError):
        load_structure(bad)
    scalar = tmp_path / "scalar.yaml"
    scalar.write_text("42\n", encoding="utf-8")
    with pytest.raises(StructureError):
        load_structure(scalar)


def test_string_form():
    assert str(br_tau(3, 1)) == "br-tau:3,1 (G order 1, H Z/3, m 3)"
