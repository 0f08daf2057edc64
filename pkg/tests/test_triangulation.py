"""测试有序三角剖分的验证、定向与文件格式"""
import itertools

import pytest

from neostate.complex import (
    boundary_of_simplex,
    dump_triangulation,
    load_triangulation,
    random_permutation,
    relabel_vertices,
    reverse_orientation,
    validate,
)
from neostate.complex.triangulation import parse_triangulation
from neostate.core.errors import TriangulationError

RP2_6 = [
    (0, 1, 3), (0, 1, 5), (0, 2, 4), (0, 2, 5), (0, 3, 4),
    (1, 2, 3), (1, 2, 4), (1, 4, 5), (2, 3, 5), (3, 4, 5),
]


def test_boundary_of_5simplex_faces(s4):
    assert s4.dim == 4
    assert s4.f_vector == (6, 15, 20, 15, 6)
    assert s4.v1 == 15
    assert s4.edges[0] == (0, 1)
    assert s4.edge_index[(0, 1)] == 0
    assert len(s4.triangle_index) == 20
    assert len(s4.tetrahedron_index) == 15
    ok, errors = s4.check()
    assert ok and not errors


def test_orientation_signs_alternate_on_simplex_boundary(s4):
    # ∂Δ⁵ 上第 p 个面片（缺顶点 5-p）的 ε 交替变号
    assert set(s4.eps) == {1, -1}
    assert sum(s4.eps) == 0


@pytest.mark.parametrize(
    "facets,v0",
    [
        ([], None),
        ([(0, 1, 2), (0, 1)], None),
        ([(0, 1, 2), (0, 1, 2)], None),
        ([(0, 0, 1)], None),
        (list(itertools.combinations(range(4), 3))[:3], None),
        (list(itertools.combinations(range(4), 3)), 6),
        (list(itertools.combinations(range(4), 3)), 3),
    ],
)
def test_validate_rejects_malformed_input(facets, v0):
    with pytest.raises(TriangulationError):
        validate(facets, v0)


def test_validate_rejects_non_orientable():
    with pytest.raises(TriangulationError):
        validate(RP2_6)


def test_reverse_orientation_is_involutive(s4):
    r = reverse_orientation(s4)
    assert r.eps == tuple(-e for e in s4.eps)
    assert r.name == "-s4"
    back = reverse_orientation(r)
    assert back.eps == s4.eps
    assert back.name == "s4"


def test_relabel_keeps_orientation_class(s4):
    perm = random_permutation(s4.v0, 3)
    assert sorted(perm) == list(range(6))
    T = relabel_vertices(s4, perm)
    assert T.f_vector == s4.f_vector
    assert T.check()[0]
    # 偶置换保持每个面片的 ε 模式
    identity = relabel_vertices(s4, range(6))
    assert identity.eps == s4.eps


def test_relabel_rejects_non_permutation(s4):
    with pytest.raises(TriangulationError):
        relabel_vertices(s4, [0, 0, 1, 2, 3, 4])


def test_relabel_by_transposition_flips_orientation():
    S2 = boundary_of_simplex(2)
    swapped = relabel_vertices(S2, [1, 0, 2, 3])
    assert swapped.facets == S2.facets
    assert swapped.eps == tuple(-e for e in S2.eps)


def test_parse_triangulation_with_comments():
    text = "# sphere\ndim 2\nvertices 4\n0 1 2\n0 1 3  # trailing\n0 2 3\n1 2 3\n"
    T = parse_triangulation(text, name="s2")
    assert T.f_vector == (4, 6, 4)
    assert T.name == "s2"


@pytest.mark.parametrize(
    "text",
    [
        "dim 2\n0 1 2 3\n",
        "dim x\n0 1 2\n",
        "vertices\n0 1 2\n",
        "0 1 2\n0 1 3\n",
    ],
)
def test_parse_triangulation_errors(text):
    with pytest.raises(TriangulationError):
        parse_triangulation(text)


def test_dump_and_load_keep_orientation(tmp_path, s4):
    for T in (s4, reverse_orientation(s4)):
        path = tmp_path / "t.txt"
        dump_triangulation(T, path)
        loaded = load_triangulation(path)
        assert loaded.facets == T.facets
        assert loaded.eps == T.eps
        assert loaded.name.lstrip("-") == "t"


def test_load_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_triangulation(tmp_path / "none.txt")


def test_string_form(s4):
    assert str(s4) == "s4 (dim 4, f-vector (6, 15, 20, 15, 6))"
