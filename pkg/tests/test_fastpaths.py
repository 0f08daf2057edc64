"""测试快速路径的前提判断与 Gauss 和 / Gray 码求和"""
import itertools

import numpy as np
import pytest

from neostate.algebra import from_exponent_counts, root_of_unity
from neostate.core.errors import MethodNotApplicableError
from neostate.statesum.fastpaths import (
    QuadraticData,
    _diagonalize,
    gauss_sum,
    gray_histogram,
    gray_ranges,
    kernel_prime,
    linear_reasons,
    quadratic_reasons,
    split_linear,
)
from neostate.statesum.simplex import complex_program
from neostate.structure import br_iota1, br_tau, semion_structure, trivial_structure


def _quadratic(m, constant, linear, beta, cross):
    return QuadraticData(
        m=m,
        constant=constant,
        linear=np.array(linear, dtype=np.int64),
        beta=np.array(beta, dtype=np.int64),
        cross=np.array(cross, dtype=np.int64).reshape(len(linear), len(linear)),
    )


def test_linear_applicability():
    assert linear_reasons(br_iota1(2, 1)) == []
    assert linear_reasons(trivial_structure(2, 2, 2)) == []
    assert "tau is not trivial" in linear_reasons(br_tau(3, 1))
    reasons = linear_reasons(semion_structure())
    assert "alpha1 is not trivial" in reasons


def test_quadratic_applicability():
    assert quadratic_reasons(br_tau(3, 1)) == []
    assert "G is not trivial" in quadratic_reasons(br_iota1(2, 1))
    assert "alpha1 is not trivial" in quadratic_reasons(semion_structure())


def test_kernel_prime(s4):
    assert kernel_prime(br_tau(3, 1), s4) == (3, [])
    assert kernel_prime(br_tau(2, 1), s4) == (2, [])
    p, reasons = kernel_prime(br_tau(4, 1), s4)
    assert p is None and reasons
    p, reasons = kernel_prime(trivial_structure(1, 1), s4)
    assert p is None


def test_split_linear_moves_faces_out(s4):
    S = br_iota1(2, 1)
    decomposition = split_linear(complex_program(s4), S)
    assert decomposition.terms
    assert all(t.table == "iota1" for t in decomposition.terms)
    assert all(0 <= t.face < len(s4.triangles) for t in decomposition.terms)


def test_gauss_sum_of_a_single_square():
    # Q(x) = x² 于 Z/3：1 + 2ζ₃
    data = _quadratic(3, 0, [1], [2], [[0]])
    assert gauss_sum(data, 3) == from_exponent_counts(3, [1, 2, 0])


def test_gauss_sum_matches_direct_enumeration():
    m, p = 3, 3
    rng = np.random.default_rng(11)
    for _ in range(5):
        r = 3
        c = int(rng.integers(0, m))
        lin = rng.integers(0, m, size=r)
        beta = rng.integers(0, m, size=r)
        cross = np.triu(rng.integers(0, m, size=(r, r)), 1)
        cross = cross + cross.T
        data = _quadratic(m, c, lin, beta, cross)
        counts = [0] * m
        for x in itertools.product(range(p), repeat=r):
            x = np.array(x)
            q = c + x @ lin + (beta * (x * (x - 1) // 2)).sum() + x @ np.triu(cross, 1) @ x
            counts[int(q) % m] += 1
        assert gauss_sum(data, p) == from_exponent_counts(m, counts)


def test_gauss_sum_with_constant_phase():
    data = _quadratic(6, 1, [0], [0], [[0]])
    # Q ≡ 1 且 m=6，p=3：三个 ζ₆
    assert gauss_sum(data, 3) == 3 * root_of_unity(6, 1)


def test_gauss_sum_rejects_incompatible_coefficients():
    data = _quadratic(6, 0, [1], [0], [[0]])
    with pytest.raises(MethodNotApplicableError):
        gauss_sum(data, 3)


def test_diagonalize_symmetric_matrices():
    rng = np.random.default_rng(5)
    for p in (3, 5, 7):
        for _ in range(5):
            A = rng.integers(0, p, size=(4, 4))
            A = (A + A.T) % p
            diag, P = _diagonalize(A, p)
            D = (P.T @ A @ P) % p
            assert np.array_equal(D, np.diag(diag) % p)
            assert round(np.linalg.det(P)) % p != 0


def test_diagonalize_zero_diagonal():
    A = np.array([[0, 1], [1, 0]])
    diag, P = _diagonalize(A, 3)
    assert np.array_equal((P.T @ A @ P) % 3, np.diag(diag) % 3)
    assert np.count_nonzero(diag) == 2


def _brute_histogram(data):
    r = len(data.linear)
    hist = np.zeros(data.m, dtype=np.int64)
    for x in itertools.product((0, 1), repeat=r):
        x = np.array(x)
        q = data.constant + x @ data.linear + x @ np.triu(data.cross, 1) @ x
        hist[int(q) % data.m] += 1
    return hist


@pytest.mark.parametrize("low_bits", [0, 1, 2, 5])
def test_gray_histogram_matches_enumeration(low_bits):
    rng = np.random.default_rng(low_bits)
    r, m = 5, 4
    cross = np.triu(rng.integers(0, m, size=(r, r)), 1)
    data = _quadratic(m, 1, rng.integers(0, m, size=r), np.zeros(r), cross + cross.T)
    total = np.zeros(m, dtype=np.int64)
    for start, stop in gray_ranges(r, low_bits, parts=3):
        total += gray_histogram(data, start, stop, low_bits)
    assert total.tolist() == _brute_histogram(data).tolist()


def test_gray_ranges_cover_all_states():
    ranges = gray_ranges(10, 4, 5)
    assert ranges[0][0] == 0
    assert ranges[-1][1] == 2**6
    assert all(a[1] == b[0] for a, b in zip(ranges, ranges[1:]))
    assert gray_ranges(3, 20, 8) == [(0, 1)]
