"""测试 2-等价见证搜索"""
import numpy as np
import pytest

from neostate.core.errors import StructureError
from neostate.equivalence import (
    mu_twist,
    phi_twist,
    search_equivalence,
    verify_equivalence,
)
from neostate.equivalence.search import LinearEquation, LinearSystem, _Counter, _Ring
from neostate.structure import br_tau, random_normalized_cochain, seeded_pentagonator


def test_linear_system_forced_values():
    # x0 + 1 = 0，x1 − x0 = 0（模 3）
    variables = [("mu", (1, 1)), ("mu", (1, 2))]
    equations = [
        LinearEquation(2, (), 1, {variables[0]: 1}),
        LinearEquation(2, (), 0, {variables[1]: 1, variables[0]: -1}),
    ]
    system = LinearSystem(variables, equations, _Ring(3))
    solutions = list(system.solutions(_Counter(100)))
    assert solutions == [{variables[0]: 2, variables[1]: 2}]


def test_linear_system_constant_failure():
    system = LinearSystem([], [LinearEquation(3, (1, 1), 2, {})], _Ring(3))
    assert system.constant_failure is not None
    assert list(system.solutions(_Counter(100))) == []


def test_linear_system_free_variable():
    variables = [("phi", (1, 1, 1))]
    system = LinearSystem(variables, [], _Ring(2))
    assert len(list(system.solutions(_Counter(100)))) == 2


def test_search_finds_identity(tau3):
    result = search_equivalence(tau3, tau3)
    assert result.found
    assert result.report.passed
    assert result.to_dict()["status"] == "found"


def test_search_finds_mu_twist(tau3):
    mu = random_normalized_cochain((3, 3), 3, np.random.default_rng(1))
    S2, _ = mu_twist(tau3, mu)
    result = search_equivalence(tau3, S2)
    assert result.found
    assert verify_equivalence(tau3, S2, result.witness).passed


def test_search_finds_phi_twist():
    S = seeded_pentagonator(3, 3, 0)
    phi = random_normalized_cochain((3, 3, 3), 3, np.random.default_rng(4))
    S2, _ = phi_twist(S, phi)
    assert search_equivalence(S, S2).found


def test_search_exhausts_without_automorphisms():
    result = search_equivalence(br_tau(3, 1), br_tau(3, 2))
    assert result.status == "exhausted"
    assert result.witness is None
    assert "identity automorphisms" in result.detail


def test_search_with_automorphisms():
    result = search_equivalence(br_tau(3, 1), br_tau(3, 2), widen_automorphisms=True)
    assert result.found
    assert not result.witness.is_identity_automorphisms


def test_search_budget(tau3):
    mu = random_normalized_cochain((3, 3), 3, np.random.default_rng(1))
    S2, _ = mu_twist(tau3, mu)
    result = search_equivalence(tau3, S2, budget=1)
    assert result.status == "budget"
    assert result.explored == 2


def test_search_rejects_different_groups(tau3):
    with pytest.raises(StructureError):
        search_equivalence(tau3, br_tau(4, 1))
