"""测试括号规范化与 α¹ 串"""
import pytest

from neostate.statesum import BracketedFactor, Node, expand_brackets, mu_string, mu_transport
from neostate.statesum import normalize_word, word
from neostate.statesum.brackets import is_left_normal, letters, value
from neostate.statesum.program import h

A, B, C, D = h("a"), h("b"), h("c"), h("d")


def test_word_is_left_associated():
    w = word(A, B, C)
    assert w == Node(Node(A, B), C)
    assert is_left_normal(w)
    assert not is_left_normal(Node(A, Node(B, C)))
    assert letters(Node(A, Node(B, C))) == [A, B, C]
    with pytest.raises(ValueError):
        word()


def test_value_sums_letters():
    assert value(Node(A, Node(B, -C))) == A + B - C


def test_single_rebracketing():
    comb, steps = normalize_word(Node(A, Node(B, C)))
    assert comb == word(A, B, C)
    assert steps == [(A, B, C)]


def test_four_letter_strategies():
    w = Node(A, Node(B, Node(C, D)))
    comb, steps = normalize_word(w)
    assert comb == word(A, B, C, D)
    assert steps == [(A, B, C + D), (A + B, C, D)]

    comb_r, steps_r = normalize_word(w, right_first=True)
    assert comb_r == comb
    assert steps_r == [(B, C, D), (A, B + C, D), (A, B, C)]


def test_left_comb_needs_no_steps():
    comb, steps = normalize_word(word(A, B, C, D))
    assert steps == []
    assert normalize_word(A) == (A, [])


def test_expand_brackets_wraps_core_term():
    factor = BracketedFactor("tau", 1, (B, C), Node(A, Node(B, C)), Node(A, Node(C, B)))
    terms = expand_brackets(factor)
    assert [(t.table, t.sign, t.args) for t in terms] == [
        ("alpha1", -1, (A, B, C)),
        ("tau", 1, (B, C)),
        ("alpha1", 1, (A, C, B)),
    ]


def test_identity_factor_contributes_only_brackets():
    factor = BracketedFactor(None, 1, (), Node(A, Node(B, C)), word(A, B, C))
    terms = expand_brackets(factor)
    assert [(t.table, t.sign) for t in terms] == [("alpha1", -1)]


def test_composability_uses_relations():
    rel = A - D
    factor = BracketedFactor(None, 1, (), word(A, B), word(D, B), (rel,))
    assert len(expand_brackets(factor)) == 0
    bad = BracketedFactor(None, 1, (), word(A, B), word(C, B))
    with pytest.raises(ValueError):
        expand_brackets(bad)
    assert expand_brackets(bad, check=False) == []


def test_mu_string_and_transport():
    assert mu_string(A) == []
    assert mu_string(word(A, B, C)) == [(A, B), (A + B, C)]
    factor = BracketedFactor(None, 1, (), Node(A, Node(B, C)), word(A, B, C))
    transport = mu_transport(factor)
    assert (1, (A, B)) in transport
    assert (-1, (B, C)) in transport
    assert (-1, (A, B + C)) in transport
    assert len(transport) == 4
