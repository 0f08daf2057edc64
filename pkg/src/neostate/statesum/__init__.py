"""态和：括号展开、单形权重与指数程序"""
from neostate.statesum.brackets import (
    BracketedFactor,
    Node,
    expand_brackets,
    mu_string,
    mu_transport,
    normalize_word,
    word,
)
from neostate.statesum.program import ExponentProgram, HExpr, Term
from neostate.statesum.simplex import fifteen_j, simplex_program, z_simplex

__all__ = [
    "BracketedFactor",
    "ExponentProgram",
    "HExpr",
    "Node",
    "Term",
    "expand_brackets",
    "fifteen_j",
    "mu_string",
    "mu_transport",
    "normalize_word",
    "simplex_program",
    "word",
    "z_simplex",
]
