"""2-等价：见证数据、条件验证与有界搜索"""
from neostate.equivalence.data import (
    EQUIVALENCE_SIGNATURES,
    EquivalenceData,
    dump_equivalence,
    identity_data,
    load_equivalence,
    transport_labelling,
)
from neostate.equivalence.search import SearchResult, search_equivalence
from neostate.equivalence.twist import (
    Phi_twist,
    automorphism_twist,
    mu_twist,
    phi_twist,
    twisted_structure,
)
from neostate.equivalence.verify import (
    CONDITIONS,
    ConditionCheck,
    EquivalenceReport,
    Factor,
    solve_condition,
    verify_condition,
    verify_equivalence,
)

__all__ = [
    "CONDITIONS",
    "ConditionCheck",
    "EQUIVALENCE_SIGNATURES",
    "EquivalenceData",
    "EquivalenceReport",
    "Factor",
    "Phi_twist",
    "SearchResult",
    "automorphism_twist",
    "dump_equivalence",
    "identity_data",
    "load_equivalence",
    "mu_twist",
    "phi_twist",
    "search_equivalence",
    "solve_condition",
    "transport_labelling",
    "twisted_structure",
    "verify_condition",
    "verify_equivalence",
]
