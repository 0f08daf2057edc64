"""半弱幺半 2-范畴结构：存储、构造与相干验证"""
from neostate.structure.builders import (
    BUILTIN_STRUCTURES,
    br_iota1,
    br_iota2,
    br_tau,
    braided_structure,
    coboundary_4cocycle,
    coboundary_alpha0,
    combine,
    pentagonator_structure,
    random_normalized_cochain,
    require_verified,
    seeded_pentagonator,
    semion_structure,
    structure_from_spec,
    trivial_structure,
)
from neostate.structure.identities import (
    IdentityCheck,
    StructureReport,
    verify_all,
    verify_identity,
)
from neostate.structure.semiweak import (
    MAP_SIGNATURES,
    PHASE_MAPS,
    IdentityName,
    SemiWeakStructure,
    dump_structure,
    load_structure,
)

__all__ = [
    "BUILTIN_STRUCTURES",
    "IdentityCheck",
    "IdentityName",
    "MAP_SIGNATURES",
    "PHASE_MAPS",
    "SemiWeakStructure",
    "StructureReport",
    "br_iota1",
    "br_iota2",
    "br_tau",
    "braided_structure",
    "coboundary_4cocycle",
    "coboundary_alpha0",
    "combine",
    "dump_structure",
    "load_structure",
    "pentagonator_structure",
    "random_normalized_cochain",
    "require_verified",
    "seeded_pentagonator",
    "semion_structure",
    "structure_from_spec",
    "trivial_structure",
    "verify_all",
    "verify_identity",
]
