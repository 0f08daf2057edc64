"""有序三角剖分：验证、定向、同调与内置复形"""
from neostate.complex.builders import (
    BUILTIN_COMPLEXES,
    MODIFIERS,
    boundary_of_5simplex,
    boundary_of_simplex,
    complex_from_spec,
    cross_polytope_s4,
    kuhnel_cp2,
    product_with_circle,
    rp3,
)
from neostate.complex.homology import (
    GroupDescription,
    euler_characteristic,
    homology,
)
from neostate.complex.triangulation import (
    OrderedTriangulation,
    dump_triangulation,
    load_triangulation,
    random_permutation,
    relabel_vertices,
    reverse_orientation,
    validate,
)

__all__ = [
    "BUILTIN_COMPLEXES",
    "MODIFIERS",
    "GroupDescription",
    "OrderedTriangulation",
    "boundary_of_5simplex",
    "boundary_of_simplex",
    "complex_from_spec",
    "cross_polytope_s4",
    "dump_triangulation",
    "euler_characteristic",
    "homology",
    "kuhnel_cp2",
    "load_triangulation",
    "product_with_circle",
    "random_permutation",
    "relabel_vertices",
    "reverse_orientation",
    "rp3",
    "validate",
]
