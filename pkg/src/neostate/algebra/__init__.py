"""精确代数基础：有限群、分圆数与整数线性代数"""
from neostate.algebra.cyclotomic import Cyclotomic, from_exponent_counts, root_of_unity
from neostate.algebra.groups import FiniteAbelianGroup, FiniteGroup, cyclic_group, direct_product
from neostate.algebra.smith import (
    KernelGroup,
    ModSolution,
    ModularSolver,
    SmithDecomposition,
    smith_normal_form,
    solve_mod,
)

__all__ = [
    "Cyclotomic",
    "FiniteAbelianGroup",
    "FiniteGroup",
    "KernelGroup",
    "ModSolution",
    "ModularSolver",
    "SmithDecomposition",
    "cyclic_group",
    "direct_product",
    "from_exponent_counts",
    "root_of_unity",
    "smith_normal_form",
    "solve_mod",
]
