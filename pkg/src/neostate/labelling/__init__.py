"""可容许标号：平坦 G 标号、半平坦 H 方程组与流式枚举"""
from neostate.labelling.flat import (
    component_count,
    count_flat_g,
    enumerate_flat_g,
    flat_g_chunks,
    spanning_forest_edges,
)
from neostate.labelling.hsystem import (
    CoboundarySystem,
    HSolutionSpace,
    coboundary_matrix,
    coboundary_system,
    solve_h,
)
from neostate.labelling.stream import (
    Labelling,
    LabellingStream,
    count_labellings,
    enumerate_labellings,
)

__all__ = [
    "CoboundarySystem",
    "HSolutionSpace",
    "Labelling",
    "LabellingStream",
    "coboundary_matrix",
    "coboundary_system",
    "component_count",
    "count_flat_g",
    "count_labellings",
    "enumerate_flat_g",
    "enumerate_labellings",
    "flat_g_chunks",
    "solve_h",
    "spanning_forest_edges",
]
