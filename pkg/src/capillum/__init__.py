"""Illuminating 3-dimensional cap bodies with at most six directions.

Certified integer-programming bound on the expected number of caps left
unlit by a random tetrahedron, plus constructive search and verification
of illuminating direction sets.
"""

from .capbody import CapBody, Vertex, cap_of, fifth_largest_radius_bound, from_caps, k0, vertex_of
from .cover import lune_area, union_measure, union_measure_mc, unlit_probability
from .ilp import IlpModel, IlpSolution, build_model, certify, solve_exact, solve_float
from .illumination import DirectionSet, illuminate, positive_hull_spans, unlit_caps, verify_illumination
from .sphere import Cap, Rotation, UnitVector, cap_contains, cap_measure, geodesic_distance, tetrahedron

__version__ = "0.1.0"

__all__ = [
    "Cap", "CapBody", "DirectionSet", "IlpModel", "IlpSolution", "Rotation", "UnitVector", "Vertex",
    "build_model", "cap_contains", "cap_measure", "cap_of", "certify", "fifth_largest_radius_bound",
    "from_caps", "geodesic_distance", "illuminate", "k0", "lune_area", "positive_hull_spans",
    "solve_exact", "solve_float", "tetrahedron", "union_measure", "union_measure_mc", "unlit_caps",
    "unlit_probability", "verify_illumination", "vertex_of",
]
