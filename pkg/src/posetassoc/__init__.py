"""Exact half-space realizations of poset associahedra and affine poset cyclohedra."""

from .affine import (
    AffinePoset,
    AffineTube,
    affine_alpha,
    affine_chain,
    affine_vertex_of_tubing,
    build_affine_poset,
    build_cyclohedron,
    enumerate_affine_tube_orbits,
    enumerate_maximal_affine_tubings,
    is_affine_proper_tubing,
)
from .errors import PosetAssocError
from .oracle import (
    brute_force_vertices,
    feasible_with_equalities,
    sample_order_cone,
    verify_affine_realization,
    verify_realization,
)
from .poset import (
    Poset,
    build_poset,
    chain,
    connected_posets,
    contract,
    convex_hull,
    is_connected,
    is_convex,
    is_proper_tube,
    is_tube,
)
from .realization import (
    FHVector,
    HalfSpaceSystem,
    LinearFunctional,
    alpha,
    build_associahedron,
    epsilon_realization,
    evaluate,
    f_vector,
    h_vector_by_outdegree,
    order_polytope,
    stanley_normalized,
    strictly_interior,
    threshold,
    vertex_of_tubing,
)
from .tubings import (
    Tube,
    enumerate_maximal_tubings,
    enumerate_proper_tubes,
    enumerate_proper_tubings,
    is_proper_tubing,
    tube_precedes,
    tubes_compatible,
    tubings_adjacent,
)

__version__ = "0.1.0"
