"""Exact Artinian reductions of face rings of realized simplicial complexes.

The package decides the Lefschetz property for triangulated 2-spheres over
exact rational arithmetic, detects equators (coplanar embedded cycles in the
1-skeleton), and can construct an explicit Lefschetz element by peeling
vertices whenever no equator blocks the construction.
"""

from .artinian import (
    LinearForm,
    Presentation,
    check_star_link_isomorphisms,
    dim_A,
    hilbert_function,
    monomial_basis,
    mult_map,
    pairing_matrix,
    power_mult_rank,
    presentation,
    restriction_map,
)
from .complexes import (
    DISK2,
    EMPTY,
    OTHER,
    SPHERE2,
    SimplicialComplex,
    SurfaceClass,
    boundary_complex,
    classify_surface,
    split_into_disks,
    stellar_subdivide,
)
from .geometry import (
    Realization,
    is_proper,
    on_hyperplane,
    primitive_normal,
    project_link,
    random_realization,
    span_rank,
)

__version__ = "0.1.0"
