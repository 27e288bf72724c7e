"""Exact conic decompositions of rational polytopes.

Decomposes polytopes into cones four ways (alternating tangent-cone sum,
vertex generating functions, polar decomposition plain and weighted, and
polar decomposition at non-simple vertices via regular triangulations of
normal cones), counts lattice points by specializing generating functions,
and machine-verifies every identity against brute-force oracles.
"""

from .corpus import CorpusEntry, build_corpus, pentagon_cone, pyramid
from .deform import (LiftedTriangulation, LocalContribution,
                     compatible_decomposition, compatible_from_dual,
                     delta_invariance_check, local_contribution,
                     local_contributions, nonsimple_decomposition,
                     normal_cone_rays, positive_conic_check, t_sigma,
                     uniqueness_crosscheck, vertex_triangulation)
from .genfunc import (GFTerm, RationalGF, brion_gf, count_lattice_points,
                      enumerate_parallelepiped, gf_brute_force,
                      gf_equal_as_functions, gf_of_indicator_sum, gf_of_piece,
                      gf_pretty, gf_simplicial_cone, lattice_points,
                      make_term, specialize)
from .indicators import (IndicatorSum, LocallyClosedPiece, VerificationReport,
                         ZPoly, default_box, evaluate, gram_decomposition,
                         indicator_of_interior, indicator_of_polytope, piece,
                         verify_identity, verify_identity_exact,
                         weighted_indicator, whole_space_piece)
from .linalg import (determinant, frac, kernel_basis, mat_inverse, primitive,
                     rank, smith_normal_form, solve_linear)
from .polar import (GenericityError, SimplicityError, VertexPolarization,
                    is_generic, lv_decomposition, partition_check,
                    polarization, polarized_tangent_cone, rearrange_for_vertex,
                    weighted_lv_decomposition, weighted_polarized_piece_value)
from .polyhedra import (Cone, DegenerateInput, Face, Halfspace, Polytope,
                        center_at_barycenter, halfspace, is_simple_polytope,
                        is_simple_vertex, lineality_dim, normal_cone,
                        polar_dual, polytope_from_halfspaces,
                        polytope_from_vertices, tangent_cone)
from .triangulation import (DegenerateHeights, regular_triangulation,
                            triangulate_cone, triangulation_with_retries)

__all__ = [name for name in dir() if not name.startswith("_")]
