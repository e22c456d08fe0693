"""Exact computations with limit mixed Hodge structures of index-one degenerations."""

from .boundary import boundary_point, primitive_numbers, reference_vs_limit_graded
from .cohomology_rings import chern_hypersurface, coker_rho_rank, load_ring
from .degeneration import (assemble_central_fiber, assemble_segre_central_fiber,
                           clemens_schmid_check, e1_to_e2, involution_pairing_model,
                           quadric_table)
from .linalg import BilinearForm, Matrix, Scalar, Subspace
from .mixed_hodge import (HodgeFiltration, deligne_splitting, r_split_delta, validate_mhs,
                          validate_pmhs, validate_pure_polarized)
from .severi import get_datum, limit_mhs_summary, load_catalogue, luna_slice_check
from .sl2_orbit import check_orbit_correspondence, complete_sl2_triple, nilpotent_orbit_eval
from .weight_filtration import CenteredWeightFiltration, monodromy_weight_filtration
from .weyl import rep_dimension

__version__ = "0.1.0"

__all__ = [
    "BilinearForm", "CenteredWeightFiltration", "HodgeFiltration", "Matrix", "Scalar",
    "Subspace", "assemble_central_fiber", "assemble_segre_central_fiber", "boundary_point",
    "check_orbit_correspondence", "chern_hypersurface", "clemens_schmid_check",
    "coker_rho_rank", "complete_sl2_triple", "deligne_splitting", "e1_to_e2", "get_datum",
    "involution_pairing_model", "limit_mhs_summary", "load_catalogue", "load_ring",
    "luna_slice_check", "monodromy_weight_filtration", "nilpotent_orbit_eval",
    "primitive_numbers", "quadric_table", "r_split_delta", "reference_vs_limit_graded",
    "rep_dimension", "validate_mhs", "validate_pmhs", "validate_pure_polarized",
]
