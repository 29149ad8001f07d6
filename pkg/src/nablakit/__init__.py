"""Non-degenerate resolutions of simplicial complexes, collapse
certificates with replay validation, integer homology, and finite towers
of simplicial maps."""

from .cells import (
    Cell,
    CellClass,
    CellComplex,
    cell_dim,
    cell_faces,
    cell_facets,
    cell_to_simplex,
    classify_cell,
    enumerate_cells,
    factor_vector,
)
from .collapse import (
    CollapseSequence,
    CollapseStep,
    OracleResult,
    ValidationReport,
    collapse_hat,
    collapse_q,
    greedy_oracle,
    hat_finish_labels,
    hat_start_labels,
    q_finish_cells,
    replay,
    restrict_to_base,
    validate_sequence,
)
from .complexes import (
    MonotoneMap,
    Poset,
    SimplicialComplex,
    SimplicialMap,
    Subdivision,
    barycentric,
    dim_map,
    face_poset,
    identity_map,
    image_subcomplex,
    induced_bary_map,
    is_nondegenerate,
    make_complex,
    order_complex,
    skeleton,
)
from .errors import BudgetExceeded, InputError, InternalError, ParameterError
from .homology import (
    ChainBoundary,
    HomologyProfile,
    boundary_matrices,
    cell_homology_q,
    homology,
    point_profile,
)
from .resolution import Resolution, boxtimes, lift, resolve
from .towers import (
    SubcomplexFamily,
    Tower,
    check_family,
    example_tower,
    factor_surjection,
    resolve_tower,
    skeleton_tower,
    surjectivize,
    trace_simplex,
)

__version__ = "0.1.0"
