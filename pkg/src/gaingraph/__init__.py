"""Spectra, switching classes and nonnegative-real-part normalization of complex unit gain graphs."""

from .errors import (
    CapacityError,
    ConnectivityError,
    DomainError,
    GainGraphError,
    InvariantError,
    NumericalError,
    ParseError,
    ShapeError,
    UnsupportedClassError,
)
from .graph_core import (
    Digraph,
    Gain,
    GainGraph,
    SimpleGraph,
    SwitchingFunction,
    apply_switching,
    canonical_angle,
    has_nonneg_real_part,
    negate,
)
from .gnrp import gnrp, gnrp_dep, gnrp_k4, gnrp_vertex_disjoint
from .hermitian_k import (
    KHermitianParams,
    StructurePartition,
    build_structure,
    gain_graph_of,
    hk_bounds,
    hk_matrix,
    verify_structure,
)
from .spanning import fundamental_cycles, normal_spanning_tree, suitable_orientation
from .spectral import (
    adjacency_matrix,
    bounds_report,
    char_poly_elementary,
    char_poly_from_matrix,
    eigenvalues,
    gain_spectrum,
    real_cycle_gains_equal,
    rho_equals_delta,
    spectral_radius,
)
from .structure import classify, detect_k4_prime, enumerate_cycles, fundamental_subgraphs, has_dep, is_in_Dn
from .switching import (
    are_switching_equivalent,
    class_signature,
    conjugate_signature,
    construct_representative,
    is_balanced,
)

__version__ = "0.1.0"
