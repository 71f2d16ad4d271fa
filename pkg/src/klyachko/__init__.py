"""Exact-arithmetic toolkit for torus-equivariant bundles on projective space.

Bundles are given by one decreasing subspace filtration per ray of the
fan.  The package computes their sheaf cohomology (two independent
routes), Chern data, two-term free resolutions, and the full census of
non-split rank-2 bundles on P^2 whose intermediate cohomology vanishes
along every twist by O(dt).
"""

from .bundles import (
    Filtration,
    ShiftingIndices,
    ToricBundle,
    family_is_coordinatized,
    line_bundle,
    rank2_bundle,
    structure_sheaf,
    tangent_bundle,
)
from .bundleio import (
    BundleParseError,
    bundle_from_dict,
    bundle_to_dict,
    dumps_bundle,
    load_bundle_file,
    loads_bundle,
)
from .census import (
    CensusEntry,
    brute_force_census,
    count_closed,
    count_recurrence,
    classify_type,
    enumerate_si,
    is_d_acm_fast,
    is_d_acm_oracle,
    normalize,
    shifting_index_box,
)
from .chern import ChernData, c1, chern_total
from .cohomology import (
    CohomologyTable,
    cohomology_table,
    euler_char,
    graded_cohomology,
    graded_component,
    h,
    hp_chain,
    hp_closed,
    support_box,
)
from .fan import P2, ProjectiveFan, SignedFace, projective_fan
from .linalg import Subspace, kron, matrix_rank, rref
from .resolution import (
    PerlingResolution,
    ResolutionReport,
    chi_line_bundle,
    format_sequence,
    perling_resolution,
    verify_resolution,
)

__version__ = "0.1.0"

__all__ = [
    "BundleParseError",
    "CensusEntry",
    "ChernData",
    "CohomologyTable",
    "Filtration",
    "P2",
    "PerlingResolution",
    "ProjectiveFan",
    "ResolutionReport",
    "ShiftingIndices",
    "SignedFace",
    "Subspace",
    "ToricBundle",
    "brute_force_census",
    "bundle_from_dict",
    "bundle_to_dict",
    "c1",
    "chern_total",
    "chi_line_bundle",
    "classify_type",
    "cohomology_table",
    "count_closed",
    "count_recurrence",
    "dumps_bundle",
    "enumerate_si",
    "euler_char",
    "family_is_coordinatized",
    "format_sequence",
    "graded_cohomology",
    "graded_component",
    "h",
    "hp_chain",
    "hp_closed",
    "is_d_acm_fast",
    "is_d_acm_oracle",
    "kron",
    "line_bundle",
    "load_bundle_file",
    "loads_bundle",
    "matrix_rank",
    "normalize",
    "perling_resolution",
    "projective_fan",
    "rank2_bundle",
    "rref",
    "shifting_index_box",
    "structure_sheaf",
    "support_box",
    "tangent_bundle",
    "verify_resolution",
]
