"""Exact weight combinatorics for mod-p Hilbert modular forms.

Given the splitting behaviour of a prime p in a totally real field, this
package builds the embedding carousel, partial Hasse invariant weights, the
minimal/standard/Hasse cones with exact double-description conversion,
the greedy reduction and decomposition machinery, and the stratum-level
Picard torsion computations, all in exact integer/rational arithmetic.
"""

from .carousel import Carousel, Embedding, build_carousel, n_of, orbit, sigma, sigma_inv
from .cones import (
    HRepCone,
    MembershipCertificate,
    SplitEqualityReport,
    SubsetCertificate,
    VRepCone,
    cone_equal,
    cone_subset,
    contains,
    dd_h_to_v,
    dd_v_to_h,
    farkas_membership,
    hasse_cone,
    hasse_contains,
    min_cone,
    split_equality_report,
    std_cone,
)
from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    ForeignEmbedding,
    HasseConesError,
    InternalCheckError,
    InvariantError,
    MultiplierNotDividing,
    NotPMaximal,
    NotReducible,
    SchemaError,
    SingletonOrbit,
)
from .gfpoly import (
    MinPolySpec,
    ModPFactorization,
    dedekind_p_maximal,
    factor_mod_p,
    profile_from_minpoly,
)
from .hasse import (
    HasseMatrix,
    RationalVector,
    Weight,
    hasse_coordinates,
    hasse_lattice_index,
    hasse_matrix,
    hasse_weight,
)
from .profile import PrimeLocus, SplittingProfile, is_prime, parse_profile
from .reduction import (
    BudgetExceeded,
    Decomposition,
    InMinCone,
    ReductionOutcome,
    Vanishing,
    enumerate_min_decompositions,
    greedy_reduce,
    in_min_cone,
    make_decomposition,
    pareto_maximal_decompositions,
    reduce_step,
    reducible_directions,
)
from .strata import (
    PicardSummary,
    StratumLabel,
    closure_set,
    fibre_degree,
    invariant_factors,
    picard_relations,
    smith_normal_form,
    stratum_dimension,
    theorem_bridge,
    torsion_summary,
)

__version__ = "0.1.0"
