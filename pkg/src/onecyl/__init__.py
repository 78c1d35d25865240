"""One-cylinder half-translation surfaces via generalized permutations.

The package encodes flat surfaces whose horizontal foliation is a single
metric cylinder by two-row generalized permutations, and mechanizes the
combinatorics attached to them: singularity patterns, irreducibility
conditions, integer suspensions with their vertical separatrices and
cylinders, handle sums, and connected-component bounds for small strata
of quadratic differentials.
"""

from .genperm import (
    CALIBRATED_SYM,
    DEFAULT_SYM,
    GeneralizedPermutation,
    SymmetryGroup,
)
from .strata import (
    ComponentTag,
    SingularityPattern,
    hyperelliptic_rep,
    irreducible_rep,
    match_component,
    singularity_pattern,
    smooth_marked_points,
    stratum_info,
)
from .conditions import (
    RedDecomposition,
    Verdict,
    WeakSplit,
    condition_star,
    is_irreducible,
    red_condition,
    weak_reducibility,
)
from .suspension import (
    SquareTiledCover,
    admissible_feasible,
    all_ones,
    build_cover,
    cylinder_decomposition,
    gamma_mult_one_evidence,
    minimal_admissible,
    sample_admissible,
    separatrix_spectrum,
    simple_cylinder_angle,
    sl2z_orbit,
    vertical_permutation,
)
from .classify import (
    ComponentReport,
    MoveConfig,
    bubble,
    component_report,
    enumerate_stratum,
    enumerate_type,
    excise_simple_cylinder,
    excisions,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
