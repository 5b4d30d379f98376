"""Classification of Moebius transformations of the extended complex plane up
to conjugacy and topological conjugacy, with a parallel decision route
through linear operators on C^2."""

from .errors import (
    DegenerateInputError,
    IdentityMapError,
    IndeterminateError,
    InputError,
    InvalidInputError,
    MobiusError,
    SingularMapError,
    UnsupportedSizeError,
    VerificationError,
)
from .extended_plane import INF, Infinity, Point, chordal_distance, format_point, parse_point
from .moebius import EPS_UNIT, MoebiusMap, UnimodularMatrix, format_map, parse_map
from .operators import (
    OperatorMatrix,
    SpectralPartition,
    diag_unimodular_decision,
    moebius_operator_equiv,
    parse_matrix,
    root_of_unity,
    similar,
    spectral_partition,
    topo_conjugate_complex,
    topo_conjugate_real,
)
from .orbit import orbit_points, render_orbit_svg, write_orbit_csv
from .spectral import (
    ConjugacyClass,
    EigenPair,
    FixedPointSet,
    MultiplierPair,
    canonical_conjugacy_form,
    classify,
    conjugation_residual,
    conjugator,
    eigenvalues,
    fixed_points,
    jordan_form,
    multipliers,
    preferred_multiplier,
)
from .topo import (
    TopoDecision,
    criterion_eigen,
    criterion_multiplier,
    criterion_trace,
    scaling_topo_conjugate,
    topo_canonical_form,
    topo_conjugate,
)

__version__ = "0.1.0"
