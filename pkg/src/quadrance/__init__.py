"""Exact-arithmetic toolkit for quadrance geometry over odd prime power
fields: circles, polygons, association schemes, and the strongly regular
quadrance graph, each closed form checked against brute-force enumeration.
"""

__version__ = "0.1.0"

from .errors import (
    CoincidentCenters,
    DivisionByZero,
    EmptySubset,
    EvenCharacteristic,
    LengthMismatch,
    MalformedPartition,
    NotADivisor,
    NotPrime,
    NotStronglyRegular,
    NullClassInWrongField,
    QuadranceError,
    TooLarge,
    WrongResidueClass,
    ZeroArgument,
    ZeroQuadrance,
    ZeroQuadranceClass,
)
from .field import (
    CharPairCounts,
    CharPairReport,
    FieldCtx,
    FieldSpec,
    build_field,
    build_field_for_q,
    char_pair_counts,
    factor_prime_power,
    field_arith,
)
from .geometry import (
    ORIGIN,
    CircleSpec,
    Discriminant,
    Point,
    all_points,
    circle_points,
    companion_pair,
    count_admissible_k,
    discriminant,
    first_point_at,
    intersect_circles,
    intersection_by_enumeration,
    point_at,
    point_index,
    predicted_intersections,
    quadrance,
    square_status,
)
from .graph import (
    CliqueReport,
    QuadGraph,
    SrgParams,
    SubsetStats,
    all_lines,
    build_graph,
    conjecture_check,
    is_full_line,
    line_direction_character,
    max_clique,
    random_subset_trials,
    srg_params,
    subset_edge_stats,
)
from .polygon import (
    PolygonResult,
    build_polygon,
    canonical_cycle,
    quadrangle_feasibility_table,
    verify_polygon,
)
from .scheme import (
    ClassMatrix,
    IntersectionTensor,
    VerificationReport,
    build_quadrance_scheme,
    fuse_scheme,
    predicted_tensor,
    verify_scheme,
)
