"""Exact-arithmetic toolkit for sumsets, difference sets, compressions and
extremal search on finite rational point sets."""

from ._version import __version__
from .bounds import (
    BELOW_GUARANTEED_SIZE,
    CLAIM_IDS,
    CONSISTENT,
    COUNTEREXAMPLE,
    VACUOUS,
    ClaimReport,
    asym_error_constant,
    below_sqrt_threshold,
    bound_value,
    check_claim,
    structure_diagnose,
)
from .compression import CompressionSpec, CompressionTrace, compress, compress_pair, reduce
from .constructions import (
    dlines_general_position,
    freiman_aps,
    stan_doubling_tight,
    stanchescu_dk,
)
from .incidence import (
    Direction,
    Hyperplane,
    LinePartition,
    hyperplane_slices,
    line_partition,
    major_hyperplane,
    min_line_cover,
    project_along,
    supporting_hyperplanes,
)
from .pointset import (
    AffineMap,
    PointSet,
    Rational,
    affine_dimension,
    apply_affine,
    difference_set,
    negate,
    sumset,
    translate,
)
from .search import (
    BudgetExceededError,
    SearchResult,
    SearchSpec,
    canonical_form,
    exhaustive_min_diff,
    random_probe,
)
from .verify import VerifySuite, verify_battery

__all__ = [
    "__version__",
    "AffineMap",
    "BELOW_GUARANTEED_SIZE",
    "BudgetExceededError",
    "CLAIM_IDS",
    "CONSISTENT",
    "COUNTEREXAMPLE",
    "ClaimReport",
    "CompressionSpec",
    "CompressionTrace",
    "Direction",
    "Hyperplane",
    "LinePartition",
    "PointSet",
    "Rational",
    "SearchResult",
    "SearchSpec",
    "VACUOUS",
    "VerifySuite",
    "affine_dimension",
    "apply_affine",
    "asym_error_constant",
    "below_sqrt_threshold",
    "bound_value",
    "canonical_form",
    "check_claim",
    "compress",
    "compress_pair",
    "difference_set",
    "dlines_general_position",
    "exhaustive_min_diff",
    "freiman_aps",
    "hyperplane_slices",
    "line_partition",
    "major_hyperplane",
    "min_line_cover",
    "negate",
    "project_along",
    "random_probe",
    "reduce",
    "stan_doubling_tight",
    "stanchescu_dk",
    "structure_diagnose",
    "sumset",
    "supporting_hyperplanes",
    "translate",
    "verify_battery",
]
