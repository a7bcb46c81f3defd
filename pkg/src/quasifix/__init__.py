"""Exact verification of generalized distance spaces and their dynamics.

Everything here computes over :class:`fractions.Fraction`; verdicts are
window-scoped and deterministic, so reports can be frozen into tests and
compared byte-for-byte across worker counts.
"""

from .axioms import (
    DEFAULT_DELTA_GRID,
    FAILS,
    HOLDS,
    AxiomReport,
    check_core_axioms,
    check_F,
    check_H,
    check_N,
    check_relaxed_triangle,
    check_triangle,
)
from .chains import (
    DistanceMatrix,
    associated_functional,
    distance_matrix,
    matrix_space,
    symmetrize,
)
from .core import (
    ONE,
    ZERO,
    DistanceSpace,
    Domain,
    DomainError,
    FormatError,
    Point,
    QuasifixError,
    Scalar,
    Window,
    WindowError,
    ball_contains,
    distance_rows,
    enumerate_window,
    load_space,
    parse_point,
    scalar_from_text,
    scalar_to_text,
    space_from_dict,
    validate_window,
)
from .dynamics import (
    DEFAULT_HORIZON,
    DEFAULT_TOL,
    ConvergenceVerdict,
    FixedPointReport,
    HarnessConfig,
    LipschitzReport,
    OrbitTrace,
    SelfMap,
    TheoremReport,
    VerdictEntry,
    analyze_convergence,
    fixed_and_periodic_points,
    lipschitz_estimate,
    picard_orbit,
    recurrent_orbit_points,
    theorem_harness,
)
from .gallery import (
    GALLERY_KEYS,
    CheckOutcome,
    GalleryInstance,
    GalleryReport,
    InstanceArtifacts,
    IntervalTable,
    build_intervals,
    default_instances,
    gallery_instance,
    harmonic_sum,
    verify_gallery,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "CheckOutcome",
    "ConvergenceVerdict",
    "DEFAULT_DELTA_GRID",
    "DEFAULT_HORIZON",
    "DEFAULT_TOL",
    "DistanceMatrix",
    "DistanceSpace",
    "Domain",
    "DomainError",
    "FAILS",
    "FixedPointReport",
    "FormatError",
    "GALLERY_KEYS",
    "GalleryInstance",
    "GalleryReport",
    "HOLDS",
    "HarnessConfig",
    "InstanceArtifacts",
    "IntervalTable",
    "LipschitzReport",
    "ONE",
    "OrbitTrace",
    "Point",
    "QuasifixError",
    "Scalar",
    "SelfMap",
    "TheoremReport",
    "VerdictEntry",
    "Window",
    "WindowError",
    "ZERO",
    "analyze_convergence",
    "associated_functional",
    "ball_contains",
    "build_intervals",
    "check_F",
    "check_H",
    "check_N",
    "check_core_axioms",
    "check_relaxed_triangle",
    "check_triangle",
    "default_instances",
    "distance_matrix",
    "distance_rows",
    "enumerate_window",
    "fixed_and_periodic_points",
    "gallery_instance",
    "harmonic_sum",
    "lipschitz_estimate",
    "load_space",
    "matrix_space",
    "parse_point",
    "picard_orbit",
    "recurrent_orbit_points",
    "scalar_from_text",
    "scalar_to_text",
    "space_from_dict",
    "symmetrize",
    "theorem_harness",
    "validate_window",
    "verify_gallery",
]
