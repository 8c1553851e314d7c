"""Exact decision procedures for kernels sharing all principal minors.

Two kernels on the same finite labelled set are compared minor-by-minor in
exact arithmetic (rationals or GF(p)); when they agree and both are
nondegenerate, the diagonal change of variables (and optional flip) relating
them is recovered constructively and re-verified.  Seeded generators,
brute-force oracles and a counterexample search round out the toolkit.
"""

from .classd import (
    ALIGNED_ZERO_BACKWARD,
    ALIGNED_ZERO_FORWARD,
    ALL_NONZERO,
    ALL_ZERO,
    SWAPPED_ZERO_BACKWARD,
    SWAPPED_ZERO_FORWARD,
    ClassDReport,
    check_class_d,
    edge_pattern,
    zero_pattern_validate,
)
from .classify import (
    CaseLabel,
    CaseTable,
    CycleClassification,
    GlobalCase,
    classify_3cycle,
    four_point_audit,
    global_case,
    is_zero_edge,
)
from .equivalence import (
    EquivalenceReport,
    PrecheckReport,
    check_equivalence,
    quick_consequences,
    trace_identity_audit,
)
from .errors import (
    BranchUnavailable,
    ClassDViolation,
    DetEquivError,
    FieldMismatch,
    GenerationBudgetExceeded,
    Inconsistent,
    LabelMismatch,
    MixedCases,
    NotEquivalent,
    NotRecoverable,
    ProblematicPair,
    VerificationFailed,
)
from .fields import PrimeField, Rationals, determinant, field_from_doc, is_prime
from .kernels import (
    Cocycle,
    Cycle,
    Gauge,
    Kernel,
    cycle_product,
    enumerate_3cycles,
    require_same_points,
    reversed_cycle_product,
)
from .lab import (
    GroundTruth,
    InstanceSpec,
    OracleResult,
    brute_force_diagonal_similar,
    gen_instance,
    perturb,
    search_counterexample,
)
from .recovery import (
    RecoveryResult,
    build_cocycle_case1,
    build_cocycle_case2,
    consistency_audit,
    extract_gauge,
    recover,
    verify_cocycle,
)

__version__ = "0.1.0"

__all__ = [
    "ALIGNED_ZERO_BACKWARD",
    "ALIGNED_ZERO_FORWARD",
    "ALL_NONZERO",
    "ALL_ZERO",
    "BranchUnavailable",
    "CaseLabel",
    "CaseTable",
    "ClassDReport",
    "ClassDViolation",
    "Cocycle",
    "CycleClassification",
    "Cycle",
    "DetEquivError",
    "EquivalenceReport",
    "FieldMismatch",
    "Gauge",
    "GenerationBudgetExceeded",
    "GlobalCase",
    "GroundTruth",
    "Inconsistent",
    "InstanceSpec",
    "Kernel",
    "LabelMismatch",
    "MixedCases",
    "NotEquivalent",
    "NotRecoverable",
    "OracleResult",
    "PrecheckReport",
    "PrimeField",
    "ProblematicPair",
    "Rationals",
    "RecoveryResult",
    "SWAPPED_ZERO_BACKWARD",
    "SWAPPED_ZERO_FORWARD",
    "VerificationFailed",
    "brute_force_diagonal_similar",
    "build_cocycle_case1",
    "build_cocycle_case2",
    "check_class_d",
    "check_equivalence",
    "classify_3cycle",
    "consistency_audit",
    "cycle_product",
    "determinant",
    "edge_pattern",
    "enumerate_3cycles",
    "extract_gauge",
    "field_from_doc",
    "four_point_audit",
    "gen_instance",
    "global_case",
    "is_prime",
    "is_zero_edge",
    "perturb",
    "quick_consequences",
    "recover",
    "require_same_points",
    "reversed_cycle_product",
    "search_counterexample",
    "trace_identity_audit",
    "verify_cocycle",
    "zero_pattern_validate",
]
