"""Exact arithmetic toolkit around Hilbert class polynomials.

Core layers: integer and quadratic-form arithmetic, arbitrary-precision
modular functions, class and modular polynomial construction, finite
field machinery, and experiment drivers with a CLI front end.
"""

from .arith import (
    Factorization,
    factorize,
    is_discriminant,
    is_fundamental_discriminant,
    is_prime,
    kronecker,
    multiplicative_order,
    support_subset_int,
)
from .classpoly import (
    Prop23Report,
    cache_load,
    cache_store,
    crc64_xz,
    hilbert_class_polynomial,
    verify_prop23,
)
from .cyclomult import (
    cyclotomic_congruence_check,
    cyclotomic_polynomial,
    cyclotomic_value,
    lemma44_check,
)
from .errors import (
    CapExceeded,
    CorruptCache,
    FieldMismatch,
    FieldTooLarge,
    HcpkitError,
    NotFound,
    NotInert,
    PrecisionExhausted,
    PreconditionFailed,
    SupersingularInput,
    UnsupportedLevel,
)
from .ffexperiments import (
    CommonCmPoint,
    GrowthRow,
    compose_mod_p,
    find_common_cm_point,
    gcd_degree_growth,
    gcd_ffchar0,
)
from .finitefield import (
    Fq,
    FqElement,
    FqPoly,
    deuring_discriminants,
    fq_context,
    frobenius_trace,
    lift_poly,
    michel_counts,
    poly_gcd,
    poly_pow_mod,
    roots_in,
    supersingular_count,
    supersingular_polynomial,
)
from .harness import (
    ExperimentRecord,
    gcd_growth_rational,
    ordinary_scan,
    singular_moduli,
    support_scan_cyclotomic,
    support_scan_modular,
    support_scan_multiplicative,
    support_subset_poly,
    write_csv,
    write_json,
)
from .intpoly import IntPolynomial
from .modfunc import j_tau, required_precision
from .modpoly import (
    BivarIntPolynomial,
    kronecker_congruence_check,
    modular_polynomial,
)
from .qfield import (
    PHI,
    SQRT5,
    QuadIntEl,
    SupportPairReport,
    divmod_euclid,
    euclidean_gcd,
    evaluate_at,
    support_subset,
    verify_thm54,
)
from .quadforms import QuadForm, class_number, inv_a_sum, reduced_forms, unit_group_order

__version__ = "0.1.0"

__all__ = [
    "BivarIntPolynomial",
    "CapExceeded",
    "CommonCmPoint",
    "CorruptCache",
    "ExperimentRecord",
    "Factorization",
    "FieldMismatch",
    "FieldTooLarge",
    "Fq",
    "FqElement",
    "FqPoly",
    "GrowthRow",
    "HcpkitError",
    "IntPolynomial",
    "NotFound",
    "NotInert",
    "PHI",
    "PrecisionExhausted",
    "PreconditionFailed",
    "Prop23Report",
    "QuadForm",
    "QuadIntEl",
    "SQRT5",
    "SupersingularInput",
    "SupportPairReport",
    "UnsupportedLevel",
    "cache_load",
    "cache_store",
    "class_number",
    "compose_mod_p",
    "crc64_xz",
    "cyclotomic_congruence_check",
    "cyclotomic_polynomial",
    "cyclotomic_value",
    "deuring_discriminants",
    "divmod_euclid",
    "euclidean_gcd",
    "evaluate_at",
    "factorize",
    "find_common_cm_point",
    "fq_context",
    "frobenius_trace",
    "gcd_degree_growth",
    "gcd_ffchar0",
    "gcd_growth_rational",
    "hilbert_class_polynomial",
    "inv_a_sum",
    "is_discriminant",
    "is_fundamental_discriminant",
    "is_prime",
    "j_tau",
    "kronecker",
    "kronecker_congruence_check",
    "lemma44_check",
    "lift_poly",
    "michel_counts",
    "modular_polynomial",
    "multiplicative_order",
    "ordinary_scan",
    "poly_gcd",
    "poly_pow_mod",
    "reduced_forms",
    "required_precision",
    "roots_in",
    "singular_moduli",
    "supersingular_count",
    "supersingular_polynomial",
    "support_scan_cyclotomic",
    "support_scan_modular",
    "support_scan_multiplicative",
    "support_subset",
    "support_subset_int",
    "support_subset_poly",
    "unit_group_order",
    "verify_prop23",
    "verify_thm54",
    "write_csv",
    "write_json",
]
