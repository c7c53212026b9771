"""16-QAM / 64-QAM near-complementary OFDM sequences with low PMEPR.

Construct codewords from quadratic-path functions plus constrained offsets,
enumerate the full families, and verify the star-operator and PMEPR bounds
(2.4 for 16-QAM; 3.62 / 2.48 for the two 64-QAM offset kinds) by direct
computation.
"""

from .algebra import bits_of, canonical_permutations, index_of
from .analysis import (
    CcdfCurve,
    CorrelationProfile,
    EnvelopeConfig,
    autocorr,
    ccdf,
    envelope_mean_power,
    pep,
    pmepr,
    random_baseline,
    star,
    star_bound_check,
)
from .constellation import (
    ComplexSequence,
    LatticeSymbol,
    Scale,
    average_energy,
    qam16_map,
    qam64_map,
)
from .constructions import (
    BOUND_QAM16,
    BOUND_TYPE1,
    BOUND_TYPE2,
    CodewordRecord,
    ConstructionParams,
    Modulation,
    Offset16,
    Offset64,
    OffsetConstraintError,
    OffsetKind,
    build,
    build_16qam,
    build_64qam,
    classify_offset64,
    component_values,
    count_enumerated,
    enumerate_family,
    family_size,
    list_offsets16,
    list_offsets64,
    offset16_eval,
    star_bound,
)
from .gbf import PathQuadratic, evaluate, polyphase, primed, psi
from .verification import (
    example_regression,
    lemma1_residual,
    lemma2_residuals,
    lemma3_residuals,
    lemma_sweep,
    theorem_bound_audit,
)

__version__ = "0.1.0"

__all__ = [
    "BOUND_QAM16",
    "BOUND_TYPE1",
    "BOUND_TYPE2",
    "CcdfCurve",
    "CodewordRecord",
    "ComplexSequence",
    "ConstructionParams",
    "CorrelationProfile",
    "EnvelopeConfig",
    "LatticeSymbol",
    "Modulation",
    "Offset16",
    "Offset64",
    "OffsetConstraintError",
    "OffsetKind",
    "PathQuadratic",
    "Scale",
    "autocorr",
    "average_energy",
    "bits_of",
    "build",
    "build_16qam",
    "build_64qam",
    "canonical_permutations",
    "ccdf",
    "classify_offset64",
    "component_values",
    "count_enumerated",
    "enumerate_family",
    "envelope_mean_power",
    "evaluate",
    "example_regression",
    "family_size",
    "index_of",
    "lemma1_residual",
    "lemma2_residuals",
    "lemma3_residuals",
    "lemma_sweep",
    "list_offsets16",
    "list_offsets64",
    "offset16_eval",
    "pep",
    "pmepr",
    "polyphase",
    "primed",
    "psi",
    "qam16_map",
    "qam64_map",
    "random_baseline",
    "star",
    "star_bound",
    "star_bound_check",
    "theorem_bound_audit",
]
