"""Two-terminal reliability of K4 ladder networks.

Exact reliabilities by transfer matrices over any scalar ring, brute-force
oracles, generating functions and spectral forms, failure frequencies, and
the complex zeros of the reliability polynomial with their limiting curves.
"""

from .errors import (
    DegenerateSpectrum,
    NoConvergence,
    NoRecurrence,
    NoSegment,
    NotBracketed,
    PresetViolation,
    RelLadderError,
    SingularAmplitude,
    TooLarge,
    ZeroAvailability,
)
from .ladder import CellParams, ComponentGraph, LadderConfig, Preset, as_preset, expand_graph
from .oracle import oracle_enumerate, oracle_factoring
from .scalars import Dual, UniPoly, berlekamp_massey, minimal_recurrence
from .spectral import (
    FrequencyResult,
    RationalGF,
    SpectralForm,
    asymptotic_rate,
    closed_form_directed,
    closed_form_undirected_perfect,
    dominant_eigenvalue,
    failure_frequency,
    gf_extract,
    recurrence_family,
    spectral_form,
)
from .transfer import rel2, rel2_gradient, rel2_sequence, transfer_matrices
from .zeros import (
    LimitCurveSample,
    RealAccumulation,
    RootSet,
    asymptotic_loci,
    critical_predicate,
    critical_rho,
    find_roots,
    limit_curve,
    poly_in_p,
    real_accumulation,
    segment_endpoints_directed,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateSpectrum",
    "NoConvergence",
    "NoRecurrence",
    "NoSegment",
    "NotBracketed",
    "PresetViolation",
    "RelLadderError",
    "SingularAmplitude",
    "TooLarge",
    "ZeroAvailability",
    "FrequencyResult",
    "RationalGF",
    "SpectralForm",
    "asymptotic_rate",
    "closed_form_directed",
    "closed_form_undirected_perfect",
    "dominant_eigenvalue",
    "failure_frequency",
    "gf_extract",
    "recurrence_family",
    "spectral_form",
    "LimitCurveSample",
    "RealAccumulation",
    "RootSet",
    "asymptotic_loci",
    "critical_predicate",
    "critical_rho",
    "find_roots",
    "limit_curve",
    "poly_in_p",
    "real_accumulation",
    "segment_endpoints_directed",
    "CellParams",
    "ComponentGraph",
    "LadderConfig",
    "Preset",
    "as_preset",
    "expand_graph",
    "oracle_enumerate",
    "oracle_factoring",
    "Dual",
    "UniPoly",
    "berlekamp_massey",
    "minimal_recurrence",
    "rel2",
    "rel2_gradient",
    "rel2_sequence",
    "transfer_matrices",
]
