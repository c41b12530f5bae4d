from .entanglement import (
    WITNESSES,
    WitnessKind,
    bipartite_negativity,
    tripartite_negativity,
    witness_expectation,
)
from .entropic import (
    ConditionalEntropy,
    GenuineCorrelations,
    genuine_classical_j3,
    genuine_correlations,
    genuine_discord_d3,
    genuine_total_t3,
    is_permutation_symmetric,
    measured_conditional_entropy_pair,
    measured_conditional_entropy_single,
    mutual_information,
)
from .frames import MeasurementFrame, OptimizerSettings
from .reference import Measure, closed_form_reference, ghz_common_saturation

__all__ = [
    "WITNESSES",
    "WitnessKind",
    "bipartite_negativity",
    "tripartite_negativity",
    "witness_expectation",
    "ConditionalEntropy",
    "GenuineCorrelations",
    "genuine_classical_j3",
    "genuine_correlations",
    "genuine_discord_d3",
    "genuine_total_t3",
    "is_permutation_symmetric",
    "measured_conditional_entropy_pair",
    "measured_conditional_entropy_single",
    "mutual_information",
    "MeasurementFrame",
    "OptimizerSettings",
    "Measure",
    "closed_form_reference",
    "ghz_common_saturation",
]
