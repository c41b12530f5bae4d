"""Three qubits under classical random telegraph noise: entanglement and genuine discord."""

from .evolution import (
    Coupling,
    EnsembleSpec,
    Family,
    ScenarioConfig,
    evolve_analytic,
    evolve_monte_carlo,
    initial_state,
)
from .linalg import NumericalError
from .noise import NoiseParams, RtnTrajectory, dephasing_factor, sample_trajectory

__version__ = "0.1.0"

__all__ = [
    "Coupling",
    "EnsembleSpec",
    "Family",
    "ScenarioConfig",
    "evolve_analytic",
    "evolve_monte_carlo",
    "initial_state",
    "NumericalError",
    "NoiseParams",
    "RtnTrajectory",
    "dephasing_factor",
    "sample_trajectory",
]
