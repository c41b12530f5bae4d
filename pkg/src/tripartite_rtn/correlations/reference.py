"""Closed-form negativity and witness curves for the four noise scenarios.

These are independent of the eigenvalue pipeline and serve as regression
oracles for it.  W-family negativity has no compact form and returns ``None``.
"""
from __future__ import annotations

import enum
import math

from ..evolution import Coupling, Family, ScenarioConfig
from ..noise import dephasing_factor


class Measure(str, enum.Enum):
    NEGATIVITY = "negativity"
    WITNESS = "witness"


def ghz_local_negativity(r: float, g2: float) -> float:
    return 0.25 * max(0.0, 4 * r * g2**2 - (1 - r))


def ghz_local_witness(r: float, g2: float) -> float:
    return -0.25 * (3 * r * g2**2 - (3 - r) / 2)


def ghz_common_negativity(r: float, g4: float) -> float:
    return 0.25 * max(0.0, 2 * r * math.sqrt(2 * (g4**2 + 1)) - (1 - r))


def ghz_common_witness(r: float, g4: float) -> float:
    return -0.5 * (0.75 * r * g4 - (0.75 - r))


def ghz_common_saturation(r: float) -> tuple[float, float]:
    """Long-time (negativity, -<W_GHZ>) for the shared fluctuator, any gamma."""
    return 0.25 * max(0.0, (2 * math.sqrt(2) + 1) * r - 1), r / 2 - 3 / 8


def w_local_witness(r: float, g2: float) -> float:
    return -(r * (7 * g2**3 + 5 * g2**2 + 5 * g2 + 4) - 13) / 24


def w_common_witness(r: float, g2: float, g4: float, g6: float) -> float:
    return -(r / 32 * (9 * g6 + 6 * g4 + 7 * g2 + 6) - 13 / 24)


# detection thresholds at t = 0
GHZ_NEGATIVITY_THRESHOLD = 1 / 5
GHZ_WITNESS_THRESHOLD = 3 / 7
W_WITNESS_THRESHOLD = 13 / 21
GHZ_COMMON_SURVIVAL_THRESHOLD = 3 / 4


def closed_form_reference(cfg: ScenarioConfig, measure: Measure | str, t: float) -> float | None:
    """Closed-form N3 or witness expectation at absolute time ``t``.

    ``t = math.inf`` gives the long-time limit.  The witness is the one paired
    with the family (GHZ_W2 for GHZ, W_W1 for W).
    """
    measure = Measure(measure)
    p, r = cfg.noise, cfg.r

    def g(n):
        return 0.0 if math.isinf(t) else dephasing_factor(n, p, t)

    if cfg.family is Family.GHZ:
        if cfg.coupling is Coupling.LOCAL:
            f = ghz_local_negativity if measure is Measure.NEGATIVITY else ghz_local_witness
            return f(r, g(2))
        f = ghz_common_negativity if measure is Measure.NEGATIVITY else ghz_common_witness
        return f(r, g(4))
    if measure is Measure.NEGATIVITY:
        return None
    if cfg.coupling is Coupling.LOCAL:
        return w_local_witness(r, g(2))
    return w_common_witness(r, g(2), g(4), g(6))
