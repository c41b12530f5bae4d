"""Random telegraph noise: averaged phase factors, trajectories, propagators.

A fluctuator eta(t) flips between +1 and -1 at Poisson rate ``gamma``; a qubit
coupled with strength ``nu`` picks up the phase ``phi(t) = -nu * int_0^t eta``.
The initial sign is drawn from the stationary distribution (+1 or -1 with equal
probability).

Random numbers are produced in fixed-size blocks of trajectories.  Block ``b``
of a run with seed ``s`` is generated from ``SeedSequence([s, b])``, so
trajectory ``k`` depends on ``(s, k)`` only and blocks can be generated in any
order or on any worker.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import I2, SIGMA_X

BLOCK_SIZE = 4096
DEGENERATE_RTOL = 1e-9


@dataclass(frozen=True)
class NoiseParams:
    """Switching rate ``gamma`` and coupling ``nu`` (same inverse-time unit).

    ``epsilon`` is the bare qubit energy.  It only contributes a global phase
    to the propagator and is carried for completeness; it must be 0 here.
    """

    gamma: float
    nu: float = 1.0
    epsilon: float = 0.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if not self.nu > 0:
            raise ValueError(f"nu must be positive, got {self.nu}")
        if self.epsilon != 0:
            raise ValueError("nonzero epsilon is not supported (global phase only)")

    @classmethod
    def from_ratio(cls, gamma_over_nu: float, nu: float = 1.0) -> "NoiseParams":
        return cls(gamma=gamma_over_nu * nu, nu=nu)


@dataclass(frozen=True)
class RtnTrajectory:
    initial_sign: int
    switch_times: tuple[float, ...]
    t_max: float

    def __post_init__(self):
        if self.initial_sign not in (1, -1):
            raise ValueError("initial_sign must be +1 or -1")
        st = np.asarray(self.switch_times, dtype=float)
        if st.size and (np.any(np.diff(st) <= 0) or st[0] < 0 or st[-1] > self.t_max):
            raise ValueError("switch times must be strictly ascending within [0, t_max]")

    def value(self, t: float) -> int:
        """eta(t); at a switch instant the post-switch value is returned."""
        m = int(np.searchsorted(self.switch_times, t, side="right"))
        return self.initial_sign * (-1) ** m


def dephasing_factor(n: int, p: NoiseParams, t):
    """Noise average <cos(n phi(t))> for a single fluctuator.

    Uses the hyperbolic branch when ``gamma > n nu``, the oscillating branch
    when ``gamma < n nu`` and the limit ``exp(-gamma t) (1 + gamma t)`` when the
    two are equal to relative precision ``DEGENERATE_RTOL``.  Accepts scalar or
    array ``t``.
    """
    if n < 1:
        raise ValueError(f"harmonic index must be a positive integer, got {n}")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValueError("time must be non-negative")
    g = p.gamma
    w = n * p.nu
    if abs(g - w) <= DEGENERATE_RTOL * max(g, w):
        out = np.exp(-g * t_arr) * (1.0 + g * t_arr)
    elif g > w:
        d = np.sqrt(g * g - w * w)
        # exp(-g t)[cosh(d t) + (g/d) sinh(d t)] without overflow or cancellation
        e2 = np.exp(-2.0 * d * t_arr)
        out = 0.5 * np.exp(-(g - d) * t_arr) * ((1.0 + e2) - (g / d) * np.expm1(-2.0 * d * t_arr))
    else:
        d = np.sqrt(w * w - g * g)
        out = np.exp(-g * t_arr) * (np.cos(d * t_arr) + (g / d) * np.sin(d * t_arr))
    return float(out) if out.ndim == 0 else out


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed) & (2**64 - 1), int(block)]))


def _sample_block(p: NoiseParams, t_max: float, seed: int, block: int):
    """Signs, switch counts and per-trajectory sorted switch times of one block."""
    rng = _block_rng(seed, block)
    signs = rng.integers(0, 2, size=BLOCK_SIZE) * 2 - 1
    counts = rng.poisson(p.gamma * t_max, size=BLOCK_SIZE)
    owner = np.repeat(np.arange(BLOCK_SIZE), counts)
    times = rng.uniform(0.0, t_max, size=owner.size)
    order = np.lexsort((times, owner))
    return signs, counts, times[order]


def sample_trajectory(p: NoiseParams, t_max: float, seed: int, index: int = 0) -> RtnTrajectory:
    """Trajectory number ``index`` of the run seeded by ``seed`` on ``[0, t_max]``."""
    if not t_max > 0:
        raise ValueError("t_max must be positive")
    block, pos = divmod(int(index), BLOCK_SIZE)
    signs, counts, times = _sample_block(p, t_max, seed, block)
    start = int(counts[:pos].sum())
    sw = times[start : start + counts[pos]]
    return RtnTrajectory(int(signs[pos]), tuple(float(x) for x in sw), float(t_max))


def sample_trajectories(p: NoiseParams, t_max: float, seed: int, n: int) -> list[RtnTrajectory]:
    """Trajectories ``0 .. n-1``; identical to calling ``sample_trajectory`` per index."""
    if not t_max > 0:
        raise ValueError("t_max must be positive")
    out = []
    for block in range(-(-n // BLOCK_SIZE)):
        signs, counts, times = _sample_block(p, t_max, seed, block)
        bounds = np.concatenate([[0], np.cumsum(counts)])
        for pos in range(min(BLOCK_SIZE, n - block * BLOCK_SIZE)):
            sw = times[bounds[pos] : bounds[pos + 1]]
            out.append(RtnTrajectory(int(signs[pos]), tuple(sw.tolist()), float(t_max)))
    return out


def accumulated_phase(traj: RtnTrajectory, p: NoiseParams, t: float) -> float:
    """phi(t) = -nu * int_0^t eta(t') dt', summed exactly over switch segments."""
    if t < 0 or t > traj.t_max * (1 + 1e-12):
        raise ValueError(f"t={t} outside the trajectory horizon [0, {traj.t_max}]")
    sw = np.asarray(traj.switch_times, dtype=float)
    sw = sw[sw <= t]
    alt = np.where(np.arange(sw.size) % 2 == 0, 1.0, -1.0)
    integral = (-1) ** sw.size * t + 2.0 * float(np.dot(alt, sw))
    return -p.nu * traj.initial_sign * integral


def block_phases(p: NoiseParams, t: float, seed: int, block: int) -> np.ndarray:
    """phi(t) for all ``BLOCK_SIZE`` trajectories of one block (horizon ``t``)."""
    if t == 0:
        return np.zeros(BLOCK_SIZE)
    signs, counts, times = _sample_block(p, t, seed, block)
    starts = np.cumsum(counts) - counts
    owner = np.repeat(np.arange(BLOCK_SIZE), counts)
    pos = np.arange(times.size) - starts[owner]
    alt = np.where(pos % 2 == 0, 1.0, -1.0)
    sums = np.bincount(owner, weights=alt * times, minlength=BLOCK_SIZE)
    integral = np.where(counts % 2 == 0, 1.0, -1.0) * t + 2.0 * sums
    return -p.nu * signs * integral


def sample_phases(p: NoiseParams, t: float, n: int, seed: int) -> np.ndarray:
    """phi(t) for trajectories ``0 .. n-1`` of the run seeded by ``seed``."""
    if n < 1:
        raise ValueError("need at least one trajectory")
    n_blocks = -(-n // BLOCK_SIZE)
    return np.concatenate([block_phases(p, t, seed, b) for b in range(n_blocks)])[:n]


def single_qubit_propagator(phi: float) -> np.ndarray:
    """cos(phi) I + i sin(phi) sigma_x, the noisy single-qubit evolution."""
    return np.cos(phi) * I2 + 1j * np.sin(phi) * SIGMA_X
