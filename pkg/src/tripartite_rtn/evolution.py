"""Initial Werner-type states and their noise-averaged time evolution.

Two engines produce the same averaged state:

* ``evolve_analytic`` assembles the closed-form 8x8 matrices whose entries are
  polynomials in the dephasing factors G_2, G_4, G_6.
* ``evolve_monte_carlo`` averages ``U rho(0) U^dag`` over sampled telegraph
  trajectories.
"""
from __future__ import annotations

import enum
from concurrent.futures import Executor
from dataclasses import dataclass

import numpy as np

from .linalg import kronecker, ket_to_dm
from .noise import BLOCK_SIZE, NoiseParams, block_phases, dephasing_factor, single_qubit_propagator


class Family(str, enum.Enum):
    GHZ = "ghz"
    W = "w"


class Coupling(str, enum.Enum):
    LOCAL = "local"
    COMMON = "common"


@dataclass(frozen=True)
class ScenarioConfig:
    family: Family
    r: float
    coupling: Coupling
    noise: NoiseParams

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "coupling", Coupling(self.coupling))
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"purity r must lie in [0, 1], got {self.r}")

    def with_r(self, r: float) -> "ScenarioConfig":
        return ScenarioConfig(self.family, r, self.coupling, self.noise)


@dataclass(frozen=True)
class EnsembleSpec:
    n_trajectories: int
    seed: int = 0

    def __post_init__(self):
        if self.n_trajectories < 1:
            raise ValueError("n_trajectories must be at least 1")


GHZ_KET = np.zeros(8, dtype=complex)
GHZ_KET[[0, 7]] = 1 / np.sqrt(2)
W_KET = np.zeros(8, dtype=complex)
W_KET[[1, 2, 4]] = 1 / np.sqrt(3)

P_GHZ = ket_to_dm(GHZ_KET)
P_W = ket_to_dm(W_KET)
I8 = np.eye(8, dtype=complex)


def initial_state(cfg: ScenarioConfig) -> np.ndarray:
    pure = P_GHZ if cfg.family is Family.GHZ else P_W
    return cfg.r * pure + (1 - cfg.r) / 8 * I8


# --- GHZ family, independent fluctuators (X-shaped state; needs G_2) ---

def ghz_local_alpha(r, g2):
    return (1 + 3 * r * g2**2) / 8


def ghz_local_beta(r, g2):
    return r * (1 - g2**2) / 8


def ghz_local_theta(r, g2):
    return (1 - r * g2**2) / 8


def ghz_local_sigma(r, g2):
    return r * (1 + 3 * g2**2) / 8


def _ghz_local(r, g2):
    a, b, th, s = (f(r, g2) for f in (ghz_local_alpha, ghz_local_beta, ghz_local_theta, ghz_local_sigma))
    rho = np.diag([a, th, th, th, th, th, th, a]).astype(complex)
    rho[0, 7] = rho[7, 0] = s
    for j in range(1, 7):
        rho[j, 7 - j] = b
    return rho


# --- GHZ family, shared fluctuator (all entries populated; needs G_4) ---

def ghz_common_mu(r, g4):
    return r * (1 + g4) / 16


def ghz_common_lambda(r, g4):
    return r * (1 - g4) / 16


def _ghz_common(r, g4):
    mu = ghz_common_mu(r, g4)
    lam = ghz_common_lambda(r, g4)
    rho = np.full((8, 8), lam, dtype=complex)
    edge = [0, 7]
    rho[edge, :] = -lam
    rho[:, edge] = -lam
    np.fill_diagonal(rho, 1 / 8 - mu)
    rho[0, 0] = rho[7, 7] = 1 / 8 + 3 * mu
    rho[0, 7] = rho[7, 0] = r / 8 + 3 * mu
    return rho


# --- W family, independent fluctuators (needs G_2) ---

def w_local_kappa(r, g2):
    return r * (1 + g2) ** 2 * (1 - g2)


def w_local_varsigma(r):
    return (1 - r) / 8


def w_local_chi(r, g2):
    return r * (1 - g2) ** 2 * (1 + g2)


def w_local_tau(r, g2):
    return r * (1 + g2) * ((1 + g2) ** 2 + 2 * (1 - g2) ** 2)


def w_local_iota(r, g2):
    return r * (1 + g2) * (1 + g2**2)


def w_local_xi(r, g2):
    return r * (1 - g2) * (2 * (1 + g2) ** 2 + (1 - g2) ** 2)


def w_local_varphi(r, g2):
    return r * (1 - g2) * (1 + g2**2)


# Index sets of the W-family block structure: weight-1 and weight-2 basis states.
_ONE = [1, 2, 4]
_TWO = [3, 5, 6]


def _w_structured(d0, d1, d2, d3, c01, c11, c12, c22):
    """Assemble the common block pattern of both W-family matrices.

    ``d0..d3`` are diagonal entries for Hamming weight 0..3, ``c01`` couples
    |000> to weight-2 states, ``c11`` weight-1 among themselves, ``c12``
    weight-1 to |111>, ``c22`` weight-2 among themselves.
    """
    rho = np.zeros((8, 8), dtype=complex)
    rho[0, 0] = d0
    rho[7, 7] = d3
    for j in _ONE:
        rho[j, j] = d1
        rho[j, 7] = rho[7, j] = c12
        for k in _ONE:
            if k != j:
                rho[j, k] = c11
    for j in _TWO:
        rho[j, j] = d2
        rho[0, j] = rho[j, 0] = c01
        for k in _TWO:
            if k != j:
                rho[j, k] = c22
    return rho


def _w_local(r, g2):
    s = w_local_varsigma(r)
    kap, chi = w_local_kappa(r, g2), w_local_chi(r, g2)
    tau, xi = w_local_tau(r, g2), w_local_xi(r, g2)
    iota, vphi = w_local_iota(r, g2), w_local_varphi(r, g2)
    return _w_structured(
        d0=kap / 8 + s, d1=tau / 24 + s, d2=xi / 24 + s, d3=chi / 8 + s,
        c01=kap / 12, c11=iota / 12, c12=chi / 12, c22=vphi / 12,
    )


# --- W family, shared fluctuator (needs G_2, G_4, G_6) ---

def w_common_Lambda(r, g2, g4, g6):
    return r * (1 / 16 + 3 * g2 / 32 - 3 * g4 / 16 - 3 * g6 / 32)


def w_common_Xi(r, g2, g4, g6):
    return r * (1 / 16 + 3 * g2 / 32 - g4 / 16 - 3 * g6 / 32)


def w_common_Upsilon(r, g2, g4, g6):
    return r * (-1 / 48 + 7 * g2 / 96 + g4 / 16 + 3 * g6 / 32)


def w_common_Omega(r, g2, g4, g6):
    return r * (5 / 48 + 7 * g2 / 96 + g4 / 16 + 3 * g6 / 32)


def w_common_Gamma(r, g2, g4, g6):
    return r * (1 / 16 - 3 * g2 / 32 - g4 / 16 + 3 * g6 / 32)


def w_common_Phi(r, g2, g4, g6):
    return r * (-1 / 48 - 7 * g2 / 96 + g4 / 16 - 3 * g6 / 32)


def w_common_Delta(r, g2, g4, g6):
    return r * (5 / 48 - 7 * g2 / 96 + g4 / 16 - 3 * g6 / 32)


def w_common_Psi(r, g2, g4, g6):
    return r * (1 / 16 - 3 * g2 / 32 - 3 * g4 / 16 + 3 * g6 / 32)


def _w_common(r, g2, g4, g6):
    args = (r, g2, g4, g6)
    return _w_structured(
        d0=1 / 8 + w_common_Lambda(*args),
        d1=1 / 8 + w_common_Upsilon(*args),
        d2=1 / 8 + w_common_Phi(*args),
        d3=1 / 8 + w_common_Psi(*args),
        c01=w_common_Xi(*args),
        c11=w_common_Omega(*args),
        c12=w_common_Gamma(*args),
        c22=w_common_Delta(*args),
    )


def evolve_analytic(cfg: ScenarioConfig, t: float) -> np.ndarray:
    """Exact noise-averaged state at time ``t`` (absolute time, not gamma*t)."""
    if t < 0:
        raise ValueError("time must be non-negative")
    p, r = cfg.noise, cfg.r
    g2 = dephasing_factor(2, p, t)
    if cfg.family is Family.GHZ:
        if cfg.coupling is Coupling.LOCAL:
            return _ghz_local(r, g2)
        return _ghz_common(r, dephasing_factor(4, p, t))
    if cfg.coupling is Coupling.LOCAL:
        return _w_local(r, g2)
    return _w_common(r, g2, dephasing_factor(4, p, t), dephasing_factor(6, p, t))


# --- Monte Carlo ---

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
HADAMARD3 = kronecker(_H, _H, _H)
# sigma_x eigenvalue (+1 for |+>, -1 for |->) of each qubit in the Hadamard basis
XSIGNS = np.array([[1 - 2 * ((j >> (2 - q)) & 1) for q in range(3)] for j in range(8)], dtype=float)


def propagator(phases) -> np.ndarray:
    """U_A(phi_A) (x) U_B(phi_B) (x) U_C(phi_C) for one noise sample."""
    return kronecker(*(single_qubit_propagator(ph) for ph in phases))


def _trajectory_phases(cfg: ScenarioConfig, t: float, n: int, seed: int, executor: Executor | None):
    channels = 3 if cfg.coupling is Coupling.LOCAL else 1
    total = channels * n
    n_blocks = -(-total // BLOCK_SIZE)
    args = [(cfg.noise, t, seed, b) for b in range(n_blocks)]
    if executor is None:
        blocks = [block_phases(*a) for a in args]
    else:
        blocks = list(executor.map(block_phases, *zip(*args)))
    phases = np.concatenate(blocks)[:total].reshape(n, channels)
    if channels == 1:
        phases = np.repeat(phases, 3, axis=1)
    return phases


def evolve_monte_carlo(
    cfg: ScenarioConfig,
    t: float,
    ens: EnsembleSpec,
    executor: Executor | None = None,
) -> np.ndarray:
    """Ensemble average of ``U rho(0) U^dag`` over sampled telegraph noise.

    Local coupling draws trajectories ``3k, 3k+1, 3k+2`` for qubits A, B, C of
    sample ``k``; common coupling gives all three qubits trajectory ``k``.

    Every propagator is diagonal in the sigma_x eigenbasis, where sample ``k``
    multiplies entry ``(i, j)`` by ``exp(i (a_i - a_j))`` with ``a = XSIGNS @
    phi_k``.  The average is taken there and rotated back.  Block partial sums
    are reduced in block order, so the result does not depend on the executor.
    """
    if t < 0:
        raise ValueError("time must be non-negative")
    n = ens.n_trajectories
    phases = _trajectory_phases(cfg, t, n, ens.seed, executor)
    acc = np.zeros((8, 8), dtype=complex)
    for start in range(0, n, BLOCK_SIZE):
        v = np.exp(1j * phases[start : start + BLOCK_SIZE] @ XSIGNS.T)
        acc += v.T @ v.conj()
    rho_x = HADAMARD3 @ initial_state(cfg) @ HADAMARD3
    rho = HADAMARD3 @ (rho_x * acc / n) @ HADAMARD3
    return (rho + rho.conj().T) / 2
