import itertools

import numpy as np
import pytest

from tripartite_rtn.evolution import Coupling, ScenarioConfig, initial_state
from tripartite_rtn.noise import NoiseParams, dephasing_factor

SCENARIOS = [(f, c) for f in ("ghz", "w") for c in ("local", "common")]


def random_density_matrix(rng, dim, rank=None):
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def loop_partial_trace(rho, keep, n=3):
    """Index-by-index partial trace, independent of the reshape implementation."""
    keep = sorted(keep)
    d = 2 ** len(keep)
    out = np.zeros((d, d), dtype=complex)
    for i, j in itertools.product(range(2**n), repeat=2):
        bi = [(i >> (n - 1 - q)) & 1 for q in range(n)]
        bj = [(j >> (n - 1 - q)) & 1 for q in range(n)]
        if any(bi[q] != bj[q] for q in range(n) if q not in keep):
            continue
        ri = int("".join(str(bi[q]) for q in keep), 2)
        rj = int("".join(str(bj[q]) for q in keep), 2)
        out[ri, rj] += rho[i, j]
    return out


def loop_partial_transpose(rho, q, n=3):
    out = np.zeros_like(rho)
    for i, j in itertools.product(range(2**n), repeat=2):
        bit = 1 << (n - 1 - q)
        i2 = (i & ~bit) | (j & bit)
        j2 = (j & ~bit) | (i & bit)
        out[i2, j2] = rho[i, j]
    return out


def exact_average(cfg: ScenarioConfig, t: float) -> np.ndarray:
    """Noise average computed entry by entry in the sigma_x eigenbasis.

    Each propagator is exp(i phi sigma_x).  In the product |+/->^3 basis entry
    (j, k) picks up exp(i sum_q (s_jq - s_kq) phi_q), whose average is a product
    of G_2 factors (independent fluctuators) or a single G_|sum| (shared one).
    """
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    h3 = np.kron(np.kron(h, h), h)
    signs = np.array([[1 - 2 * ((j >> (2 - q)) & 1) for q in range(3)] for j in range(8)])
    rx = h3 @ initial_state(cfg) @ h3
    out = np.zeros((8, 8), dtype=complex)
    for j in range(8):
        for k in range(8):
            d = signs[j] - signs[k]
            if cfg.coupling is Coupling.LOCAL:
                f = np.prod([1.0 if x == 0 else dephasing_factor(abs(int(x)), cfg.noise, t) for x in d])
            else:
                s = abs(int(d.sum()))
                f = 1.0 if s == 0 else dephasing_factor(s, cfg.noise, t)
            out[j, k] = rx[j, k] * f
    return h3 @ out @ h3


def scenario(family, coupling, r=1.0, ratio=0.1):
    return ScenarioConfig(family, r, coupling, NoiseParams.from_ratio(ratio))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE_LINES = {}


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def record(number, passed, detail):
        _ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        print(_ACCEPTANCE_LINES[number])
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(_ACCEPTANCE_LINES[key])
