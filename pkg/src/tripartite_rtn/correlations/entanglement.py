"""Tripartite negativity and the two fidelity-based entanglement witnesses."""
from __future__ import annotations

import enum

import numpy as np

from ..evolution import P_GHZ, P_W
from ..linalg import hermitian_eigenvalues, n_qubits_of, partial_transpose


class WitnessKind(str, enum.Enum):
    GHZ_W2 = "GHZ_W2"
    W_W1 = "W_W1"


WITNESSES = {
    WitnessKind.GHZ_W2: 0.5 * np.eye(8) - P_GHZ,
    WitnessKind.W_W1: 2.0 / 3.0 * np.eye(8) - P_W,
}


def bipartite_negativity(rho: np.ndarray, sub) -> float:
    """Sum of |eigenvalues| of the partial transpose over ``sub``, minus one.

    This is twice the absolute sum of the negative eigenvalues, so a pure GHZ
    state scores 1 on every one-vs-two cut.
    """
    ev = hermitian_eigenvalues(partial_transpose(rho, sub))
    return float(np.sum(np.abs(ev)) - 1.0)


def tripartite_negativity(rho: np.ndarray) -> float:
    """Geometric mean of the three one-vs-two negativities of a 3-qubit state.

    Each factor is clamped at zero before the cube root, so rounding noise on
    a PPT cut cannot produce a negative product.
    """
    if n_qubits_of(np.asarray(rho)) != 3:
        raise ValueError("tripartite negativity needs an 8x8 state")
    factors = [max(bipartite_negativity(rho, q), 0.0) for q in "ABC"]
    return float(np.cbrt(np.prod(factors)))


def witness_expectation(rho: np.ndarray, kind: WitnessKind | str) -> float:
    """Tr(rho W); negative values certify genuine tripartite entanglement."""
    w = WITNESSES[WitnessKind(kind)]
    return float(np.real(np.trace(np.asarray(rho) @ w)))
