"""Dense linear algebra for one-, two- and three-qubit density operators.

Qubit ordering is A (most significant bit), B, C, so the computational basis
rows run |000>, |001>, ..., |111>.  All entropies are in bits.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

QUBITS = "ABC"

HERMITIAN_ATOL = 1e-10
TRACE_ATOL = 1e-12
# eigenvalues in [-EIG_CLAMP, 0) are treated as rounding noise
EIG_CLAMP = 1e-10

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class NumericalError(RuntimeError):
    """A computed quantity left its mathematically allowed range."""


def _qubit_indices(labels: str | Iterable, n_qubits: int) -> list[int]:
    if isinstance(labels, str):
        labels = list(labels)
    elif isinstance(labels, (int, np.integer)):
        labels = [labels]
    out = []
    for lab in labels:
        if isinstance(lab, str):
            if lab not in QUBITS[:n_qubits]:
                raise ValueError(f"unknown qubit label {lab!r} for {n_qubits} qubits")
            idx = QUBITS.index(lab)
        else:
            idx = int(lab)
            if not 0 <= idx < n_qubits:
                raise ValueError(f"qubit index {idx} out of range for {n_qubits} qubits")
        if idx in out:
            raise ValueError(f"qubit {lab!r} listed twice")
        out.append(idx)
    return out


def n_qubits_of(m: np.ndarray) -> int:
    dim = m.shape[0]
    if m.ndim != 2 or m.shape[1] != dim or dim not in (2, 4, 8):
        raise ValueError(f"expected a square 2x2, 4x4 or 8x8 matrix, got shape {m.shape}")
    return dim.bit_length() - 1


def kronecker(*factors: np.ndarray) -> np.ndarray:
    """Tensor product with the first factor as the most significant qubit."""
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def ket_to_dm(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def check_density_matrix(rho: np.ndarray, atol: float = TRACE_ATOL) -> np.ndarray:
    """Validate a density matrix and return it as a complex array.

    Raises ``ValueError`` if ``rho`` is not Hermitian, not unit trace, or has
    eigenvalues below ``-EIG_CLAMP``.
    """
    rho = np.asarray(rho, dtype=complex)
    n_qubits_of(rho)
    if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > atol:
        raise ValueError(f"density matrix trace {np.trace(rho).real!r} != 1")
    if np.linalg.eigvalsh(rho)[0] < -EIG_CLAMP:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def partial_trace(rho: np.ndarray, keep) -> np.ndarray:
    """Reduce ``rho`` to the qubits in ``keep``.

    Parameters
    ----------
    rho : ndarray
        4x4 or 8x8 operator on qubits A, B(, C).
    keep : str or iterable
        Labels (``"A"``, ``"BC"``, ``["A", "C"]``) or integer positions of the
        qubits to keep.  Kept qubits retain their original relative order.

    Returns
    -------
    ndarray
        Operator of dimension ``2**len(keep)``.
    """
    rho = np.asarray(rho, dtype=complex)
    n = n_qubits_of(rho)
    kept = sorted(_qubit_indices(keep, n))
    if not kept or len(kept) == n:
        raise ValueError("keep must be a nonempty proper subset of the qubits")
    t = rho.reshape((2,) * (2 * n))
    # einsum subscripts: row indices a.., column indices A..; traced qubits share a letter
    rows = [chr(ord("a") + q) for q in range(n)]
    cols = [chr(ord("A") + q) if q in kept else rows[q] for q in range(n)]
    out = "".join(rows[q] for q in kept) + "".join(cols[q] for q in kept)
    red = np.einsum("".join(rows) + "".join(cols) + "->" + out, t)
    d = 2 ** len(kept)
    return red.reshape(d, d)


def partial_transpose(rho: np.ndarray, sub) -> np.ndarray:
    """Transpose the indices of the qubits in ``sub``, leaving the rest alone."""
    rho = np.asarray(rho, dtype=complex)
    n = n_qubits_of(rho)
    qs = _qubit_indices(sub, n)
    axes = list(range(2 * n))
    for q in qs:
        axes[q], axes[q + n] = axes[q + n], axes[q]
    d = 2**n
    return rho.reshape((2,) * (2 * n)).transpose(axes).reshape(d, d)


def permute_qubits(rho: np.ndarray, order) -> np.ndarray:
    """Relabel qubits: new qubit ``k`` is old qubit ``order[k]``."""
    rho = np.asarray(rho, dtype=complex)
    n = n_qubits_of(rho)
    order = list(order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"{order} is not a permutation of {n} qubits")
    d = 2**n
    return rho.reshape((2,) * (2 * n)).transpose(order + [q + n for q in order]).reshape(d, d)


def hermitian_eigenvalues(m: np.ndarray) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix (or a stack of them)."""
    m = np.asarray(m, dtype=complex)
    dev = np.max(np.abs(m - np.swapaxes(m, -1, -2).conj()))
    if dev > HERMITIAN_ATOL:
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return np.linalg.eigvalsh(m)


def entropy_of_spectrum(evals) -> np.ndarray | float:
    """Shannon entropy in bits of eigenvalue arrays along the last axis.

    Eigenvalues need not be normalised; ``-sum(l * log2(l))`` is returned as is,
    which for an unnormalised block ``p * rho`` gives ``p * S(rho) - p log2 p``.
    """
    evals = np.asarray(evals, dtype=float)
    if np.any(evals < -EIG_CLAMP):
        raise NumericalError(f"eigenvalue {evals.min():.3e} below clamping window")
    lam = np.clip(evals, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(lam > 0, lam * np.log2(np.where(lam > 0, lam, 1.0)), 0.0)
    return -terms.sum(axis=-1)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """S(rho) = -Tr rho log2 rho, in bits."""
    s = float(entropy_of_spectrum(hermitian_eigenvalues(rho)))
    return max(s, 0.0)
