"""Genuine tripartite total, classical and quantum correlations (in bits).

The total correlations of a three-qubit state are the smallest one-vs-two
mutual information.  Classical correlations come from conditional entropies
measured with product projective frames on one or two qubits, each minimised
over the frame angles.  Discord is their difference.

For states invariant under every qubit permutation the definitions collapse to

    T3 = S(C) + S(AB) - S(ABC)
    J3 = S(C) - S(C|AB)
    D3 = S(AB) + S(C|AB) - S(ABC)

which is what ``genuine_discord_d3`` uses when the symmetry check passes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..linalg import (
    NumericalError,
    _qubit_indices,
    entropy_of_spectrum,
    n_qubits_of,
    partial_trace,
    permute_qubits,
    von_neumann_entropy,
)
from .frames import MeasurementFrame, OptimizerSettings, basis_kets, frame_from_angles, minimize_over_frames

SYMMETRY_ATOL = 1e-10
DISCORD_CLAMP = 1e-6

QUBIT_PERMUTATIONS = list(itertools.permutations(range(3)))


class ConditionalEntropy(NamedTuple):
    value: float
    frame: MeasurementFrame
    converged: bool


@dataclass(frozen=True)
class GenuineCorrelations:
    total3: float
    classical3: float
    discord3: float
    frame: MeasurementFrame
    converged: bool
    fast_path: bool


def mutual_information(rho: np.ndarray, cut) -> float:
    """I(X:Y) = S(X) + S(Y) - S(XY) for a cut ``(X, Y)`` such as ``("C", "AB")``.

    If ``X`` and ``Y`` do not cover every qubit, the rest is traced out first.
    """
    rho = np.asarray(rho, dtype=complex)
    n = n_qubits_of(rho)
    try:
        x, y = cut
        xi, yi = _qubit_indices(x, n), _qubit_indices(y, n)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"invalid cut {cut!r}: {exc}") from None
    if not xi or not yi or set(xi) & set(yi):
        raise ValueError(f"invalid cut {cut!r}: parts must be nonempty and disjoint")
    both = sorted(xi + yi)
    rho_xy = rho if len(both) == n else partial_trace(rho, both)
    s_xy = von_neumann_entropy(rho_xy)
    s_x = von_neumann_entropy(partial_trace(rho, xi))
    s_y = von_neumann_entropy(partial_trace(rho, yi))
    return max(s_x + s_y - s_xy, 0.0)


def _weighted_entropy(blocks: np.ndarray) -> np.ndarray:
    """sum_m p_m S(block_m / p_m) over unnormalised 2x2 blocks on axis -3."""
    blocks = (blocks + np.swapaxes(blocks, -1, -2).conj()) / 2
    ev = np.linalg.eigvalsh(blocks)
    p = ev.sum(axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        plogp = np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return (entropy_of_spectrum(ev) + plogp).sum(axis=-1)


def _single_blocks(rho_ij: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Unnormalised states of the first qubit after measuring the second."""
    r = rho_ij.reshape(2, 2, 2, 2)
    k = basis_kets(angles[:, 0], angles[:, 1])  # (N, m, comp)
    return np.einsum("nmb,abcd,nmd->nmac", k.conj(), r, k)


def _pair_blocks(rho_ijk: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Unnormalised states of the last qubit after measuring the first two."""
    r = rho_ijk.reshape((2,) * 6)
    u = basis_kets(angles[:, 0], angles[:, 1])
    w = basis_kets(angles[:, 2], angles[:, 3])
    blocks = np.einsum("nma,nlb,abcxyz,nmx,nly->nmlcz", u.conj(), w.conj(), r, u, w)
    return blocks.reshape(angles.shape[0], 4, 2, 2)


def measured_conditional_entropy_single(
    rho_ij: np.ndarray, measured, opt: OptimizerSettings | None = None
) -> ConditionalEntropy:
    """S(I|J): entropy of qubit I left after a projective measurement on J.

    ``rho_ij`` is a two-qubit state; ``measured`` names the measured qubit
    (``"A"``/``"B"`` or 0/1).  The frame holds the optimal angles in
    ``theta_a``/``phi_a``.
    """
    opt = opt or OptimizerSettings()
    rho_ij = np.asarray(rho_ij, dtype=complex)
    if n_qubits_of(rho_ij) != 2:
        raise ValueError("expected a two-qubit state")
    (j,) = _qubit_indices(measured, 2)
    if j == 0:
        rho_ij = permute_qubits(rho_ij, [1, 0])
    res = minimize_over_frames(lambda a: _weighted_entropy(_single_blocks(rho_ij, a)), 2, opt)
    return ConditionalEntropy(float(np.clip(res.value, 0.0, 1.0)), frame_from_angles(res.x), res.converged)


def measured_conditional_entropy_pair(
    rho: np.ndarray, target="C", opt: OptimizerSettings | None = None
) -> ConditionalEntropy:
    """S(K|IJ) minimised over product projective frames on the other two qubits.

    The two measured qubits keep their A-B-C order; the frame's ``_a`` angles
    belong to the first of them.
    """
    opt = opt or OptimizerSettings()
    rho = np.asarray(rho, dtype=complex)
    if n_qubits_of(rho) != 3:
        raise ValueError("expected a three-qubit state")
    (k,) = _qubit_indices(target, 3)
    measured = [q for q in range(3) if q != k]
    rho_ijk = permute_qubits(rho, measured + [k])
    res = minimize_over_frames(lambda a: _weighted_entropy(_pair_blocks(rho_ijk, a)), 4, opt)
    return ConditionalEntropy(float(np.clip(res.value, 0.0, 1.0)), frame_from_angles(res.x), res.converged)


def genuine_total_t3(rho: np.ndarray) -> float:
    """Smallest mutual information between one qubit and the other two."""
    return min(mutual_information(rho, (q, rest)) for q, rest in (("A", "BC"), ("B", "AC"), ("C", "AB")))


def is_permutation_symmetric(rho: np.ndarray, atol: float = SYMMETRY_ATOL) -> bool:
    rho = np.asarray(rho)
    return all(np.max(np.abs(permute_qubits(rho, p) - rho)) <= atol for p in QUBIT_PERMUTATIONS[1:])


def _classical_general(rho, opt):
    """(J3, frame, converged) from all six orderings and all pair directions."""
    labels = "ABC"
    s1 = {q: von_neumann_entropy(partial_trace(rho, q)) for q in labels}
    # one-way classical correlation J_{I:J} = S(I) - S(I|J), J measured
    j_dir = {}
    converged = True
    for i, j in itertools.permutations(labels, 2):
        pair = "".join(sorted(i + j))
        ce = measured_conditional_entropy_single(partial_trace(rho, pair), pair.index(j), opt)
        converged &= ce.converged
        j_dir[i, j] = s1[i] - ce.value
    cond_pair = {}
    for k in labels:
        cond_pair[k] = measured_conditional_entropy_pair(rho, k, opt)
        converged &= cond_pair[k].converged
    best_total, best_frame = -np.inf, None
    for i, j, k in itertools.permutations(labels):
        val = j_dir[i, j] + s1[k] - cond_pair[k].value
        if val > best_total:
            best_total, best_frame = val, cond_pair[k].frame
    j2 = max(j_dir.values())
    return best_total - j2, best_frame, converged


def genuine_classical_j3(rho: np.ndarray, opt: OptimizerSettings | None = None, fast_path: bool | None = None) -> float:
    """Genuine classical correlations J3 = J - J2.

    ``fast_path=None`` uses the permutation-symmetric shortcut only when the
    state passes the symmetry check; ``False`` forces the general search.
    """
    return genuine_correlations(rho, opt, fast_path).classical3


def genuine_correlations(
    rho: np.ndarray, opt: OptimizerSettings | None = None, fast_path: bool | None = None
) -> GenuineCorrelations:
    opt = opt or OptimizerSettings()
    rho = np.asarray(rho, dtype=complex)
    if n_qubits_of(rho) != 3:
        raise ValueError("expected a three-qubit state")
    symmetric = is_permutation_symmetric(rho)
    if fast_path is None:
        fast_path = symmetric
    elif fast_path and not symmetric:
        raise ValueError("fast path requires a permutation-symmetric state")

    if fast_path:
        s = von_neumann_entropy(rho)
        s_ab = von_neumann_entropy(partial_trace(rho, "AB"))
        s_c = von_neumann_entropy(partial_trace(rho, "C"))
        ce = measured_conditional_entropy_pair(rho, "C", opt)
        total3 = s_c + s_ab - s
        classical3 = s_c - ce.value
        frame, converged = ce.frame, ce.converged
    else:
        total3 = genuine_total_t3(rho)
        classical3, frame, converged = _classical_general(rho, opt)

    discord3 = total3 - classical3
    if discord3 < -DISCORD_CLAMP:
        raise NumericalError(f"genuine discord {discord3:.3e} is negative beyond tolerance")
    if discord3 < 0:
        discord3 = 0.0
        classical3 = total3
    return GenuineCorrelations(total3, classical3, discord3, frame, converged, fast_path)


def genuine_discord_d3(rho: np.ndarray, opt: OptimizerSettings | None = None, fast_path: bool | None = None) -> GenuineCorrelations:
    """Genuine tripartite discord D3 = T3 - J3 with its T3, J3 and optimal frame.

    Raises ``NumericalError`` if D3 comes out below ``-1e-6``, which means the
    frame search missed the minimum or the fast path was used on an
    asymmetric state.
    """
    return genuine_correlations(rho, opt, fast_path)
