"""Product projective measurements and their derivative-free optimisation.

A single-qubit frame with angles (theta, phi) measures in the basis

    |0~> = cos(theta)|0> + exp(i phi) sin(theta)|1>
    |1~> = exp(-i phi) sin(theta)|0> - cos(theta)|1>

theta in [0, pi/2] and phi in [0, 2 pi) reach every basis up to relabelling
of the outcomes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import minimize

HALF_PI = np.pi / 2
TWO_PI = 2 * np.pi
TIE_ATOL = 1e-12


@dataclass(frozen=True)
class OptimizerSettings:
    grid_points_per_angle: int = 8
    refine_starts: int = 5
    tolerance: float = 1e-6
    max_refine_iterations: int = 400

    def __post_init__(self):
        for name in ("grid_points_per_angle", "refine_starts", "max_refine_iterations"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class MeasurementFrame:
    theta_a: float = 0.0
    theta_b: float = 0.0
    phi_a: float = 0.0
    phi_b: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.theta_a, self.phi_a, self.theta_b, self.phi_b])


def canonical_angles(theta: float, phi: float) -> tuple[float, float]:
    """Map (theta, phi) into [0, pi/2] x [0, 2 pi) without changing the basis."""
    theta = float(np.mod(theta, np.pi))
    if theta > HALF_PI:
        theta, phi = np.pi - theta, phi + np.pi
    phi = float(np.mod(phi, TWO_PI))
    if phi >= TWO_PI:  # mod can round up to 2 pi
        phi = 0.0
    return theta, phi


def frame_from_angles(x) -> MeasurementFrame:
    """Canonical frame from ``[theta_a, phi_a, theta_b, phi_b]`` (or a 2-vector)."""
    ta, pa = canonical_angles(x[0], x[1])
    if len(x) == 2:
        return MeasurementFrame(theta_a=ta, phi_a=pa)
    tb, pb = canonical_angles(x[2], x[3])
    return MeasurementFrame(ta, tb, pa, pb)


def basis_kets(theta, phi) -> np.ndarray:
    """Measurement kets, shape ``theta.shape + (2 outcomes, 2 components)``."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    c, s, e = np.cos(theta), np.sin(theta), np.exp(1j * phi)
    k0 = np.stack([c + 0j, e * s], axis=-1)
    k1 = np.stack([s / e, -c + 0j], axis=-1)
    return np.stack([k0, k1], axis=-2)


def angle_grid(n_angles: int, points: int) -> np.ndarray:
    """Grid over alternating (theta, phi) angles, lexicographically ordered."""
    thetas = np.linspace(0.0, HALF_PI, points) if points > 1 else np.zeros(1)
    phis = np.arange(points) * (TWO_PI / points)
    axes = [thetas if k % 2 == 0 else phis for k in range(n_angles)]
    return np.array(list(itertools.product(*axes)))


class Optimum(NamedTuple):
    value: float
    x: np.ndarray
    converged: bool


def minimize_over_frames(
    batch_objective: Callable[[np.ndarray], np.ndarray],
    n_angles: int,
    opt: OptimizerSettings,
) -> Optimum:
    """Grid search followed by Nelder-Mead refinement from the best grid points.

    ``batch_objective`` maps an ``(N, n_angles)`` array of angles to ``N``
    objective values.  Ties on the grid are broken toward the lexicographically
    smallest angle vector, so results are reproducible for a fixed grid.
    """
    grid = angle_grid(n_angles, opt.grid_points_per_angle)
    vals = np.asarray(batch_objective(grid), dtype=float)
    # values equal to 1e-12 count as ties; np.lexsort uses the last key first
    order = np.lexsort(tuple(grid[:, k] for k in reversed(range(n_angles))) + (np.round(vals, 12),))
    best_x, best_val = grid[order[0]], float(vals[order[0]])

    step = np.array([HALF_PI if k % 2 == 0 else np.pi for k in range(n_angles)])
    step = step / max(opt.grid_points_per_angle, 2)
    converged = True

    def scalar(x):
        return float(batch_objective(x[None, :])[0])

    for idx in order[: opt.refine_starts]:
        x0 = grid[idx]
        simplex = np.vstack([x0] + [x0 + np.eye(n_angles)[k] * step[k] for k in range(n_angles)])
        res = minimize(
            scalar,
            x0,
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "xatol": 1e-7,
                "fatol": opt.tolerance,
                "maxiter": opt.max_refine_iterations,
                "maxfev": 4 * opt.max_refine_iterations,
            },
        )
        converged &= bool(res.success)
        if res.fun < best_val - TIE_ATOL:
            best_val, best_x = float(res.fun), res.x
    return Optimum(best_val, np.asarray(best_x, dtype=float), converged)
