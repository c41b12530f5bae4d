"""(gamma t, r) sweeps over correlation measures and CSV output."""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator

import numpy as np

from .correlations import OptimizerSettings, WitnessKind, genuine_correlations, tripartite_negativity, witness_expectation
from .evolution import Coupling, EnsembleSpec, Family, ScenarioConfig, evolve_analytic, evolve_monte_carlo
from .noise import NoiseParams

MEASURES = ("negativity", "witness", "discord", "totals")
ENGINES = ("analytic", "mc", "both")

CSV_COLUMNS = [
    "gamma_t", "r", "engine", "negativity3", "witness_kind", "witness_value",
    "total3", "classical3", "discord3", "theta_a", "theta_b", "phi_a", "phi_b", "warnings",
]

# engine disagreement is flagged beyond this many Monte Carlo standard errors
DISAGREEMENT_FACTOR = 10.0


@dataclass(frozen=True)
class SweepConfig:
    family: Family = Family.GHZ
    coupling: Coupling = Coupling.LOCAL
    gamma_ratio: float = 0.1
    r_grid: tuple[float, ...] = (1.0,)
    t_grid: tuple[float, ...] = (0.0,)
    measures: frozenset[str] = frozenset({"negativity", "witness"})
    engine: str = "analytic"
    ensemble: EnsembleSpec = field(default_factory=lambda: EnsembleSpec(20000, 0))
    optimizer: OptimizerSettings = field(default_factory=OptimizerSettings)
    discord_grid_stride: int = 1
    workers: int = 1
    output: str = "-"

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "coupling", Coupling(self.coupling))
        for name in ("r_grid", "t_grid"):
            grid = tuple(float(x) for x in getattr(self, name))
            if not grid:
                raise ValueError(f"{name} must not be empty")
            if any(b < a for a, b in zip(grid, grid[1:])):
                raise ValueError(f"{name} must be ascending")
            object.__setattr__(self, name, grid)
        if any(not 0 <= r <= 1 for r in self.r_grid):
            raise ValueError("purities must lie in [0, 1]")
        if self.t_grid[0] < 0:
            raise ValueError("gamma t must be non-negative")
        if not self.gamma_ratio > 0:
            raise ValueError("gamma_ratio must be positive")
        unknown = set(self.measures) - set(MEASURES)
        if unknown:
            raise ValueError(f"unknown measures: {sorted(unknown)}")
        object.__setattr__(self, "measures", frozenset(self.measures))
        if self.engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}")
        if self.discord_grid_stride < 1 or self.workers < 1:
            raise ValueError("discord_grid_stride and workers must be positive")

    @property
    def noise(self) -> NoiseParams:
        return NoiseParams.from_ratio(self.gamma_ratio)

    @property
    def witness_kind(self) -> WitnessKind:
        return WitnessKind.GHZ_W2 if self.family is Family.GHZ else WitnessKind.W_W1


@dataclass(frozen=True)
class SweepRecord:
    gamma_t: float
    r: float
    engine: str
    negativity3: float | None = None
    witness_kind: str | None = None
    witness_value: float | None = None
    total3: float | None = None
    classical3: float | None = None
    discord3: float | None = None
    theta_a: float | None = None
    theta_b: float | None = None
    phi_a: float | None = None
    phi_b: float | None = None
    warnings: str = ""


def _measure_state(rho, base: SweepRecord, cfg: SweepConfig, with_discord: bool) -> SweepRecord:
    values = {}
    notes = [base.warnings] if base.warnings else []
    if "negativity" in cfg.measures:
        values["negativity3"] = tripartite_negativity(rho)
    if "witness" in cfg.measures:
        values["witness_kind"] = cfg.witness_kind.value
        values["witness_value"] = witness_expectation(rho, cfg.witness_kind)
    if with_discord:
        gc = genuine_correlations(rho, cfg.optimizer)
        if "discord" in cfg.measures:
            values["discord3"] = gc.discord3
        if "totals" in cfg.measures:
            values["total3"] = gc.total3
            values["classical3"] = gc.classical3
        values.update(theta_a=gc.frame.theta_a, theta_b=gc.frame.theta_b, phi_a=gc.frame.phi_a, phi_b=gc.frame.phi_b)
        if not gc.converged:
            notes.append("optimizer_not_converged")
    return replace(base, warnings=";".join(notes), **values)


def evaluate_point(cfg: SweepConfig, r: float, gamma_t: float, with_discord: bool) -> list[SweepRecord]:
    """Records for one grid point, analytic engine first."""
    scenario = ScenarioConfig(cfg.family, r, cfg.coupling, cfg.noise)
    t = gamma_t / scenario.noise.gamma
    out = []
    rho_exact = evolve_analytic(scenario, t)
    if cfg.engine in ("analytic", "both"):
        out.append(_measure_state(rho_exact, SweepRecord(gamma_t, r, "analytic"), cfg, with_discord))
    if cfg.engine in ("mc", "both"):
        rho_mc = evolve_monte_carlo(scenario, t, cfg.ensemble)
        diff = float(np.max(np.abs(rho_mc - rho_exact)))
        tol = DISAGREEMENT_FACTOR / math.sqrt(cfg.ensemble.n_trajectories)
        note = f"engine_disagreement(max_abs_diff={diff:.3e})" if diff > tol else ""
        out.append(_measure_state(rho_mc, SweepRecord(gamma_t, r, "mc", warnings=note), cfg, with_discord))
    return out


def _grid_points(cfg: SweepConfig):
    wants_discord = bool({"discord", "totals"} & cfg.measures)
    s = cfg.discord_grid_stride
    for i, r in enumerate(cfg.r_grid):
        for j, gt in enumerate(cfg.t_grid):
            yield r, gt, wants_discord and i % s == 0 and j % s == 0


def run_sweep(cfg: SweepConfig) -> Iterator[SweepRecord]:
    """Yield records ordered by r (outer), gamma t (inner), engine (last).

    With ``cfg.workers > 1`` grid points run in a process pool; ``map`` keeps
    the output order fixed regardless of completion order.
    """
    points = list(_grid_points(cfg))
    if cfg.workers == 1:
        for r, gt, d in points:
            yield from evaluate_point(cfg, r, gt, d)
        return
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        chunks = pool.map(evaluate_point, *zip(*[(cfg, r, gt, d) for r, gt, d in points]), chunksize=8)
        for records in chunks:
            yield from records


def format_value(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    x = float(x)
    if x == 0:
        x = 0.0  # no "-0"
    return f"{x:.12g}"


def write_csv(records: Iterable[SweepRecord], handle: io.TextIOBase) -> int:
    """Write the header and one line per record to an open text handle."""
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    n = 0
    for rec in records:
        writer.writerow([format_value(getattr(rec, col)) for col in CSV_COLUMNS])
        n += 1
    return n


def read_csv(handle: io.TextIOBase) -> list[dict[str, str]]:
    return list(csv.DictReader(handle))
