"""Experiment drivers: the bound-comparison dataset, the discretization
convergence study, and the continuous-optimality quadrature check.

All randomized drivers take a 64-bit seed and derive one stream per record
from (seed, record index), so grid points can run in any order (or
concurrently) without changing a single byte of output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .adversary import _greedy_probs, worst_case_iterate
from .bounds import cap_geometry, classical_bound, quantum_bound
from .codes import fibonacci_code, meridian_code
from .rng import substream
from .sources import SphereGrid, sphere_grid

BOUNDS_CSV_HEADER = "c,classical_p,quantum_p"
CONVERGENCE_CSV_HEADER = "n,p_worst,p_opt,gap"

CODE_GENERATORS = {"fibonacci": fibonacci_code, "meridian": meridian_code}


@dataclass(frozen=True)
class ExperimentRecord:
    """One completed experiment run.

    ``wall_time`` is for operator feedback only and is never serialized:
    output files must be byte-identical across reruns of the same
    (parameters, seed).
    """

    experiment: str
    params: tuple
    results: tuple
    wall_time: float

    def summary(self) -> str:
        args = " ".join(f"{k}={v}" for k, v in self.params)
        return f"# {self.experiment} {args} wall={self.wall_time:.3f}s"


def bounds_dataset(c_min: float, c_max: float, step: float):
    """Rows (c, classical_p, quantum_p) on a uniform grid of loss values."""
    if not (0.0 <= c_min < c_max):
        raise ValueError(f"need 0 <= c_min < c_max, got {c_min!r}, {c_max!r}")
    if step <= 0.0:
        raise ValueError(f"step must be positive, got {step!r}")
    rows = []
    i = 0
    while True:
        # Round the grid point so decimal steps land on exact values.
        c = round(c_min + i * step, 12)
        if c > c_max + 1e-9 * step:
            break
        rows.append((c, classical_bound(c), quantum_bound(c)))
        i += 1
    return rows


def fit_loglog_slope(ns, gaps) -> float:
    """Least-squares slope of log(gap) against log(n)."""
    ns = np.asarray(ns, dtype=float)
    gaps = np.asarray(gaps, dtype=float)
    if len(ns) < 2:
        raise ValueError("need at least two points to fit a slope")
    if np.any(gaps <= 0.0):
        raise ValueError("slope fit needs positive gaps")
    slope, _ = np.polyfit(np.log(ns), np.log(gaps), 1)
    return float(slope)


def convergence_experiment(c: float, n_list, kind: str, restarts: int, seed: int):
    """Worst-case adversary probability against finite codes of growing size.

    For each n, builds the requested lattice, runs the worst-case search
    under budget ``c``, and tabulates (n, p_worst, p_opt, gap) with
    gap = p_worst - p_opt, the finite-code excess over the continuous
    optimum.  Returns (rows, slope) with the log-log slope of gap vs n.
    """
    if kind not in CODE_GENERATORS:
        raise ValueError(f"kind must be one of {sorted(CODE_GENERATORS)}, got {kind!r}")
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ValueError("need at least one code size")
    floor = 4.0 * 2.0 ** float(c)
    for n in n_list:
        if n < floor:
            raise ValueError(f"n={n} leaves the cap vacuous for c={c} (need n >= {floor:g})")
    p_opt = cap_geometry(c).p_opt
    rows = []
    for index, n in enumerate(sorted(n_list)):
        code = CODE_GENERATORS[kind](n)
        report = worst_case_iterate(code, c, restarts, substream(seed, index))
        rows.append((n, report.p, p_opt, report.p - p_opt))
    slope = fit_loglog_slope([r[0] for r in rows], [r[3] for r in rows])
    return rows, slope


def random_feasible_weights(grid: SphereGrid, c: float, rng: np.random.Generator) -> np.ndarray:
    """Random cell weights respecting the loss-c density ceiling.

    Draws a density shape (an exponential tilt toward a random direction,
    so some draws press hard against the ceiling) and water-fills it under
    the per-cell cap until the weights sum to 1.  Always solvable because
    the total capacity is 2^c >= 1.
    """
    cap = 2.0 ** float(c) / grid.n_cells
    if cap * grid.n_cells <= 1.0 + 1e-12:
        # c = 0: the ceiling alone forces the uniform density.
        return np.full(grid.n_cells, 1.0 / grid.n_cells)
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2.0 * np.pi)
    sin_t = np.sqrt(max(0.0, 1.0 - z * z))
    tilt_axis = np.array([sin_t * np.cos(phi), sin_t * np.sin(phi), z])
    tilt = rng.uniform(0.0, 16.0)
    shape = np.exp(tilt * (grid.centers @ tilt_axis - 1.0))

    def filled(scale: float) -> float:
        return float(np.minimum(scale * shape, cap).sum())

    hi = 1.0 / float(shape.sum())
    while filled(hi) < 1.0:
        hi *= 2.0
    lo = 0.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if filled(mid) < 1.0:
            lo = mid
        else:
            hi = mid
    return np.minimum(hi * shape, cap)


@dataclass(frozen=True)
class OptimalityCheck:
    """Quadrature evidence that no feasible density beats the cap value."""

    c: float
    grid_cells: int
    p_opt: float
    cap_objective: float
    max_objective: float


def optimality_quadrature_test(
    c: float, random_density_count: int, grid_cells: int, seed: int
) -> OptimalityCheck:
    """Maximize the adversary objective over sampled feasible densities.

    Discretizes the sphere into equal-area cells, evaluates the objective
    sum(weight * fidelity-with-north-pole) for ``random_density_count``
    random feasible densities plus the capped greedy fill (the discrete
    image of the optimal cap density), and reports the maximum.  The cells
    are bands in z, and the fidelity is linear in z, so the midpoint sum
    is the exact objective of each piecewise-constant density.
    """
    if grid_cells < 100_000:
        raise ValueError(f"grid must have at least 1e5 cells, got {grid_cells}")
    if random_density_count < 0:
        raise ValueError("random_density_count must be >= 0")
    n_phi = 100
    grid = sphere_grid(-(-grid_cells // n_phi), n_phi)
    fidelities = 0.5 * (1.0 + grid.centers[:, 2])
    cap = 2.0 ** float(c) / grid.n_cells

    north = np.array([0.0, 0.0, 1.0])
    cap_weights = _greedy_probs(grid.centers, cap, north)
    cap_objective = float(cap_weights @ fidelities)

    best = cap_objective
    for index in range(random_density_count):
        weights = random_feasible_weights(grid, c, substream(seed, index))
        best = max(best, float(weights @ fidelities))
    return OptimalityCheck(
        c=float(c),
        grid_cells=grid.n_cells,
        p_opt=cap_geometry(c).p_opt,
        cap_objective=cap_objective,
        max_objective=best,
    )


def format_bounds_csv(rows) -> str:
    lines = [BOUNDS_CSV_HEADER]
    for c, classical_p, quantum_p in rows:
        lines.append(f"{c!r},{classical_p!r},{quantum_p!r}")
    return "\n".join(lines) + "\n"


def format_convergence_csv(rows, slope: float) -> str:
    lines = [CONVERGENCE_CSV_HEADER]
    for n, p_worst, p_opt, gap in rows:
        lines.append(f"{n},{p_worst!r},{p_opt!r},{gap!r}")
    lines.append(f"# slope={slope!r}")
    return "\n".join(lines) + "\n"
