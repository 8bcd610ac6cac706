"""Weak randomness models: discrete min-entropy sources and spherical-cap
densities, plus the equal-area grid used to discretize arbitrary densities.

Min-entropy is measured in bits throughout.  A distribution over n keys
with maximum probability p_max has

    min_entropy      = -log2(p_max)
    min_entropy_loss =  log2(n * p_max)

and the two always add up to log2(n).  The continuous analogue of a source
with loss c is a density on the Bloch sphere bounded by 2^c / (4*pi); the
extremal such density is uniform on a spherical cap of area fraction 2^-c.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import ATOL_INPUT, PureQubit

FULL_SPHERE_AREA = 4.0 * np.pi


@dataclass(frozen=True, eq=False)
class KeyDistribution:
    """Probability vector over a finite key set."""

    probs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.probs, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("probs must be a nonempty 1-d vector")
        if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
            raise ValueError("probs must be finite and nonnegative")
        total = float(arr.sum())
        if abs(total - 1.0) > ATOL_INPUT:
            raise ValueError(f"probs must sum to 1, got {total!r}")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "probs", arr)

    @property
    def n(self) -> int:
        return int(self.probs.size)


def min_entropy(d: KeyDistribution) -> float:
    """-log2 of the largest key probability, in [0, log2 n]."""
    return float(-np.log2(np.max(d.probs)))


def min_entropy_loss(d: KeyDistribution) -> float:
    """How far the key falls short of perfect randomness: log2(n * p_max).

    Zero iff the distribution is uniform; always nonnegative.
    """
    return float(np.log2(d.n * np.max(d.probs)))


def flat_source(n: int, support) -> KeyDistribution:
    """Uniform distribution on a subset of {0, ..., n-1}.

    Flat sources are the extremal weak sources: among all distributions on
    a given support they maximize min-entropy, with loss log2(n/|support|).
    """
    idx = list(support)
    if not idx:
        raise ValueError("support must be nonempty")
    if len(set(idx)) != len(idx):
        raise ValueError("support must not contain duplicate indices")
    probs = np.zeros(n)
    try:
        probs[idx] = 1.0 / len(idx)
    except IndexError:
        raise ValueError(f"support indices must lie in [0, {n})") from None
    return KeyDistribution(probs)


def sample_discrete(d: KeyDistribution, rng: np.random.Generator, size=None):
    """Draw key indices from ``d``; a scalar int when ``size`` is None."""
    drawn = rng.choice(d.n, size=size, p=d.probs)
    return int(drawn) if size is None else drawn


@dataclass(frozen=True, eq=False)
class CapDistribution:
    """Area-uniform distribution on the spherical cap around ``axis``.

    For min-entropy loss ``c`` the cap covers the fraction 2^-c of the
    sphere (height h = 2^(1-c) along the axis) and carries the constant
    density 2^c / (4*pi), the largest value a loss-c source permits.
    """

    c: float
    axis: PureQubit

    def __post_init__(self):
        if not (np.isfinite(self.c) and self.c >= 0.0):
            raise ValueError(f"min-entropy loss must be >= 0, got {self.c!r}")

    @property
    def height(self) -> float:
        return 2.0 ** (1.0 - self.c)

    @property
    def density(self) -> float:
        return 2.0 ** self.c / FULL_SPHERE_AREA


def _orthonormal_frame(axis: np.ndarray):
    """Two unit vectors completing ``axis`` to a right-handed basis."""
    helper = np.array([0.0, 0.0, 1.0])
    if abs(axis[2]) > 0.9:
        helper = np.array([1.0, 0.0, 0.0])
    e1 = np.cross(axis, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    return e1, e2


def sample_cap(cap: CapDistribution, rng: np.random.Generator, size=None):
    """Sample pure states uniformly by area from the cap.

    Uniform-by-area means the axis-aligned coordinate is uniform on
    [1 - h, 1] and the azimuth is uniform.  Returns a single PureQubit when
    ``size`` is None, otherwise an array of Bloch rows with shape (size, 3).
    """
    count = 1 if size is None else int(size)
    z = rng.uniform(1.0 - cap.height, 1.0, size=count)
    phi = rng.uniform(0.0, 2.0 * np.pi, size=count)
    sin_t = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    axis = cap.axis.bloch
    e1, e2 = _orthonormal_frame(axis)
    points = (
        z[:, None] * axis
        + (sin_t * np.cos(phi))[:, None] * e1
        + (sin_t * np.sin(phi))[:, None] * e2
    )
    points /= np.linalg.norm(points, axis=1)[:, None]
    if size is None:
        return PureQubit(points[0])
    return points


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """Equal-area partition of the sphere: uniform bands in z crossed with
    uniform azimuth sectors.  Every cell has area 4*pi / (n_z * n_phi)."""

    centers: np.ndarray
    n_z: int
    n_phi: int

    @property
    def n_cells(self) -> int:
        return self.n_z * self.n_phi

    @property
    def cell_area(self) -> float:
        return FULL_SPHERE_AREA / self.n_cells


def sphere_grid(n_z: int, n_phi: int) -> SphereGrid:
    """Build the equal-area grid with cell centers at band/sector midpoints."""
    if n_z < 1 or n_phi < 1:
        raise ValueError("grid must have at least one band and one sector")
    z = -1.0 + (np.arange(n_z) + 0.5) * (2.0 / n_z)
    phi = (np.arange(n_phi) + 0.5) * (2.0 * np.pi / n_phi)
    zz = np.repeat(z, n_phi)
    pp = np.tile(phi, n_z)
    sin_t = np.sqrt(np.maximum(0.0, 1.0 - zz * zz))
    centers = np.column_stack([sin_t * np.cos(pp), sin_t * np.sin(pp), zz])
    centers.flags.writeable = False
    return SphereGrid(centers=centers, n_z=n_z, n_phi=n_phi)


def density_feasible(values, c: float, atol: float = 1e-9) -> bool:
    """Whether density samples on an equal-area grid respect a loss budget.

    ``values`` are per-cell densities (probability per unit area) whose
    implied weights must sum to 1; the samples are feasible for loss ``c``
    iff no cell density exceeds 2^c / (4*pi), up to ``atol``.
    """
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("values must be a nonempty 1-d vector")
    if np.any(arr < 0.0):
        raise ValueError("densities must be nonnegative")
    if not (np.isfinite(c) and c >= 0.0):
        raise ValueError(f"min-entropy loss must be >= 0, got {c!r}")
    total = float(arr.sum() * (FULL_SPHERE_AREA / arr.size))
    if abs(total - 1.0) > 1e-6:
        raise ValueError(f"grid weights must sum to 1, got {total!r}")
    ceiling = 2.0 ** c / FULL_SPHERE_AREA
    return bool(np.max(arr) <= ceiling + atol)
