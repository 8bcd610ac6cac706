"""Discrete qubit codes: quasi-uniform point sets on the Bloch sphere.

A code lists the encode-0 state of every key; encode-1 is the antipode.
Two generators are provided:

* ``fibonacci_code`` -- golden-angle lattice, equal-area in z by
  construction.  This is the workhorse for convergence experiments because
  its points are area-uniform, as the discretization argument needs.
* ``meridian_code`` -- sqrt(n) meridians with sqrt(n) points each.  Its
  points cluster toward the poles, but its covering angle obeys the
  explicit 3*pi/(2*sqrt(n)) bound, which we verify verbatim.

The covering angle (max angle from anywhere on the sphere to the nearest
code state) is measured by dense random probing, which underestimates the
true covering radius by the probe spacing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .bloch import PureQubit

GOLDEN_ANGLE = np.pi * (3.0 - np.sqrt(5.0))

#: Two states closer than this (Euclidean, on unit vectors) are considered
#: the same basis choice and rejected.
DISTINCT_ATOL = 1e-9

_HEADER_RE = re.compile(r"^# qubit-code v1 n=(\d+) kind=(\w+)$")


@dataclass(frozen=True, eq=False)
class QubitCode:
    """Ordered encode-0 states of an n-key cryptosystem, as Bloch rows."""

    blochs: np.ndarray
    kind: str = "custom"

    def __post_init__(self):
        arr = np.asarray(self.blochs, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 3 or arr.shape[0] < 1:
            raise ValueError(f"blochs must be an (n, 3) array, got {arr.shape}")
        norms = np.linalg.norm(arr, axis=1)
        if np.any(np.abs(norms - 1.0) > DISTINCT_ATOL):
            worst = float(np.max(np.abs(norms - 1.0)))
            raise ValueError(f"code states must be unit vectors (worst error {worst:.3g})")
        if arr.shape[0] > 1:
            nearest, _ = cKDTree(arr).query(arr, k=2)
            if float(np.min(nearest[:, 1])) <= DISTINCT_ATOL:
                raise ValueError("code states must be pairwise distinct")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "blochs", arr)

    def __len__(self) -> int:
        return int(self.blochs.shape[0])

    def state(self, k: int) -> PureQubit:
        return PureQubit(self.blochs[k])


def meridian_code(n: int) -> QubitCode:
    """Lattice of sqrt(n) points on each of sqrt(n) equally spaced meridians.

    Points sit at polar angles pi*(j + 1/2)/sqrt(n); the covering angle is
    at most 3*pi/(2*sqrt(n)) by the triangle inequality (half a meridian
    step plus half an equator step).
    """
    root = int(round(np.sqrt(n)))
    if root * root != n or n < 4:
        raise ValueError(f"n must be a perfect square >= 4, got {n}")
    theta = np.pi * (np.arange(root) + 0.5) / root
    phi = 2.0 * np.pi * np.arange(root) / root
    tt = np.tile(theta, root)
    pp = np.repeat(phi, root)
    rows = np.column_stack([np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)])
    return QubitCode(rows, kind="meridian")


def fibonacci_code(n: int) -> QubitCode:
    """Golden-angle lattice: z_i = 1 - (2i+1)/n, azimuth advancing by the
    golden angle.  Equal-area in z, covering angle O(n^{-1/2})."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    i = np.arange(n)
    z = 1.0 - (2.0 * i + 1.0) / n
    phi = np.mod(i * GOLDEN_ANGLE, 2.0 * np.pi)
    sin_t = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    rows = np.column_stack([sin_t * np.cos(phi), sin_t * np.sin(phi), z])
    rows /= np.linalg.norm(rows, axis=1)[:, None]
    return QubitCode(rows, kind="fibonacci")


def random_code(n: int, rng: np.random.Generator) -> QubitCode:
    """n states drawn area-uniformly from the sphere (distinct w.h.p.)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    z = rng.uniform(-1.0, 1.0, size=n)
    phi = rng.uniform(0.0, 2.0 * np.pi, size=n)
    sin_t = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    rows = np.column_stack([sin_t * np.cos(phi), sin_t * np.sin(phi), z])
    return QubitCode(rows, kind="custom")


def covering_angle(code: QubitCode, probe_count: int, rng: np.random.Generator) -> float:
    """Largest angle from ``probe_count`` area-uniform probes to the code.

    Monotone nondecreasing in probe_count in expectation; a lower estimate
    of the true covering radius, tight up to the probe spacing.
    """
    if len(code) < 1:
        raise ValueError("code must be nonempty")
    if probe_count < 10_000:
        raise ValueError(f"probe_count must be >= 10000, got {probe_count}")
    tree = cKDTree(code.blochs)
    worst_chord = 0.0
    remaining = int(probe_count)
    while remaining > 0:
        batch = min(remaining, 200_000)
        z = rng.uniform(-1.0, 1.0, size=batch)
        phi = rng.uniform(0.0, 2.0 * np.pi, size=batch)
        sin_t = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        probes = np.column_stack([sin_t * np.cos(phi), sin_t * np.sin(phi), z])
        dist, _ = tree.query(probes)
        worst_chord = max(worst_chord, float(np.max(dist)))
        remaining -= batch
    # Chord length to angle on the unit sphere.
    return float(2.0 * np.arcsin(min(1.0, 0.5 * worst_chord)))


def store_code(code: QubitCode, path) -> None:
    """Write a code file: header line, then ``index,x,y,z`` rows."""
    lines = [f"# qubit-code v1 n={len(code)} kind={code.kind}"]
    for i, row in enumerate(code.blochs):
        lines.append(f"{i},{float(row[0])!r},{float(row[1])!r},{float(row[2])!r}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_code(path) -> QubitCode:
    """Read a code file written by :func:`store_code`.

    Rows must be unit vectors within 1e-6 (they are renormalized exactly),
    with indices ascending from 0 and no duplicates.
    """
    with open(path) as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines:
        raise ValueError(f"{path}: empty code file")
    match = _HEADER_RE.match(lines[0])
    if match is None:
        raise ValueError(f"{path}: missing or malformed header: {lines[0]!r}")
    n, kind = int(match.group(1)), match.group(2)
    if len(lines) - 1 != n:
        raise ValueError(f"{path}: header says n={n} but found {len(lines) - 1} rows")
    rows = np.empty((n, 3))
    for expected, line in enumerate(lines[1:]):
        parts = line.split(",")
        if len(parts) != 4:
            raise ValueError(f"{path}: malformed row {line!r}")
        try:
            index = int(parts[0])
            vec = [float(p) for p in parts[1:]]
        except ValueError:
            raise ValueError(f"{path}: malformed row {line!r}") from None
        if index != expected:
            raise ValueError(f"{path}: row index {index} out of order (expected {expected})")
        rows[expected] = vec
    norms = np.linalg.norm(rows, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-6):
        worst = float(np.max(np.abs(norms - 1.0)))
        raise ValueError(f"{path}: non-unit state rows (worst error {worst:.3g})")
    rows /= norms[:, None]
    return QubitCode(rows, kind=kind)
