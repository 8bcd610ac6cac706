"""Closed-form security bounds for one-bit encryption with a weak key.

Both bounds give the adversary's best probability of guessing the plaintext
as a function of the key's min-entropy loss c = l - b.

Classical ciphertexts (any length):

    p >= 1                      for c >= 2
    p >= 1/2 + 2^c / 8          for 2 - log2(3) <= c <= 2
    p >= 2^c / 2                for 0 <= c <= 2 - log2(3)

The bound is asymptotic in the key length; finite-length corrections are
not modeled.  Qubit ciphertext with the cap code:

    p = 1 - 2^(-c-1)

which never exceeds the classical bound and beats it strictly except at
c = 0 and c = 1.  The quantum value is the top eigenvalue of the average
state of the optimal cap distribution; its geometry (height, boundary
fidelity) is exposed through :func:`cap_geometry`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Breakpoint between the two nontrivial branches of the classical bound.
CLASSICAL_BREAKPOINT = 2.0 - np.log2(3.0)


def _check_loss(c: float) -> float:
    c = float(c)
    if not (np.isfinite(c) and c >= 0.0):
        raise ValueError(f"min-entropy loss must be >= 0, got {c!r}")
    return c


def classical_bound(c: float) -> float:
    """Best classical guessing probability for min-entropy loss ``c``.

    Piecewise-continuous and nondecreasing; saturates at 1 for c >= 2
    (no classical security is possible from that point on).
    """
    c = _check_loss(c)
    if c >= 2.0:
        return 1.0
    if c >= CLASSICAL_BREAKPOINT:
        return 0.5 + 2.0 ** c / 8.0
    return 2.0 ** c / 2.0


def quantum_bound(c: float) -> float:
    """Adversary's guessing probability against the optimal qubit code."""
    c = _check_loss(c)
    # Written as 1 - (2^-c)/2 so it shares every bit with cap_geometry().
    return 1.0 - 0.5 * 2.0 ** (-c)


@dataclass(frozen=True)
class CapGeometry:
    """Geometry of the optimal spherical-cap key density for loss ``c``.

    h is the cap height on the unit sphere, g the fidelity with the cap
    axis attained on the cap boundary, and p_opt the adversary's optimal
    guessing probability (the mean fidelity over the cap).
    """

    c: float
    area_fraction: float
    h: float
    g: float
    p_opt: float


def cap_geometry(c: float) -> CapGeometry:
    c = _check_loss(c)
    area_fraction = 2.0 ** (-c)
    return CapGeometry(
        c=c,
        area_fraction=area_fraction,
        h=2.0 * area_fraction,
        g=1.0 - area_fraction,
        p_opt=1.0 - 0.5 * area_fraction,
    )


def cap_fidelity_quadrature(c: float, n_cells: int = 1_000_000) -> float:
    """Mean fidelity with the cap axis over the optimal cap, by quadrature.

    The cap is partitioned into at least ``n_cells`` equal-area cells
    (uniform bands in the axis coordinate crossed with azimuth sectors) and
    the fidelity is summed at cell midpoints.  Independent numerical check
    of the closed form p_opt = 1 - 2^(-c-1).
    """
    c = _check_loss(c)
    if n_cells < 1:
        raise ValueError("need at least one quadrature cell")
    n_phi = max(1, int(np.sqrt(n_cells)))
    n_z = -(-n_cells // n_phi)  # ceil, so n_z * n_phi >= n_cells
    h = cap_geometry(c).h
    z = (1.0 - h) + (np.arange(n_z) + 0.5) * (h / n_z)
    # Fidelity with the axis is (1 + z)/2, independent of azimuth, so the
    # sector sum collapses; cells are equal-area, so the mean is plain.
    return float(np.mean(0.5 * (1.0 + z)))
