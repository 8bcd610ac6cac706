"""Bloch-vector algebra for single-qubit pure and mixed states.

States are represented purely by their Bloch 3-vectors; 2x2 complex
matrices are never materialized.  Everything needed here (fidelity, trace
distance, extremal eigenvalue, minimum-error discrimination) is a closed
form in the Bloch picture:

    pure state      |psi>         <->  unit vector r
    density  rho = (I + r.sigma)/2  <->  vector r, |r| <= 1
    fidelity |<psi|phi>|^2         =   (1 + r_psi . r_phi) / 2
    lambda_max(rho)                =   (1 + |r|) / 2

The encode-1 state of a key is always the antipode of its encode-0 state,
which makes the two ciphertexts exactly orthogonal by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Construction tolerance for values we compute ourselves vs. values handed
# in by a caller (file rows, user vectors).
ATOL_CONSTRUCTED = 1e-12
ATOL_INPUT = 1e-9


def _as_vector3(value, name: str) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite, got {arr}")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class PureQubit:
    """A pure qubit state as a unit Bloch vector."""

    bloch: np.ndarray

    def __post_init__(self):
        arr = _as_vector3(self.bloch, "bloch")
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > ATOL_INPUT:
            raise ValueError(f"pure state must have unit Bloch norm, got {norm!r}")
        object.__setattr__(self, "bloch", arr)


@dataclass(frozen=True, eq=False)
class DensityQubit:
    """A qubit mixed state as a Bloch vector of norm <= 1."""

    bloch: np.ndarray

    def __post_init__(self):
        arr = _as_vector3(self.bloch, "bloch")
        norm = float(np.linalg.norm(arr))
        if norm > 1.0 + ATOL_INPUT:
            raise ValueError(f"density Bloch norm must be <= 1, got {norm!r}")
        object.__setattr__(self, "bloch", arr)


def pure_state(theta: float, phi: float) -> PureQubit:
    """Pure state at polar angle theta in [0, pi], azimuth phi in [0, 2*pi).

    The Bloch vector is (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)).
    """
    if not 0.0 <= theta <= np.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
    if not 0.0 <= phi < 2.0 * np.pi:
        raise ValueError(f"phi must lie in [0, 2*pi), got {phi!r}")
    sin_t = np.sin(theta)
    return PureQubit(np.array([sin_t * np.cos(phi), sin_t * np.sin(phi), np.cos(theta)]))


def antipode(s: PureQubit) -> PureQubit:
    """The orthogonal pure state (opposite point on the Bloch sphere)."""
    return PureQubit(-s.bloch)


def fidelity(s: PureQubit, t: PureQubit) -> float:
    """Overlap |<s|t>|^2 of two pure states: (1 + r_s . r_t) / 2."""
    value = 0.5 * (1.0 + float(np.dot(s.bloch, t.bloch)))
    # Clamp roundoff; the dot product of unit vectors can stray past +-1.
    return min(1.0, max(0.0, value))


def density_from_mixture(weights, states) -> DensityQubit:
    """Average state of a pure-state ensemble.

    ``weights`` must be a probability vector over ``states``; the result's
    Bloch vector is the weighted mean of the pure Bloch vectors.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or len(w) != len(states):
        raise ValueError("weights and states must have matching length")
    if np.any(w < 0.0):
        raise ValueError("weights must be nonnegative")
    total = float(w.sum())
    if abs(total - 1.0) > ATOL_INPUT:
        raise ValueError(f"weights must sum to 1, got {total!r}")
    vectors = np.array([s.bloch for s in states])
    mean = w @ vectors
    norm = float(np.linalg.norm(mean))
    if norm > 1.0:
        # Convexity guarantees |mean| <= 1; shave accumulated roundoff only.
        if norm > 1.0 + ATOL_CONSTRUCTED:
            raise ValueError(f"mixture left the Bloch ball: norm {norm!r}")
        mean = mean / norm
    return DensityQubit(mean)


def lambda_max(rho: DensityQubit) -> float:
    """Largest eigenvalue of the density operator: (1 + |r|) / 2."""
    return 0.5 * (1.0 + float(np.linalg.norm(rho.bloch)))


def helstrom_success(rho0: DensityQubit, rho1: DensityQubit) -> float:
    """Success probability of the minimum-error measurement between two
    equiprobable states: 1/2 + |r0 - r1| / 4.

    When the states are mirror images (r1 = -r0, i.e. rho1 = I - rho0) this
    equals lambda_max(rho0).
    """
    distance = float(np.linalg.norm(rho0.bloch - rho1.bloch))
    return min(1.0, 0.5 + 0.25 * distance)
