"""Shared fixtures and small geometry helpers for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from weakqubit import QubitCode


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Uniform random rotation matrix from a normalized quaternion."""
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    w, x, y, z = q
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def random_unit_vector(rng: np.random.Generator) -> np.ndarray:
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2.0 * np.pi)
    s = np.sqrt(max(0.0, 1.0 - z * z))
    return np.array([s * np.cos(phi), s * np.sin(phi), z])


TETRAHEDRON = np.array(
    [
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ]
) / np.sqrt(3.0)


@pytest.fixture
def tetrahedron() -> QubitCode:
    """Four states with pairwise Bloch dot products of exactly -1/3."""
    return QubitCode(TETRAHEDRON, kind="custom")


@pytest.fixture
def antipodal_pair() -> QubitCode:
    """The computational basis as a two-key code."""
    return QubitCode(np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]), kind="custom")
