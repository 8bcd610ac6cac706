"""Worst-case key distributions and the optimal guessing probability.

For a code with encode-0 Bloch rows r_k and key distribution q, the
antipodal construction makes the two average ciphertext states mirror
images, so the adversary's optimal (minimum-error) measurement succeeds
with

    p(q) = lambda_max(rho_0) = (1 + |sum_k q_k r_k|) / 2.

The adversary also gets to pick the key distribution, subject to a
min-entropy-loss budget c, i.e. subject to the per-key cap q_k <= 2^c / n.
p is convex in q, so the maximum over that capped polytope sits at a
vertex: a distribution flat at the cap value plus at most one fractional
key.  Three searches are provided:

* ``greedy_for_axis``  -- exact maximizer of the linear objective
  sum q_k * fidelity(axis, r_k) for one fixed measurement axis;
* ``worst_case_iterate`` -- alternate axis <- mean Bloch direction,
  q <- greedy, with restarts; the production search;
* ``brute_force_worst`` -- exact enumeration of flat supports on small
  codes; the oracle the iterate is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bloch import DensityQubit, PureQubit, lambda_max
from .codes import DISTINCT_ATOL, QubitCode
from .sources import KeyDistribution

#: Iterations of axis/distribution refinement per restart.
MAX_ITERATIONS = 100

#: Deterministic probe axes taken from the code itself (beyond the random
#: restarts); capped so the search stays cheap on large codes.
MAX_CODE_PROBES = 16

NORTH = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True, eq=False)
class AdversaryReport:
    """Outcome of a worst-case search under a loss budget ``c``."""

    distribution: KeyDistribution
    axis: PureQubit
    p: float
    method: str
    c: float
    cap_vacuous: bool = False

    def csv_row(self) -> str:
        a = self.axis.bloch
        return (
            f"{self.method},{float(self.c)!r},{self.distribution.n},{float(self.p)!r},"
            f"{float(a[0])!r},{float(a[1])!r},{float(a[2])!r}"
        )


REPORT_CSV_HEADER = "method,c,n,p,axis_x,axis_y,axis_z"


def average_states(code: QubitCode, d: KeyDistribution):
    """Average ciphertext states (rho_0, rho_1) seen by the adversary.

    rho_1's Bloch vector is exactly the negative of rho_0's because the
    encode-1 states are the antipodes of the encode-0 states.
    """
    if d.n != len(code):
        raise ValueError(f"distribution over {d.n} keys does not match code of size {len(code)}")
    mean = d.probs @ code.blochs
    norm = float(np.linalg.norm(mean))
    if norm > 1.0:
        mean = mean / norm
    return DensityQubit(mean), DensityQubit(-mean)


def guess_probability(code: QubitCode, d: KeyDistribution) -> float:
    """Optimal-measurement success probability against (code, d)."""
    rho0, _ = average_states(code, d)
    return lambda_max(rho0)


def _cap_value(n: int, c: float) -> float:
    if not (np.isfinite(c) and c >= 0.0):
        raise ValueError(f"min-entropy loss budget must be >= 0, got {c!r}")
    return min(1.0, 2.0 ** c / n)


def _greedy_probs(blochs: np.ndarray, cap: float, axis: np.ndarray) -> np.ndarray:
    """Fill keys up to ``cap`` in decreasing order of alignment with axis.

    Exact maximizer of a linear objective over the capped simplex; ties in
    alignment are broken by lowest key index (stable sort on the negated
    scores), so the result is deterministic.
    """
    scores = blochs @ axis
    order = np.argsort(-scores, kind="stable")
    # Tiny slack so an exact multiple (cap = 1/m up to roundoff) fills all
    # m slots instead of leaving a spurious fractional key.
    n_full = int((1.0 + 1e-12) // cap)
    probs = np.zeros(len(blochs))
    probs[order[:n_full]] = cap
    remainder = 1.0 - n_full * cap
    if remainder > 1e-15 and n_full < len(blochs):
        probs[order[n_full]] = remainder
    return probs


def greedy_for_axis(code: QubitCode, c: float, axis: PureQubit) -> KeyDistribution:
    """Best loss-c distribution for one fixed measurement axis.

    Weights take the values {2^c/n, one fractional remainder, 0}.  When
    2^c >= n the cap is vacuous and the result is a point mass on the key
    best aligned with the axis.
    """
    if len(code) < 1:
        raise ValueError("code must be nonempty")
    cap = _cap_value(len(code), c)
    return KeyDistribution(_greedy_probs(code.blochs, cap, axis.bloch))


def _report_axis(mean: np.ndarray) -> PureQubit:
    norm = float(np.linalg.norm(mean))
    if norm < 1e-12:
        # Balanced average state: every measurement is equally (un)helpful.
        return PureQubit(NORTH)
    return PureQubit(mean / norm)


def worst_case_iterate(
    code: QubitCode, c: float, restarts: int, rng: np.random.Generator
) -> AdversaryReport:
    """Alternating search for the worst-case distribution under budget ``c``.

    Each restart starts from a probe axis and alternates: distribution <-
    greedy fill for the axis, axis <- direction of the resulting mean Bloch
    vector.  Both half-steps are exact maximizations, so the objective is
    nondecreasing within a run; the best value across all restarts is
    returned.  Probe axes are the ``restarts`` random directions plus up to
    16 code states, which anchors the search on small codes at negligible
    cost.  Runs are capped at 100 refinements; non-convergence just returns
    the best distribution seen.
    """
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    n = len(code)
    cap = _cap_value(n, c)
    blochs = code.blochs

    z = rng.uniform(-1.0, 1.0, size=restarts)
    phi = rng.uniform(0.0, 2.0 * np.pi, size=restarts)
    sin_t = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    random_axes = np.column_stack([sin_t * np.cos(phi), sin_t * np.sin(phi), z])
    probe_indices = np.unique(np.linspace(0, n - 1, min(n, MAX_CODE_PROBES)).astype(int))
    probe_axes = np.vstack([random_axes, blochs[probe_indices]])

    best_probs = None
    best_norm = -1.0
    for axis in probe_axes:
        axis = axis / np.linalg.norm(axis)
        for _ in range(MAX_ITERATIONS):
            probs = _greedy_probs(blochs, cap, axis)
            mean = probs @ blochs
            norm = float(np.linalg.norm(mean))
            if norm > best_norm:
                best_norm = norm
                best_probs = probs
            if norm < 1e-15:
                break  # balanced mean; no direction to refine toward
            new_axis = mean / norm
            if float(np.dot(new_axis, axis)) > 1.0 - 1e-15:
                break  # fixed point
            axis = new_axis

    mean = best_probs @ blochs
    return AdversaryReport(
        distribution=KeyDistribution(best_probs),
        axis=_report_axis(mean),
        p=min(1.0, 0.5 * (1.0 + best_norm)),
        method="iterate",
        c=float(c),
        cap_vacuous=bool(cap >= 1.0),
    )


def brute_force_worst(code: QubitCode, c: float) -> AdversaryReport:
    """Exact worst case over flat sources of integer support size.

    Enumerates every support of size m = ceil(2^-c * n) and takes the flat
    distribution on it; convexity puts the polytope optimum on such a
    vertex whenever 2^-c * n is an integer.  Exponential in n, so guarded
    to n <= 16.
    """
    n = len(code)
    if n > 16:
        raise ValueError(f"brute force is limited to n <= 16 keys, got {n}")
    cap = _cap_value(n, c)
    # Guarded ceil: roundoff in 2^-c * n must not inflate the support size
    # past the exact vertex (flat on m keys has loss log2(n/m) <= c).
    m = int(np.ceil(2.0 ** (-float(c)) * n - 1e-9))
    m = max(1, min(n, m))

    best_subset = None
    best_norm = -1.0
    for subset in combinations(range(n), m):
        norm = float(np.linalg.norm(code.blochs[list(subset)].sum(axis=0))) / m
        if norm > best_norm:
            best_norm = norm
            best_subset = subset
    probs = np.zeros(n)
    probs[list(best_subset)] = 1.0 / m
    mean = probs @ code.blochs
    return AdversaryReport(
        distribution=KeyDistribution(probs),
        axis=_report_axis(mean),
        p=min(1.0, 0.5 * (1.0 + best_norm)),
        method="brute",
        c=float(c),
        cap_vacuous=bool(cap >= 1.0),
    )


def greedy_report(code: QubitCode, c: float, axis: PureQubit | None = None) -> AdversaryReport:
    """Single greedy pass for one probe axis (default: the north pole).

    The reported p is still the optimal-measurement value for the resulting
    distribution, so the report invariants match the other methods.
    """
    probe = PureQubit(NORTH) if axis is None else axis
    d = greedy_for_axis(code, c, probe)
    mean = d.probs @ code.blochs
    return AdversaryReport(
        distribution=d,
        axis=_report_axis(mean),
        p=guess_probability(code, d),
        method="greedy",
        c=float(c),
        cap_vacuous=bool(_cap_value(len(code), c) >= 1.0),
    )


def two_key_margin(s1: PureQubit, s2: PureQubit, q1: float, q2: float) -> float:
    """Adversary's failure probability 1 - p for a two-key cryptosystem.

    Strictly positive whenever both keys have nonzero probability and the
    states are distinct; analytically

        margin = q1*q2*(1 - cos(alpha)) / (1 + |q1 r1 + q2 r2|)

    with alpha the Bloch angle between the states, which is at least
    q1*q2*(1 - cos(alpha)) / 2.
    """
    if not (q1 > 0.0 and q2 > 0.0):
        raise ValueError("both key probabilities must be positive")
    if abs(q1 + q2 - 1.0) > 1e-9:
        raise ValueError(f"key probabilities must sum to 1, got {q1 + q2!r}")
    if float(np.linalg.norm(s1.bloch - s2.bloch)) <= DISTINCT_ATOL:
        raise ValueError("two-key margin needs distinct states")
    mean = q1 * s1.bloch + q2 * s2.bloch
    return 0.5 * (1.0 - float(np.linalg.norm(mean)))
