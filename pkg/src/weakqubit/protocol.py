"""End-to-end Monte Carlo simulation: Alice encrypts, Bob decrypts with the
key, Eve intercepts and measures along a fixed axis.

The channel is noiseless, so Bob (who knows the key and measures in its
basis) decodes perfectly on every trial.  Eve guesses 0 exactly when her
two-outcome measurement clicks along her axis, which happens with
probability fidelity(ciphertext, axis); her success rate therefore has the
closed form (1 + axis . mean_bloch) / 2 for any fixed axis, and is maximal
at the minimum-error axis supplied by the adversary module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import PureQubit, antipode, fidelity
from .codes import QubitCode
from .sources import KeyDistribution

#: A received state must match one of the two valid ciphertexts this
#: closely, or decryption reports an integrity failure.
INTEGRITY_ATOL = 1e-9


@dataclass(frozen=True)
class TranscriptStats:
    """Counters of one simulated run."""

    trials: int
    bob_correct: int
    eve_correct: int
    estimated_p: float
    std_error: float

    def csv_row(self) -> str:
        return f"{self.trials},{self.eve_correct},{self.estimated_p!r},{self.std_error!r}"


STATS_CSV_HEADER = "trials,eve_correct,estimated_p,std_error"


def encrypt(code: QubitCode, k: int, bit: int) -> PureQubit:
    """Ciphertext for plaintext ``bit`` under key ``k``."""
    if not 0 <= k < len(code):
        raise ValueError(f"key index {k} out of range for code of size {len(code)}")
    if bit not in (0, 1):
        raise ValueError(f"plaintext bit must be 0 or 1, got {bit!r}")
    state = code.state(k)
    return state if bit == 0 else antipode(state)


def decrypt(code: QubitCode, k: int, state: PureQubit) -> int:
    """Recover the plaintext bit by measuring in the key's basis.

    The simulation is noiseless, so the state must be one of the two valid
    ciphertexts for ``k``; anything else raises an integrity error.
    """
    if not 0 <= k < len(code):
        raise ValueError(f"key index {k} out of range for code of size {len(code)}")
    reference = code.blochs[k]
    if np.linalg.norm(state.bloch - reference) <= INTEGRITY_ATOL:
        return 0
    if np.linalg.norm(state.bloch + reference) <= INTEGRITY_ATOL:
        return 1
    raise ValueError(f"state is not a valid ciphertext for key {k}")


def eve_guess(state: PureQubit, axis: PureQubit, rng: np.random.Generator) -> int:
    """Sample Eve's two-outcome measurement: 0 with probability
    fidelity(state, axis), else 1."""
    return 0 if rng.random() < fidelity(state, axis) else 1


def analytic_success(code: QubitCode, d: KeyDistribution, axis: PureQubit) -> float:
    """Eve's exact success probability for a fixed measurement axis.

    Equals (1 + axis . mean_bloch) / 2; can drop below 1/2 for a badly
    chosen axis, and reaches lambda_max of the average state at the
    optimal one.
    """
    if d.n != len(code):
        raise ValueError(f"distribution over {d.n} keys does not match code of size {len(code)}")
    mean = d.probs @ code.blochs
    return 0.5 * (1.0 + float(np.dot(axis.bloch, mean)))


def run_protocol(
    code: QubitCode,
    d: KeyDistribution,
    axis: PureQubit,
    trials: int,
    rng: np.random.Generator,
) -> TranscriptStats:
    """Simulate ``trials`` independent single-bit exchanges.

    Per trial: a uniform plaintext bit, a key drawn from ``d``, Bob's
    basis measurement (vectorized equivalent of :func:`decrypt`), and
    Eve's fixed-axis guess.  Deterministic given the stream; draw order is
    keys, then bits, then Eve's outcomes.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if d.n != len(code):
        raise ValueError(f"distribution over {d.n} keys does not match code of size {len(code)}")

    keys = rng.choice(d.n, size=trials, p=d.probs)
    bits = rng.integers(0, 2, size=trials)
    ciphertexts = code.blochs[keys] * (1.0 - 2.0 * bits)[:, None]

    # Bob's measurement along his key's basis: the overlap with the
    # encode-0 state is exactly +-1 in a noiseless channel.
    overlaps = np.einsum("ij,ij->i", ciphertexts, code.blochs[keys])
    if np.any(np.abs(np.abs(overlaps) - 1.0) > INTEGRITY_ATOL):
        raise ValueError("corrupted ciphertext reached Bob")
    bob_bits = (overlaps < 0.0).astype(int)
    bob_correct = int(np.count_nonzero(bob_bits == bits))

    p_outcome0 = 0.5 * (1.0 + ciphertexts @ axis.bloch)
    eve_bits = (rng.random(trials) >= p_outcome0).astype(int)
    eve_correct = int(np.count_nonzero(eve_bits == bits))

    estimate = eve_correct / trials
    return TranscriptStats(
        trials=trials,
        bob_correct=bob_correct,
        eve_correct=eve_correct,
        estimated_p=estimate,
        std_error=float(np.sqrt(estimate * (1.0 - estimate) / trials)),
    )
