"""One-bit encryption with weakly random keys and a qubit ciphertext.

A simulator and analysis toolkit: Bloch-sphere state algebra, weak-source
models, the classical and quantum security bounds, sphere codes, worst-case
adversarial key distributions, and an end-to-end protocol simulation.
"""

from .adversary import (
    AdversaryReport,
    average_states,
    brute_force_worst,
    greedy_for_axis,
    greedy_report,
    guess_probability,
    two_key_margin,
    worst_case_iterate,
)
from .bloch import (
    DensityQubit,
    PureQubit,
    antipode,
    density_from_mixture,
    fidelity,
    helstrom_success,
    lambda_max,
    pure_state,
)
from .bounds import (
    CapGeometry,
    cap_fidelity_quadrature,
    cap_geometry,
    classical_bound,
    quantum_bound,
)
from .codes import (
    QubitCode,
    covering_angle,
    fibonacci_code,
    load_code,
    meridian_code,
    random_code,
    store_code,
)
from .experiments import (
    OptimalityCheck,
    convergence_experiment,
    bounds_dataset,
    fit_loglog_slope,
    optimality_quadrature_test,
    random_feasible_weights,
)
from .protocol import (
    TranscriptStats,
    analytic_success,
    decrypt,
    encrypt,
    eve_guess,
    run_protocol,
)
from .rng import stream, substream
from .sources import (
    CapDistribution,
    KeyDistribution,
    SphereGrid,
    density_feasible,
    flat_source,
    min_entropy,
    min_entropy_loss,
    sample_cap,
    sample_discrete,
    sphere_grid,
)

__version__ = "0.1.0"

__all__ = [
    "AdversaryReport",
    "CapDistribution",
    "CapGeometry",
    "DensityQubit",
    "KeyDistribution",
    "OptimalityCheck",
    "PureQubit",
    "QubitCode",
    "SphereGrid",
    "TranscriptStats",
    "analytic_success",
    "antipode",
    "average_states",
    "brute_force_worst",
    "cap_fidelity_quadrature",
    "cap_geometry",
    "classical_bound",
    "convergence_experiment",
    "covering_angle",
    "decrypt",
    "density_feasible",
    "density_from_mixture",
    "encrypt",
    "eve_guess",
    "fibonacci_code",
    "fidelity",
    "bounds_dataset",
    "fit_loglog_slope",
    "flat_source",
    "greedy_for_axis",
    "greedy_report",
    "guess_probability",
    "helstrom_success",
    "lambda_max",
    "load_code",
    "meridian_code",
    "min_entropy",
    "min_entropy_loss",
    "optimality_quadrature_test",
    "pure_state",
    "quantum_bound",
    "random_code",
    "random_feasible_weights",
    "run_protocol",
    "sample_cap",
    "sample_discrete",
    "sphere_grid",
    "store_code",
    "stream",
    "substream",
    "two_key_margin",
    "worst_case_iterate",
]
