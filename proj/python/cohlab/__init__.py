"""Exact coherent-state qubit dynamics in a bosonic bath.

    >>> import numpy as np, cohlab
    >>> bath = cohlab.BathSpec(s=3.0, eta0=0.5)
    >>> sol = cohlab.solve_laplace(bath, 0.1, np.linspace(0.0, 100.0, 201))
    >>> cohlab.corrected_channel_metrics(1.2, sol.steady_modulus, 3).fidelity  # doctest: +ELLIPSIS
    0.746...
"""

from ._core import (
    BathSpec,
    ChannelMetrics,
    CohlabError,
    ConvergenceError,
    DomainError,
    PoleRecord,
    PropagatorSolution,
    SelfEnergyRoute,
    TwoQubitState,
    UnsupportedError,
    bitflip_density,
    bitflip_metrics,
    bitflip_p_e,
    channel_metrics,
    cluster_state_density,
    cluster_state_density_generic,
    concurrence_closed,
    correlation,
    corrected_c,
    corrected_channel_metrics,
    fef_closed,
    fef_oracle,
    find_poles,
    lamb_shift,
    level_shift,
    overlap,
    phase_error_prob,
    phase_success_prob,
    solve_laplace,
    solve_markov,
    solve_volterra,
    specfun,
    spectral_density,
    steady_modulus,
    teleportation_fidelity,
    wootters_concurrence,
)

__version__ = "0.1.0"
