"""Microwave-controlled Rydberg photonic CZ gate: atomic structure, pair
interactions, blockade lengthscales and gate fidelity (C++ core)."""

from ._core import (  # noqa: F401
    Atom,
    AveragedFidelity,
    GateParams,
    GateResult,
    InteractionCoefficients,
    Lengthscales,
    RydbergLevel,
    Species,
    blockade_radii,
    c3_coefficient,
    c6_coefficient,
    decay_rate,
    effective_quantum_number,
    figure_of_merit,
    fidelity_model,
    forster_channels,
    gate_fidelity_pointwise,
    level_energy,
    motional_dephasing,
    optimize_d11,
    radial_matrix_element,
    radii_scan,
    site_average,
    two_level_pulse,
    two_level_pulse_ode,
    version,
)

__version__ = version()
