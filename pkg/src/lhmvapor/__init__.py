"""Steady-state optics of a coherently driven four-level vapor."""

from .errors import (CalibrationError, ConfigError, DegenerateSteadyStateError, IntegrationError,
                     LhmError, NumericalError, ParameterError, PoleError)
from .master_equation import (SystemParams, build_generator, build_hamiltonian, canonical_params,
                              steady_state, time_evolve)
from .response import OpticalResponse, optical_response, permeability, permittivity, refractive_index
from .sweep import (Band, ResponseTable, SweepGrid, calibrate_dipoles, find_bands, group_index,
                    sweep_detuning)

__all__ = [
    "Band", "CalibrationError", "ConfigError", "DegenerateSteadyStateError", "IntegrationError",
    "LhmError", "NumericalError", "OpticalResponse", "ParameterError", "PoleError",
    "ResponseTable", "SweepGrid", "SystemParams", "build_generator", "build_hamiltonian",
    "calibrate_dipoles", "canonical_params", "find_bands", "group_index", "optical_response",
    "permeability", "permittivity", "refractive_index", "steady_state", "sweep_detuning",
    "time_evolve",
]
