"""Pair creation from alternating-sign sech^2 pulse trains with random delays.

Kinetic mode evolution, momentum spectra, seeded delay ensembles, Gaussian
envelope fits and coherent/incoherent scaling benchmarks, all in
electron-mass units.
"""

from .params import (ParamError, PhysicalParams, SolverConfig, TrainParams,
                     default_paper_params)
from .pulse_train import (DelayVector, PulseTrain, build_train,
                          delays_from_csv, delays_from_values, delays_to_csv,
                          electric_field, gauge_centered_potential,
                          make_train, sample_delays, vector_potential)
from .qve import (KineticState, ModeResult, Momentum, SolverError,
                  integrate_mode, oracle_convergence_check,
                  oracle_integrate_eq1, quasienergy, qve_rhs,
                  transition_amplitude, transverse_energy)

__version__ = "0.1.0"

__all__ = [
    "ParamError", "PhysicalParams", "TrainParams", "SolverConfig",
    "default_paper_params",
    "DelayVector", "PulseTrain", "sample_delays", "delays_from_values",
    "delays_from_csv", "delays_to_csv", "build_train", "make_train",
    "electric_field", "vector_potential", "gauge_centered_potential",
    "Momentum", "KineticState", "ModeResult", "SolverError",
    "transverse_energy", "quasienergy", "transition_amplitude", "qve_rhs",
    "integrate_mode", "oracle_integrate_eq1", "oracle_convergence_check",
    "__version__",
]
