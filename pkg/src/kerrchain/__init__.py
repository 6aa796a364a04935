"""Mott-insulator / superfluid phase diagram of a Kerr-nonlinear cavity chain."""

from .model import (
    ConvergenceError,
    ModelParams,
    NumericsConfig,
    SectorState,
    ZETA3,
    dispersion,
    hopping_from_cavity_params,
    sector_energy_given_omegabar,
    solve_sector,
    spectrum_over_k,
)
from .phase import (
    CriticalPoint,
    LobeBoundary,
    chemical_potentials,
    critical_hopping,
    tc_sweep,
    trace_lobe,
)
from .ed import (
    EDResult,
    FockBasis,
    build_hamiltonian,
    diagonalize,
    single_cavity_jc_kerr_spectrum,
)

__all__ = [
    "ConvergenceError",
    "ModelParams",
    "NumericsConfig",
    "SectorState",
    "ZETA3",
    "dispersion",
    "hopping_from_cavity_params",
    "sector_energy_given_omegabar",
    "solve_sector",
    "spectrum_over_k",
    "CriticalPoint",
    "LobeBoundary",
    "chemical_potentials",
    "critical_hopping",
    "tc_sweep",
    "trace_lobe",
    "EDResult",
    "FockBasis",
    "build_hamiltonian",
    "diagonalize",
    "single_cavity_jc_kerr_spectrum",
]

__version__ = "0.1.0"
