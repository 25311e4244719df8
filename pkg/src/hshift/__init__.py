"""Hyperfine frequency shift of two-dimensional atomic hydrogen on superfluid helium."""

from .constants import PhysicalConstants, default_constants
from .errors import ConfigError, DomainError, HShiftError
from .hyperfine import (
    HyperfineSpectrum,
    breit_rabi_closed_form,
    eigensystem,
    hamiltonian_matrix,
    mixing_angle,
    transition_frequency,
)
from .kinetics import KineticsParams, SurfaceDensities
from .shift import ShiftBreakdown, ShiftParams, ab_shift, experiment_reference

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DomainError",
    "HShiftError",
    "HyperfineSpectrum",
    "KineticsParams",
    "PhysicalConstants",
    "ShiftBreakdown",
    "ShiftParams",
    "SurfaceDensities",
    "ab_shift",
    "breit_rabi_closed_form",
    "default_constants",
    "eigensystem",
    "experiment_reference",
    "hamiltonian_matrix",
    "mixing_angle",
    "transition_frequency",
]
