"""Variational exciton and trion binding energies for carbon nanotubes.

Pipeline: tight-binding effective masses -> effective Rydberg/Bohr units
-> variational (or mean-field) solution of the cylinder-surface few-body
problem in a Gaussian x angular basis.
"""
__version__ = "0.1.0"

from .basis import (AngularSet, AxialBasis, BasisSpec, coulomb_potential,
                    preset_basis, scale_exponents)
from .hartree_fock import HFState, hf_binding_energy, scf
from .optimizer import OptimizationRun, optimize
from .quadrature import QuadratureSpec
from .solver import (Spectrum, TrionResult, binding_energy, exciton_energy,
                     solve_generalized, trion_energy)
from .tightbinding import (ChiralIndex, EffectiveMasses, TightBindingParams,
                           effective_masses, enumerate_species,
                           fermi_velocity, is_semiconducting, radius)
from .units import (EffectiveUnits, Environment, dimensionless_radius,
                    effective_units, to_physical_energy)

__all__ = [
    "AngularSet", "AxialBasis", "BasisSpec", "ChiralIndex",
    "EffectiveMasses", "EffectiveUnits", "Environment", "HFState",
    "OptimizationRun", "QuadratureSpec", "Spectrum", "TightBindingParams",
    "TrionResult", "binding_energy", "coulomb_potential",
    "dimensionless_radius", "effective_masses", "effective_units",
    "enumerate_species", "exciton_energy", "fermi_velocity",
    "hf_binding_energy", "is_semiconducting", "optimize", "preset_basis",
    "radius", "scale_exponents", "scf", "solve_generalized",
    "to_physical_energy", "trion_energy",
]
