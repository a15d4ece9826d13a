"""Terahertz graphene plasmonic dipole and dielectric resonator antenna toolkit."""

from .dipole import DipoleGeometry, design_length, resonance_frequencies, spp_wavelength
from .dra import DraGeometry, ModeIndex, dra_residual, enumerate_modes, solve_dra_frequency
from .graphene import (
    EmVariant,
    GrapheneEmModel,
    GrapheneSheet,
    SurfaceConductivity,
    conductivity,
    interband_conductivity,
    intraband_conductivity,
    to_em_model,
)

__version__ = "0.1.0"
