"""1D layered hybrid plasmonic waveguides: TM transfer matrices and mode solving."""

from .solver import (
    GuidedMode,
    ModeClass,
    bare_slab_index,
    classify_mode,
    find_modes,
    lossless_variant,
    real_axis_roots,
    solve_mode,
)
from .spp import analytic_spp_seed
from .stack import Layer, LayerStack
from .sweep import SweepPoint, equivalence_check, hybrid_mode, sweep
from .template import EPS_GAAS, EPS_PMMA, HybridStackTemplate
from .transfer import dispersion_residual, transfer_state

__all__ = [
    "EPS_GAAS",
    "EPS_PMMA",
    "GuidedMode",
    "HybridStackTemplate",
    "Layer",
    "LayerStack",
    "ModeClass",
    "SweepPoint",
    "analytic_spp_seed",
    "bare_slab_index",
    "classify_mode",
    "dispersion_residual",
    "equivalence_check",
    "find_modes",
    "hybrid_mode",
    "lossless_variant",
    "real_axis_roots",
    "solve_mode",
    "sweep",
    "transfer_state",
]
