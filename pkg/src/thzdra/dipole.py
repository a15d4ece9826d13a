"""Graphene plasmonic dipole resonances from the guided-mode wavelength.

A dipole of total length ``l`` resonates when ``l = k * lambda_spp / 2``;
odd ``k`` are short-circuit (low input impedance) resonances and even ``k``
open-circuit ones. Gap capacitance and fringing fields are not modelled,
so every prediction is flagged approximate.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .constants import SPEED_OF_LIGHT
from .errors import DomainError, ThzDraError
from .multilayer import hybrid_mode

GAP_CAPACITANCE_CAVEAT = (
    "Dipole resonances follow l = k*lambda_spp/2 and are approximate: the dipole gap "
    "capacitance and fringing fields are not modelled."
)

DEFAULT_WINDOW = (0.5e12, 6e12)
SCAN_POINTS = 23


class ResonanceKind(enum.Enum):
    SHORT_CIRCUIT = "short-circuit"
    OPEN_CIRCUIT = "open-circuit"

    @classmethod
    def for_order(cls, k):
        return cls.OPEN_CIRCUIT if k % 2 == 0 else cls.SHORT_CIRCUIT


@dataclass(frozen=True)
class DipoleGeometry:
    length: float
    width: float = 5e-6  # reporting only
    gap: float = 2e-6

    def __post_init__(self):
        if not self.width > 0:
            raise DomainError(f"dipole width must be positive, got {self.width}")
        if not self.length > self.gap >= 0:
            raise DomainError(f"need length > gap >= 0, got length={self.length}, gap={self.gap}")


@dataclass(frozen=True)
class ResonancePrediction:
    order: int
    frequency: float = None  # None marks a gap (no solution in the window)
    spp_wavelength: float = None
    n_eff: complex = None
    approximate: bool = True
    note: str = None

    @property
    def kind(self):
        return ResonanceKind.for_order(self.order)


class ConstantIndex:
    """Dispersionless stand-in for a stack: ``n_eff`` fixed at every frequency."""

    def __init__(self, n_eff):
        self.n_eff_value = complex(n_eff)

    def n_eff(self, frequency, seed=None):
        return self.n_eff_value


class StackModes:
    """Hybrid-mode ``n_eff(f)`` of a layer stack, cached per frequency.

    The hybrid mode is the fundamental guided mode (largest ``Re n_eff``),
    found by a full mode search at every new frequency. Continuation along
    frequency can hop to another branch across an anticrossing, which would
    break the design/analysis round trip.
    """

    def __init__(self, stack):
        self.stack = stack
        self._cache = {}

    def n_eff(self, frequency, seed=None):
        frequency = float(frequency)
        if frequency not in self._cache:
            omega = 2 * math.pi * frequency
            self._cache[frequency] = hybrid_mode(self.stack, omega, classify=False).n_eff
        return self._cache[frequency]


def _as_modes(stack_or_modes):
    if hasattr(stack_or_modes, "n_eff"):
        return stack_or_modes
    return StackModes(stack_or_modes)


def spp_wavelength(stack, f):
    """Guided wavelength ``lambda0 / Re(n_eff)`` of the hybrid mode at ``f``.

    ``stack`` is a LayerStack or any object with ``n_eff(frequency)``.
    """
    n = _as_modes(stack).n_eff(f)
    return SPEED_OF_LIGHT / f / n.real


def design_length(stack, f_target, k=2):
    """Dipole length whose k-th resonance sits at ``f_target``."""
    if k < 1:
        raise DomainError(f"resonance order must be >= 1, got {k}")
    return k * spp_wavelength(stack, f_target) / 2


def resonance_frequencies(geom, stack, k_max, window=DEFAULT_WINDOW, rel_tol=1e-12):
    """Predicted resonances k = 1..k_max of a dipole over ``stack``.

    For each order the equation ``l - k*lambda_spp(f)/2 = 0`` is bracketed
    on a frequency grid across ``window`` and refined with Brent's method.
    Orders without a root in the window come back as gap entries.
    """
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    modes = _as_modes(stack)
    f_lo, f_hi = window
    grid = np.linspace(f_lo, f_hi, SCAN_POINTS)
    half_waves = []
    for f in grid:
        try:
            half_waves.append(spp_wavelength(modes, f) / 2)
        except ThzDraError:
            half_waves.append(math.nan)
    half_waves = np.array(half_waves)

    predictions = []
    for k in range(1, k_max + 1):
        mismatch = k * half_waves - geom.length
        found = None
        for i in range(len(grid) - 1):
            if np.isfinite(mismatch[i]) and np.isfinite(mismatch[i + 1]) and mismatch[i] * mismatch[i + 1] <= 0:
                found = i
                break
        if found is None:
            predictions.append(ResonancePrediction(k, note=f"no resonance in {f_lo:.6g}-{f_hi:.6g} Hz"))
            continue

        def g(f):
            return k * spp_wavelength(modes, f) / 2 - geom.length

        f0 = brentq(g, grid[found], grid[found + 1], xtol=1e-300, rtol=rel_tol)
        n = modes.n_eff(f0)
        predictions.append(ResonancePrediction(k, f0, SPEED_OF_LIGHT / f0 / n.real, n))
    return predictions
