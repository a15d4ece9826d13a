"""Parametrised hybrid plasmonic stack used by sweeps and the design flow.

Bottom to top: substrate half-space, optional under-layer, graphene sheet,
L-layer spacer (``d_L``), H-layer (``d_H``), cover half-space. Zero
thicknesses drop the layer. The defaults are the PMMA / graphene / PMMA /
GaAs / air stack at 3 THz.
"""

import math
from dataclasses import dataclass, replace

from ..errors import DomainError
from .stack import Layer, LayerStack

EPS_PMMA = 2.4
EPS_GAAS = 12.9

PARAMETERS = ("frequency", "chemical_potential", "dH", "dL")


@dataclass(frozen=True)
class HybridStackTemplate:
    graphene: object
    frequency: float = 3e12
    d_H: float = 30e-6
    d_L: float = 3e-6
    eps_L: float = EPS_PMMA
    eps_H: float = EPS_GAAS
    eps_substrate: float = EPS_PMMA
    eps_cover: float = 1.0
    d_under: float = 0.0
    eps_under: float = EPS_PMMA

    @property
    def omega(self):
        return 2 * math.pi * self.frequency

    def with_parameter(self, parameter, value):
        if parameter == "frequency":
            return replace(self, frequency=float(value))
        if parameter == "dH":
            return replace(self, d_H=float(value))
        if parameter == "dL":
            return replace(self, d_L=float(value))
        if parameter == "chemical_potential":
            return replace(self, graphene=self.graphene.replace(chemical_potential=float(value)))
        raise DomainError(f"unknown sweep parameter {parameter!r}; expected one of {PARAMETERS}")

    def build(self):
        """Return ``(LayerStack, omega)``."""
        for name in ("d_H", "d_L", "d_under"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0, got {getattr(self, name)}")
        if not self.frequency > 0:
            raise DomainError(f"frequency must be > 0, got {self.frequency}")
        interior = []
        if self.d_under > 0:
            interior.append(Layer(self.eps_under, self.d_under))
        sheet_index = len(interior)
        if self.d_L > 0:
            interior.append(Layer(self.eps_L, self.d_L))
        if self.d_H > 0:
            interior.append(Layer(self.eps_H, self.d_H))
        stack = LayerStack(
            Layer(self.eps_substrate), tuple(interior), Layer(self.eps_cover), ((sheet_index, self.graphene),)
        )
        return stack, self.omega
