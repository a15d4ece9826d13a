"""Planar layer stacks with optional graphene sheets at interfaces."""

import cmath
import math
from dataclasses import dataclass, field

from ..errors import DomainError
from ..graphene import (
    EmVariant,
    GrapheneEmModel,
    GrapheneSheet,
    SurfaceConductivity,
    conductivity,
    to_em_model,
)


@dataclass(frozen=True)
class Layer:
    """A homogeneous layer; claddings carry ``thickness=None``."""

    relative_permittivity: complex
    thickness: float = None

    @property
    def index(self):
        return cmath.sqrt(self.relative_permittivity)


@dataclass(frozen=True)
class LayerStack:
    """Lower cladding, interior layers bottom-to-top, upper cladding.

    Interface ``i`` lies directly below ``interior[i]``; interface
    ``len(interior)`` is the top one. Each entry of ``sheets`` is
    ``(interface_index, sheet)`` where ``sheet`` is a GrapheneSheet, a
    surface-impedance GrapheneEmModel, or a plain complex conductance in
    siemens (frequency independent).
    """

    lower: Layer
    interior: tuple = ()
    upper: Layer = None
    sheets: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "interior", tuple(self.interior))
        object.__setattr__(
            self,
            "sheets",
            tuple((int(i), s.value if isinstance(s, SurfaceConductivity) else s) for i, s in self.sheets),
        )
        if self.upper is None:
            object.__setattr__(self, "upper", self.lower)
        for layer in self.interior:
            if layer.thickness is None or not layer.thickness > 0:
                raise DomainError(f"interior layer needs a positive thickness: {layer}")
        seen = set()
        for index, sheet in self.sheets:
            if not 0 <= index <= len(self.interior):
                raise DomainError(f"sheet interface index {index} out of range")
            if index in seen:
                raise DomainError(f"more than one sheet at interface {index}")
            seen.add(index)
            if isinstance(sheet, GrapheneEmModel) and sheet.variant is EmVariant.THIN_BULK:
                raise DomainError("thin-bulk graphene must be materialized as an interior layer")
            if not isinstance(sheet, (GrapheneSheet, GrapheneEmModel, complex, float, int)):
                raise DomainError(f"unsupported sheet type {type(sheet).__name__}")

    @property
    def cladding_index(self):
        """Largest real cladding index; guided modes need Re(n_eff) above it."""
        return max(self.lower.index.real, self.upper.index.real)

    @property
    def core_index(self):
        return max(layer.index.real for layer in (self.lower, self.upper) + self.interior)

    def sheet_conductances(self, omega):
        """Map interface index -> sheet conductance (S) at ``omega``."""
        out = {}
        for index, sheet in self.sheets:
            if isinstance(sheet, GrapheneSheet):
                out[index] = conductivity(sheet, omega).value
            elif isinstance(sheet, GrapheneEmModel):
                out[index] = 1.0 / sheet.surface_impedance
            else:
                out[index] = complex(sheet)
        return out

    def without_sheets(self):
        return LayerStack(self.lower, self.interior, self.upper, ())

    def with_conductances(self, omega, transform=None):
        """Replace every sheet by its fixed conductance at ``omega``.

        ``transform`` optionally maps each conductance (e.g. to drop losses).
        """
        sheets = []
        for index, sigma in sorted(self.sheet_conductances(omega).items()):
            sheets.append((index, transform(sigma) if transform else sigma))
        return LayerStack(self.lower, self.interior, self.upper, tuple(sheets))

    def mirrored(self):
        """The same structure seen from the other side."""
        n = len(self.interior)
        sheets = tuple((n - index, sheet) for index, sheet in self.sheets)
        return LayerStack(self.upper, self.interior[::-1], self.lower, sheets)

    def materialize_thin_bulk(self, omega, thickness):
        """Replace every sheet by a thin layer of equivalent permittivity.

        The layer of thickness ``thickness`` is inserted at the sheet's
        interface, so the stack grows by ``thickness`` per sheet. A sheet
        with zero conductance carries no material and is simply dropped.
        """
        sigmas = self.sheet_conductances(omega)
        layers = []
        for i in range(len(self.interior) + 1):
            if sigmas.get(i, 0) != 0:
                model = to_em_model(SurfaceConductivity(sigmas[i], omega), EmVariant.THIN_BULK, thickness)
                layers.append(Layer(model.relative_permittivity, thickness))
            if i < len(self.interior):
                layers.append(self.interior[i])
        return LayerStack(self.lower, tuple(layers), self.upper, ())

    def describe(self):
        parts = [f"clad(eps={_fmt(self.lower.relative_permittivity)})"]
        sheet_at = dict(self.sheets)
        for i in range(len(self.interior) + 1):
            if i in sheet_at:
                parts.append(_describe_sheet(sheet_at[i]))
            if i < len(self.interior):
                layer = self.interior[i]
                parts.append(f"layer(eps={_fmt(layer.relative_permittivity)},d={layer.thickness:.9g}m)")
        parts.append(f"clad(eps={_fmt(self.upper.relative_permittivity)})")
        return " | ".join(parts)


def _fmt(eps):
    eps = complex(eps)
    return f"{eps.real:.9g}" if eps.imag == 0 else f"{eps.real:.9g}{eps.imag:+.9g}j"


def _describe_sheet(sheet):
    if isinstance(sheet, GrapheneSheet):
        return (f"graphene(N={sheet.layer_count},mu={sheet.chemical_potential_ev:.9g}eV,"
                f"tau={sheet.relaxation_time:.9g}s,T={sheet.temperature:.9g}K)")
    if isinstance(sheet, GrapheneEmModel):
        return f"sheet(Z={_fmt(sheet.surface_impedance)}ohm)"
    return f"sheet(sigma={_fmt(sheet)}S)"


def total_thickness(stack):
    return math.fsum(layer.thickness for layer in stack.interior)
