"""Kubo surface conductivity of few-layer graphene and its EM models.

All inputs are SI: chemical potential in joules, relaxation time in seconds,
temperature in kelvin, angular frequency in rad/s. Time dependence is
``exp(+j*omega*t)``, so a passive sheet has ``Re(sigma) >= 0`` and the
intraband (Drude-like) response is inductive, ``Im(sigma) < 0``.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .constants import BOLTZMANN, ELEMENTARY_CHARGE, EPSILON_0, HBAR
from .errors import DomainError
from .quadrature import adaptive_quad

MAX_LAYERS = 5
# graphite interlayer spacing, used as the default thin-bulk thickness per layer
DEFAULT_LAYER_THICKNESS = 0.34e-9
TRUNCATION_FACTOR = 40.0

STANDARD = "standard"
AS_PRINTED = "as-printed"
NUMERATORS = (STANDARD, AS_PRINTED)


@dataclass(frozen=True)
class GrapheneSheet:
    """Electronic parameters of an N-layer graphene sheet (SI units)."""

    layer_count: int
    chemical_potential: float
    relaxation_time: float
    temperature: float = 300.0

    def __post_init__(self):
        if int(self.layer_count) != self.layer_count or not 1 <= self.layer_count <= MAX_LAYERS:
            raise DomainError(f"layer_count must be an integer in [1, {MAX_LAYERS}], got {self.layer_count}")
        if not self.chemical_potential >= 0:
            raise DomainError(f"chemical_potential must be >= 0, got {self.chemical_potential}")
        if not self.relaxation_time > 0:
            raise DomainError(f"relaxation_time must be > 0, got {self.relaxation_time}")
        if not self.temperature > 0:
            raise DomainError(f"temperature must be > 0, got {self.temperature}")

    @classmethod
    def from_ev(cls, layer_count, chemical_potential_ev, relaxation_time, temperature=300.0):
        return cls(layer_count, chemical_potential_ev * ELEMENTARY_CHARGE, relaxation_time, temperature)

    @property
    def chemical_potential_ev(self):
        return self.chemical_potential / ELEMENTARY_CHARGE

    @property
    def thermal_energy(self):
        return BOLTZMANN * self.temperature

    def replace(self, **changes):
        fields = dict(
            layer_count=self.layer_count,
            chemical_potential=self.chemical_potential,
            relaxation_time=self.relaxation_time,
            temperature=self.temperature,
        )
        fields.update(changes)
        return GrapheneSheet(**fields)


@dataclass(frozen=True)
class SurfaceConductivity:
    value: complex  # S
    omega: float  # rad/s


class EmVariant(enum.Enum):
    SURFACE_IMPEDANCE = "surface-impedance"
    THIN_BULK = "thin-bulk"


@dataclass(frozen=True)
class GrapheneEmModel:
    """Either a surface-impedance boundary or an equivalent thin bulk layer."""

    variant: EmVariant
    sigma: SurfaceConductivity
    surface_impedance: complex = None
    relative_permittivity: complex = None
    thickness: float = None


def _check_omega(omega):
    if not omega > 0 or not math.isfinite(omega):
        raise DomainError(f"omega must be positive and finite, got {omega}")


def _finite(value, what, sheet):
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise DomainError(f"{what} is not finite for {sheet}")
    return value


def intraband_conductivity(sheet, omega):
    """Drude-like intraband Kubo term of a monolayer, in siemens."""
    _check_omega(omega)
    kt = sheet.thermal_energy
    x = sheet.chemical_potential / kt
    # x >= 0, so exp(-x) never overflows
    bracket = x + 2.0 * math.log1p(math.exp(-x))
    scattering = 1.0 / sheet.relaxation_time
    prefactor = -1j / (omega - 1j * scattering)
    value = prefactor * ELEMENTARY_CHARGE**2 * kt / (math.pi * HBAR**2) * bracket
    return _finite(complex(value), "intraband conductivity", sheet)


def fermi_window(energy, chemical_potential, kt, numerator=STANDARD):
    """``f(-E) - f(E)`` (standard) or ``f(-E) + f(E)`` (as printed), overflow-safe."""
    y = np.asarray(energy, dtype=float) / kt
    x = chemical_potential / kt
    if numerator == STANDARD:
        # sinh(y) / (cosh(x) + cosh(y)), scaled by exp(-max(x, y))
        m = np.maximum(x, y)
        num = np.exp(y - m) - np.exp(-y - m)
        den = np.exp(x - m) + np.exp(-x - m) + np.exp(y - m) + np.exp(-y - m)
        return num / den
    if numerator == AS_PRINTED:
        return _expit(x + y) + _expit(x - y)
    raise DomainError(f"numerator must be one of {NUMERATORS}, got {numerator!r}")


def _expit(t):
    return 0.5 * (1.0 + np.tanh(0.5 * t))


def truncation_energy(sheet, omega, factor=TRUNCATION_FACTOR):
    return factor * max(sheet.chemical_potential, sheet.thermal_energy) + HBAR * abs(omega) / 2.0


def interband_integral(sheet, omega, numerator=STANDARD, factor=TRUNCATION_FACTOR, rel_tol=1e-11):
    """Dimensionless interband integral ``J = int_0^inf G(x) / (a^2 - x^2) dx``.

    Energies are scaled by ``E0 = max(mu_c, k_B T)`` and ``a = hbar*(omega -
    j/tau) / (2*E0)``. The quadrature covers ``[0, E_max]``; beyond it the
    Fermi window equals 1 to double precision and the tail is added in
    closed form.
    """
    kt = sheet.thermal_energy
    e0 = max(sheet.chemical_potential, kt)
    a = HBAR * (omega - 1j / sheet.relaxation_time) / (2.0 * e0)
    x_max = truncation_energy(sheet, omega, factor) / e0
    mu = sheet.chemical_potential / e0

    def integrand(x):
        return fermi_window(x * e0, sheet.chemical_potential, kt, numerator) / (a * a - x * x)

    breakpoints = [0.0, x_max]
    for p in (a.real, mu, mu - 5 * kt / e0, mu + 5 * kt / e0):
        if 0.0 < p < x_max:
            breakpoints.append(p)
    body, _ = adaptive_quad(integrand, breakpoints, rel_tol=rel_tol, abs_tol=1e-300)
    tail = -np.log1p(2.0 * a / (x_max - a)) / (2.0 * a)
    return body + tail


def interband_conductivity(sheet, omega, numerator=STANDARD, factor=TRUNCATION_FACTOR, rel_tol=1e-11):
    """Interband Kubo term of a monolayer, in siemens.

    ``numerator`` selects the Fermi factor in the integrand: ``"standard"``
    uses ``f(-E) - f(E)`` (Pauli blocking), ``"as-printed"`` uses
    ``f(-E) + f(E)``.
    """
    _check_omega(omega)
    if numerator not in NUMERATORS:
        raise DomainError(f"numerator must be one of {NUMERATORS}, got {numerator!r}")
    e0 = max(sheet.chemical_potential, sheet.thermal_energy)
    w = omega - 1j / sheet.relaxation_time
    # -j w e^2/(pi hbar^2) * (hbar^2 / (4 E0)) * J
    value = -1j * w * ELEMENTARY_CHARGE**2 / (4.0 * math.pi * e0) * interband_integral(
        sheet, omega, numerator, factor, rel_tol
    )
    return _finite(complex(value), "interband conductivity", sheet)


def conductivity(sheet, omega, numerator=STANDARD):
    """Total sheet conductivity ``N * (sigma_intra + sigma_inter)``."""
    single = intraband_conductivity(sheet, omega) + interband_conductivity(sheet, omega, numerator)
    return SurfaceConductivity(sheet.layer_count * single, float(omega))


def to_em_model(sigma, variant, thickness=None):
    """Convert a sheet conductivity into one of the two equivalent EM models."""
    variant = EmVariant(variant)
    if variant is EmVariant.SURFACE_IMPEDANCE:
        if sigma.value == 0:
            raise ZeroDivisionError("surface impedance undefined for sigma = 0")
        return GrapheneEmModel(variant, sigma, surface_impedance=1.0 / sigma.value)
    if thickness is None or not thickness > 0:
        raise DomainError(f"thin-bulk model needs a positive thickness, got {thickness}")
    eps = 1.0 - 1j * sigma.value / (sigma.omega * EPSILON_0 * thickness)
    return GrapheneEmModel(variant, sigma, relative_permittivity=complex(eps), thickness=float(thickness))


def default_thickness(sheet):
    return sheet.layer_count * DEFAULT_LAYER_THICKNESS
