"""Physical constants (SI) and the sign conventions used across the package.

Time dependence is ``exp(+j*omega*t)`` everywhere. Under this convention a
passive medium has ``Im(eps) <= 0``, a passive sheet has ``Re(sigma) >= 0``,
an inductive (plasmon-supporting) sheet has ``Im(sigma) < 0``, and a guided
mode decaying along +x has ``n_eff = beta/k0 - j*alpha/k0`` with
``alpha >= 0``.
"""

import math

ELEMENTARY_CHARGE = 1.602176634e-19  # C
HBAR = 1.054571817e-34  # J s
BOLTZMANN = 1.380649e-23  # J/K
EPSILON_0 = 8.8541878128e-12  # F/m
SPEED_OF_LIGHT = 299792458.0  # m/s
MU_0 = 1.0 / (EPSILON_0 * SPEED_OF_LIGHT**2)
ETA_0 = 1.0 / (EPSILON_0 * SPEED_OF_LIGHT)  # free-space impedance, ohm

TIME_CONVENTION = "exp(+j*omega*t)"


def angular_frequency(f):
    return 2.0 * math.pi * f


def wavenumber(f):
    """Free-space wavenumber k0 for frequency ``f`` in Hz."""
    return 2.0 * math.pi * f / SPEED_OF_LIGHT
