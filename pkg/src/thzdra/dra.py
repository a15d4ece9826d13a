"""TE_y^{mnp} resonances of an isolated rectangular dielectric resonator.

The resonator spans ``a`` along x, ``b`` along y and ``d_H`` along z. With
``k_x = m*pi/a``, ``k_z = p*pi/d_H`` and ``k_x^2 + k_y^2 + k_z^2 =
eps_r*k0^2``, a resonance satisfies

    k_y * tan(k_y*b/2) = sqrt((eps_r - 1)*k0^2 - k_y^2)

and index ``n`` picks the root with ``k_y*b/2`` in
``[(n-1)*pi, (n-1)*pi + pi/2)``.
"""

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .constants import SPEED_OF_LIGHT
from .errors import CutoffError, DomainError, RootNotFoundError

ISOLATED_RESONATOR_CAVEAT = (
    "DRA resonance frequencies model a dielectric resonator isolated in free space; "
    "they are approximate for the loaded antenna structure."
)

DEFAULT_WINDOW = (0.1e12, 20e12)


@dataclass(frozen=True)
class DraGeometry:
    a: float
    b: float
    d_H: float
    eps_r: float

    def __post_init__(self):
        for name in ("a", "b", "d_H"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")
        if not self.eps_r > 1:
            raise DomainError(f"eps_r must exceed 1, got {self.eps_r}")

    def scaled(self, s):
        return DraGeometry(self.a * s, self.b * s, self.d_H * s, self.eps_r)


@dataclass(frozen=True, order=True)
class ModeIndex:
    m: int
    n: int
    p: int

    def __post_init__(self):
        for name in ("m", "n", "p"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise DomainError(f"mode index {name} must be a positive integer, got {value}")

    @classmethod
    def parse(cls, text):
        parts = str(text).replace("(", "").replace(")", "").split(",")
        if len(parts) != 3:
            raise DomainError(f"mode must look like 'm,n,p', got {text!r}")
        return cls(*(int(part) for part in parts))

    def __str__(self):
        return f"TE({self.m},{self.n},{self.p})"


def _k0(f):
    return 2 * math.pi * f / SPEED_OF_LIGHT


def _frequency(k0):
    return k0 * SPEED_OF_LIGHT / (2 * math.pi)


def dra_residual(geom, mode, f):
    """``k_y*tan(k_y*b/2) - sqrt((eps_r-1)*k0^2 - k_y^2)`` at frequency ``f``."""
    if not f > 0:
        raise DomainError(f"frequency must be positive, got {f}")
    k0 = _k0(f)
    kx = mode.m * math.pi / geom.a
    kz = mode.p * math.pi / geom.d_H
    ky2 = geom.eps_r * k0 * k0 - kx * kx - kz * kz
    if not ky2 > 0:
        raise CutoffError(f"{mode} is below cutoff at {f:.6g} Hz (k_y^2 <= 0)")
    outside = (geom.eps_r - 1) * k0 * k0 - ky2
    if outside < 0:
        raise CutoffError(f"{mode} has no evanescent exterior field at {f:.6g} Hz")
    ky = math.sqrt(ky2)
    return ky * math.tan(ky * geom.b / 2) - math.sqrt(outside)


def branch_bracket(geom, mode):
    """Frequency interval ``(f_lo, f_hi)`` holding the n-th root, or None."""
    kx = mode.m * math.pi / geom.a
    kz = mode.p * math.pi / geom.d_H
    transverse2 = kx * kx + kz * kz
    ky_lo = 2 * (mode.n - 1) * math.pi / geom.b
    ky_pole = 2 * ((mode.n - 1) * math.pi + math.pi / 2) / geom.b
    k0_lo = math.sqrt((ky_lo**2 + transverse2) / geom.eps_r)
    k0_pole = math.sqrt((ky_pole**2 + transverse2) / geom.eps_r)
    # exterior field stays evanescent only while k0^2 <= kx^2 + kz^2
    k0_hi = min(k0_pole, math.sqrt(transverse2))
    if not k0_hi > k0_lo:
        return None
    return _frequency(k0_lo), _frequency(k0_hi)


def solve_dra_frequency(geom, mode, window=DEFAULT_WINDOW, rel_tol=1e-12):
    """Resonance frequency (Hz) of ``mode``; see ISOLATED_RESONATOR_CAVEAT."""
    f_min, f_max = window
    bracket = branch_bracket(geom, mode)
    if bracket is None:
        raise RootNotFoundError(
            f"{mode} has no root on its branch (scanned {f_min:.6g}-{f_max:.6g} Hz)"
        )
    lo, hi = bracket

    def g(f):
        k0 = _k0(f)
        kx = mode.m * math.pi / geom.a
        kz = mode.p * math.pi / geom.d_H
        ky = math.sqrt(max(geom.eps_r * k0 * k0 - kx * kx - kz * kz, 0.0))
        outside = max((geom.eps_r - 1) * k0 * k0 - ky * ky, 0.0)
        # (k_y b/2) tan(k_y b/2) - (b/2) sqrt(...) : same root, no pole inside
        # the bracket because the upper end stops at or before it
        return ky * math.sin(ky * geom.b / 2) - math.sqrt(outside) * math.cos(ky * geom.b / 2)

    f0 = brentq(g, lo, hi, xtol=1e-300, rtol=rel_tol, maxiter=500)
    if not f_min <= f0 <= f_max:
        raise RootNotFoundError(
            f"{mode} root {f0:.6g} Hz lies outside the scan window {f_min:.6g}-{f_max:.6g} Hz"
        )
    return f0


def enumerate_modes(geom, f_max):
    """All TE_y^{mnp} resonances below ``f_max``, ascending (ties by index)."""
    if not f_max > 0:
        raise DomainError(f"f_max must be positive, got {f_max}")
    k_limit = _k0(f_max) * math.sqrt(geom.eps_r)
    m_max = int(k_limit * geom.a / math.pi)
    p_max = int(k_limit * geom.d_H / math.pi)
    n_max = int(k_limit * geom.b / (2 * math.pi)) + 1
    found = []
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            for p in range(1, p_max + 1):
                mode = ModeIndex(m, n, p)
                bracket = branch_bracket(geom, mode)
                if bracket is None or bracket[0] >= f_max:
                    continue
                f0 = solve_dra_frequency(geom, mode, window=(0.0, math.inf))
                if f0 < f_max:
                    found.append((f0, mode))
    found.sort()
    return [(mode, f0) for f0, mode in found]
