"""TM transfer-matrix dispersion function for planar stacks.

The state vector is ``(H_y, eta0 * E_x)`` at a plane ``z = const``. With
``kappa = sqrt(n_eff**2 - eps)`` the normalized transverse constant and
``Z = kappa / (j*eps)`` the normalized TM wave impedance, a layer of
thickness ``d`` maps the state by

    [[cosh(phi),      -sinh(phi)/Z],
     [-Z*sinh(phi),    cosh(phi)  ]],   phi = kappa * k0 * d

which is even in ``kappa``, so interior layers need no branch choice. A
sheet of conductance ``sigma`` makes ``H_y`` jump by ``-eta0*sigma*E_x``
going upwards. Claddings use the principal root (``Re kappa >= 0``) and the
state leaving the lower cladding is ``(1, -Z_lower)``; the guided-mode
condition is ``E - Z_upper * H = 0`` at the top.
"""

import cmath
import math
import sys
import warnings

from ..constants import ETA_0, SPEED_OF_LIGHT
from ..errors import BranchCutWarning

_BRANCH_NUDGE = 64 * sys.float_info.epsilon


def cladding_kappa(n_eff, eps):
    """Principal-branch ``sqrt(n_eff^2 - eps)`` (``Re >= 0``)."""
    return cmath.sqrt(n_eff * n_eff - eps)


def on_branch_cut(n_eff, eps):
    q = n_eff * n_eff - eps
    return q.imag == 0.0 and q.real < 0.0


def _sinhc(phi):
    if phi == 0:
        return 1.0 + 0j
    return cmath.sinh(phi) / phi


def transfer_state(stack, omega, n_eff, sigmas=None, track_peak=False):
    """Propagate the decaying lower-cladding state to the top.

    Returns ``(H, E, Z_upper)`` at the top interface (normalized fields),
    plus a bound on rounding amplification when ``track_peak``: the larger
    of the peak ``|H| + |E|`` and ``exp(sum |Re phi|)``, the growth a
    rounding error at the bottom can pick up on its way to the top.
    ``sigmas`` may pass precomputed sheet conductances.
    """
    k0 = omega / SPEED_OF_LIGHT
    n_eff = complex(n_eff)
    if sigmas is None:
        sigmas = stack.sheet_conductances(omega)

    eps_lo = complex(stack.lower.relative_permittivity)
    eps_up = complex(stack.upper.relative_permittivity)
    h = 1.0 + 0j
    e = -cladding_kappa(n_eff, eps_lo) / (1j * eps_lo)
    if 0 in sigmas:
        h = h - ETA_0 * sigmas[0] * e
    peak = abs(h) + abs(e)
    growth = 0.0
    for i, layer in enumerate(stack.interior, start=1):
        eps = complex(layer.relative_permittivity)
        kappa = cmath.sqrt(n_eff * n_eff - eps)
        phi = kappa * k0 * layer.thickness
        ch = cmath.cosh(phi)
        growth += abs(phi.real)
        # -sinh(phi)/Z written without dividing by kappa
        m12 = -_sinhc(phi) * k0 * layer.thickness * 1j * eps
        m21 = -(kappa / (1j * eps)) * cmath.sinh(phi)
        h, e = ch * h + m12 * e, m21 * h + ch * e
        if i in sigmas:
            h = h - ETA_0 * sigmas[i] * e
        peak = max(peak, abs(h) + abs(e))
    z_up = cladding_kappa(n_eff, eps_up) / (1j * eps_up)
    if track_peak:
        return h, e, z_up, max(peak, math.exp(min(growth, 700.0)))
    return h, e, z_up


def dispersion_residual(stack, omega, n_eff, sigmas=None):
    """TM guided-mode dispersion function; zero at a guided mode.

    Analytic in ``n_eff`` away from the cladding branch cuts. A query lying
    exactly on a cut (``n_eff**2 - eps`` negative real) is nudged by a few
    ulps towards the decaying side (``Im n_eff < 0``) and a
    BranchCutWarning is issued.
    """
    n_eff = complex(n_eff)
    for clad in (stack.lower, stack.upper):
        if on_branch_cut(n_eff, complex(clad.relative_permittivity)):
            nudged = complex(n_eff.real, n_eff.imag - _BRANCH_NUDGE * max(abs(n_eff), 1.0))
            warnings.warn(
                f"n_eff={n_eff} lies on a cladding branch cut; evaluated at {nudged}",
                BranchCutWarning,
                stacklevel=2,
            )
            n_eff = nudged
            break
    h, e, z_up = transfer_state(stack, omega, n_eff, sigmas)
    return e - z_up * h


def residual_scale(stack, omega, n_eff, sigmas=None):
    """Size of the intermediate field values behind the residual.

    Rounding error in the residual is about machine epsilon times this, so
    convergence tests compare ``|residual|`` against it. Errors grow
    exponentially through thick evanescent layers even when the top values
    cancel, hence the amplification bound rather than the final terms.
    """
    h, e, z_up, peak = transfer_state(stack, omega, n_eff, sigmas, track_peak=True)
    return max(peak, abs(e) + abs(z_up * h)) * max(1.0, abs(z_up))
