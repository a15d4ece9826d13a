"""Closed-form TM plasmon on a conductive sheet between two half-spaces."""

import cmath

from ..constants import ETA_0
from ..errors import ConvergenceError, DomainError, NoSppBranchError


def _sigma_value(sigma):
    return complex(getattr(sigma, "value", sigma))


def analytic_spp_seed(eps1, eps2, sigma, omega=None, tol=1e-14, max_iter=60):
    """Effective index of the sheet plasmon between ``eps1`` and ``eps2``.

    Solves ``eps1/kappa1 + eps2/kappa2 = j*eta0*sigma`` with
    ``kappa_i = sqrt(n^2 - eps_i)`` on the decaying branch. The symmetric
    case is closed form, ``n^2 = eps - (2*eps/(eta0*sigma))^2``; otherwise
    Newton iteration in ``n^2``, started where the denser side alone would
    balance the sheet term. For a lossless sheet the function is convex and
    decreasing in ``n^2`` there, so the iterates climb onto the root without
    crossing a cut. ``omega`` is accepted for interface symmetry; the
    relation only needs the sheet conductance.
    """
    s = _sigma_value(sigma)
    if s.real < 0:
        raise DomainError(f"active sheet (Re sigma < 0): {s}")
    if not s.imag < 0:
        raise NoSppBranchError(f"no SPP branch: TM plasmon needs an inductive sheet (Im sigma < 0), got {s}")
    eps1, eps2 = complex(eps1), complex(eps2)
    sn = ETA_0 * s

    def symmetric(eps):
        kappa = -2j * eps / sn
        return eps + kappa * kappa, kappa

    if eps1 == eps2:
        n2, kappa = symmetric(eps1)
        if kappa.real <= 0:
            raise NoSppBranchError(f"no SPP branch for sigma={s}")
        return cmath.sqrt(n2)

    dense = eps1 if eps1.real >= eps2.real else eps2
    kappa0 = -1j * dense / sn
    n2 = dense + kappa0 * kappa0
    for _ in range(max_iter):
        k1 = cmath.sqrt(n2 - eps1)
        k2 = cmath.sqrt(n2 - eps2)
        g = eps1 / k1 + eps2 / k2 - 1j * sn
        dg = -0.5 * (eps1 / k1**3 + eps2 / k2**3)
        step = g / dg
        n2 -= step
        if abs(step) <= tol * abs(n2):
            break
    else:
        raise ConvergenceError("single-interface SPP iteration did not converge")
    k1, k2 = cmath.sqrt(n2 - eps1), cmath.sqrt(n2 - eps2)
    if k1.real <= 0 or k2.real <= 0 or abs(eps1 / k1 + eps2 / k2 - 1j * sn) > 1e-9 * abs(sn):
        raise NoSppBranchError(f"no bound SPP between eps={eps1} and eps={eps2} for sigma={s}")
    return cmath.sqrt(n2)
