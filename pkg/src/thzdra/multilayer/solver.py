"""Complex-plane mode solving: Newton with Muller fallback, real-axis scans."""

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from ..constants import ETA_0, SPEED_OF_LIGHT
from ..errors import ConvergenceError, DomainError, NoSppBranchError, SpuriousRootError
from .spp import analytic_spp_seed
from .stack import Layer, LayerStack
from .transfer import cladding_kappa, dispersion_residual, residual_scale

STEP_TOL = 1e-10
RESIDUAL_TOL = 1e-8
MAX_ITER = 100
FD_STEP = 1e-7
DEDUP_TOL = 1e-6


class ModeClass(enum.Enum):
    SPP_LIKE = "spp-like"
    DIELECTRIC_LIKE = "dielectric-like"
    HYBRID = "hybrid"


@dataclass(frozen=True)
class GuidedMode:
    """A converged TM guided mode; ``n_eff = beta/k0 - j*alpha/k0``."""

    frequency: float
    n_eff: complex
    residual: float
    classification: ModeClass = None
    iterations: int = 0
    trace: tuple = field(default=(), repr=False, compare=False)

    @property
    def beta_norm(self):
        return self.n_eff.real

    @property
    def alpha_norm(self):
        return -self.n_eff.imag

    @property
    def wavelength(self):
        """Guided wavelength ``lambda0 / Re(n_eff)``."""
        return SPEED_OF_LIGHT / self.frequency / self.n_eff.real


def _newton(func, seed, max_iter):
    n = complex(seed)
    trace = [n]
    f = func(n)
    best = abs(f)
    stalled = 0
    for it in range(1, max_iter + 1):
        h = FD_STEP * max(abs(n), 1e-300)
        deriv = (func(n + h) - func(n - h)) / (2 * h)
        if deriv == 0 or not cmath.isfinite(deriv):
            return n, it, trace, False
        step = f / deriv
        # backtrack while the residual grows (keeps Newton inside the basin)
        for _ in range(12):
            trial = n - step
            f_trial = func(trial)
            if cmath.isfinite(f_trial) and abs(f_trial) <= abs(f):
                break
            step = 0.5 * step
        n, f = trial, f_trial
        trace.append(n)
        if not cmath.isfinite(f):
            return n, it, trace, False
        if abs(step) < STEP_TOL:
            return n, it, trace, True
        if abs(f) < best:
            best = abs(f)
            stalled = 0
        else:
            stalled += 1
            if stalled >= 6:
                return n, it, trace, False
    return n, max_iter, trace, False


def _muller(func, x0, x1, x2, max_iter, trace):
    f0, f1, f2 = func(x0), func(x1), func(x2)
    for it in range(1, max_iter + 1):
        h1, h2 = x1 - x0, x2 - x1
        if h1 == 0 or h2 == 0 or h1 + h2 == 0:
            break
        d1, d2 = (f1 - f0) / h1, (f2 - f1) / h2
        a = (d2 - d1) / (h2 + h1)
        b = a * h2 + d2
        disc = cmath.sqrt(b * b - 4 * f2 * a)
        den = b + disc if abs(b + disc) >= abs(b - disc) else b - disc
        if den == 0:
            break
        step = -2 * f2 / den
        x0, x1, x2 = x1, x2, x2 + step
        f0, f1, f2 = f1, f2, func(x2)
        trace.append(x2)
        if abs(step) < STEP_TOL:
            return x2, it, True
    return x2, max_iter, False


def _check_guided(stack, n):
    for name, clad in (("lower", stack.lower), ("upper", stack.upper)):
        kappa = cladding_kappa(n, complex(clad.relative_permittivity))
        if not kappa.real > 1e-9:
            raise SpuriousRootError(
                f"root n_eff={n} does not decay in the {name} cladding (kappa={kappa}); light-line zero"
            )
    if not n.real > stack.cladding_index:
        raise SpuriousRootError(f"root n_eff={n} is not above the cladding index {stack.cladding_index}")


def solve_mode(stack, omega, seed, classify=True, max_iter=MAX_ITER):
    """Refine ``seed`` to a guided TM mode of ``stack`` at ``omega``.

    Complex Newton with a central-difference derivative, falling back to
    Muller's method on stagnation. Converged when the step is below 1e-10
    and ``|residual| < 1e-8 * max(1, scale)`` where ``scale`` is the size of
    the two terms of the dispersion function.
    """
    seed = complex(seed)
    if not seed.real > stack.cladding_index:
        raise DomainError(f"seed {seed} is not above the cladding index {stack.cladding_index}")
    sigmas = stack.sheet_conductances(omega)

    def func(n):
        return dispersion_residual(stack, omega, n, sigmas)

    n, iterations, trace, ok = _newton(func, seed, max_iter)
    if not ok:
        tail = trace[-3:] if len(trace) >= 3 else [seed, seed * (1 + 1e-4), seed * (1 - 1e-4)]
        n, extra, ok = _muller(func, *tail, max_iter=max_iter, trace=trace)
        iterations += extra
    residual = abs(func(n))
    if not ok or not residual <= RESIDUAL_TOL * max(1.0, residual_scale(stack, omega, n, sigmas)):
        raise ConvergenceError(
            f"mode solve from seed {seed} did not converge (|residual|={residual:.3e})", trace=trace
        )
    if n.real < 0:
        n = -n  # the dispersion function is even in n_eff
    if 0 < n.imag <= 1e-12 * abs(n):
        n = complex(n.real, 0.0)
    _check_guided(stack, n)
    if n.imag > 0:
        raise SpuriousRootError(f"root n_eff={n} grows along the propagation direction")
    label = classify_mode(stack, omega, n) if classify else None
    return GuidedMode(omega / (2 * math.pi), n, residual, label, iterations, tuple(trace))


def lossless_variant(stack, omega):
    """Drop material and sheet losses (keeps the reactive parts)."""
    return scaled_loss_variant(stack, omega, 0.0)


def scaled_loss_variant(stack, omega, fraction):
    """Scale every loss term (``Im eps``, ``Re sigma``) by ``fraction``."""
    def real_layer(layer):
        eps = complex(layer.relative_permittivity)
        return Layer(complex(eps.real, fraction * eps.imag) if fraction else eps.real, layer.thickness)

    base = LayerStack(
        real_layer(stack.lower),
        tuple(real_layer(layer) for layer in stack.interior),
        real_layer(stack.upper),
        (),
    )
    sheets = tuple(
        (i, complex(fraction * s.real, s.imag)) for i, s in sorted(stack.sheet_conductances(omega).items())
    )
    return LayerStack(base.lower, base.interior, base.upper, sheets)


def solve_from_lossless(stack, omega, seed, steps=8, classify=True):
    """Solve from a lossless-stack root, switching losses on gradually if needed."""
    try:
        return solve_mode(stack, omega, seed, classify=classify)
    except (ConvergenceError, DomainError):
        pass
    n = complex(seed)
    for k in range(1, steps):
        n = solve_mode(scaled_loss_variant(stack, omega, k / steps), omega, n, classify=False).n_eff
    return solve_mode(stack, omega, n, classify=classify)


def _index_ceiling(stack, omega):
    top = stack.core_index
    eps_max = max(complex(layer.relative_permittivity).real
                  for layer in (stack.lower, stack.upper) + stack.interior)
    for sigma in stack.sheet_conductances(omega).values():
        if sigma.imag < 0:
            top = max(top, math.sqrt(eps_max + (2 * eps_max / (ETA_0 * abs(sigma))) ** 2))
    return 1.05 * top + 0.05


def real_axis_roots(stack, omega, samples=4000):
    """All guided roots of a lossless stack, found by sign changes on the real axis.

    The dispersion function is purely imaginary for real ``n_eff`` above
    the cladding index when every permittivity is real and every sheet is
    purely reactive. Returned in descending order.
    """
    sigmas = stack.sheet_conductances(omega)
    if any(abs(s.real) > 0 for s in sigmas.values()) or any(
        complex(layer.relative_permittivity).imag != 0
        for layer in (stack.lower, stack.upper) + stack.interior
    ):
        raise DomainError("real-axis scan requires a lossless stack")
    lo = stack.cladding_index
    hi = _index_ceiling(stack, omega)

    def g(n):
        return dispersion_residual(stack, omega, complex(n, 0.0), sigmas).imag

    grid = lo + (hi - lo) * (np.arange(1, samples + 1) / samples)
    values = np.array([g(x) for x in grid])
    roots = []
    for i in np.nonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)[0]:
        roots.append(brentq(g, grid[i], grid[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps))
    roots.extend(float(grid[i]) for i in np.nonzero(values == 0)[0])
    return sorted(roots, reverse=True)


def bare_slab_index(stack, omega):
    """Fundamental (largest) mode index of the stack with graphene removed.

    Falls back to the cladding index when the bare stack guides nothing.
    """
    bare = lossless_variant(stack.without_sheets(), omega)
    roots = real_axis_roots(bare, omega, samples=1000)
    return roots[0] if roots else stack.cladding_index


def classify_mode(stack, omega, n_eff, reference=None):
    """Heuristic label relative to the bare-stack fundamental index.

    SPP-like above 1.5x the reference, dielectric-like within 10% of it,
    hybrid otherwise.
    """
    ref = bare_slab_index(stack, omega) if reference is None else reference
    ratio = complex(n_eff).real / ref
    if ratio > 1.5:
        return ModeClass.SPP_LIKE
    if abs(ratio - 1.0) <= 0.1:
        return ModeClass.DIELECTRIC_LIKE
    return ModeClass.HYBRID


def spp_seeds(stack, omega):
    """Analytic single-interface plasmon seeds, one per sheet."""
    seeds = []
    layers = (stack.lower,) + stack.interior + (stack.upper,)
    for index, sigma in sorted(stack.sheet_conductances(omega).items()):
        below, above = layers[index], layers[index + 1]
        try:
            seeds.append(analytic_spp_seed(below.relative_permittivity, above.relative_permittivity, sigma, omega))
        except (NoSppBranchError, ConvergenceError, DomainError):
            continue
    return seeds


def find_modes(stack, omega, classify=True):
    """Every guided TM mode reachable from the standard seeds, strongest first.

    Seeds: real-axis roots of the lossless variant, the bare-stack roots,
    and the analytic sheet-plasmon seeds. Distinct converged roots are
    returned sorted by descending ``Re(n_eff)``.
    """
    seeds = list(real_axis_roots(lossless_variant(stack, omega), omega))
    seeds += real_axis_roots(lossless_variant(stack.without_sheets(), omega), omega, samples=1000)
    seeds += spp_seeds(stack, omega)
    reference = bare_slab_index(stack, omega) if classify else None
    modes = []
    for seed in seeds:
        if not complex(seed).real > stack.cladding_index:
            continue
        try:
            mode = solve_from_lossless(stack, omega, seed, classify=False)
        except (ConvergenceError, DomainError):
            continue
        if all(abs(mode.n_eff - m.n_eff) > DEDUP_TOL * abs(m.n_eff) for m in modes):
            modes.append(mode)
    modes.sort(key=lambda m: -m.n_eff.real)
    if classify:
        modes = [_relabel(m, classify_mode(stack, omega, m.n_eff, reference)) for m in modes]
    return modes


def _relabel(mode, label):
    return GuidedMode(mode.frequency, mode.n_eff, mode.residual, label, mode.iterations, mode.trace)
