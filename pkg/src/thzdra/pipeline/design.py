"""Three-step antenna design: dipole length, then DRA size, then hand-off."""

import math
from dataclasses import dataclass, field, replace

from scipy.optimize import brentq

from ..dipole import (
    GAP_CAPACITANCE_CAVEAT,
    DipoleGeometry,
    StackModes,
    design_length,
    resonance_frequencies,
)
from ..dra import ISOLATED_RESONATOR_CAVEAT, DraGeometry, ModeIndex, enumerate_modes, solve_dra_frequency
from ..errors import DomainError, InfeasibleDesignError, ThzDraError
from ..graphene import GrapheneSheet
from ..multilayer import EPS_GAAS, EPS_PMMA, HybridStackTemplate

FULL_WAVE_STEP = (
    "Step 3 (not performed here): refine the geometry with a full-wave electromagnetic "
    "simulator; gain, radiation efficiency, patterns and input impedance are outside "
    "the scope of these closed-form predictions."
)
FREE_VARIABLES = ("dH", "a,b")


def reference_graphene():
    return GrapheneSheet.from_ev(5, 0.8, 0.6e-12, 300.0)


@dataclass(frozen=True)
class DesignSpec:
    target_frequency: float
    resonance_order: int = 2
    graphene: GrapheneSheet = field(default_factory=reference_graphene)
    dra_mode: ModeIndex = ModeIndex(1, 1, 2)
    a: float = 20e-6
    b: float = 20e-6
    d_H: float = 60e-6  # only used when the free variable is a,b
    eps_low: float = EPS_PMMA
    eps_high: float = EPS_GAAS
    eps_substrate: float = EPS_GAAS
    eps_cover: float = 1.0
    d_L1: float = 100e-9
    d_L2: float = 100e-9
    dipole_width: float = 5e-6
    dipole_gap: float = 2e-6
    area_budget: tuple = None  # (a_max, b_max)
    free: str = "dH"
    search_window: tuple = (1e-6, 1e-3)

    def __post_init__(self):
        if not self.target_frequency > 0:
            raise DomainError(f"target frequency must be positive, got {self.target_frequency}")
        if self.resonance_order < 1:
            raise DomainError(f"resonance order must be >= 1, got {self.resonance_order}")
        if self.free not in FREE_VARIABLES:
            raise DomainError(f"free variable must be one of {FREE_VARIABLES}, got {self.free!r}")

    def scaled(self, s):
        """Every length multiplied by ``s``, target frequency divided by ``s``."""
        budget = None if self.area_budget is None else tuple(x * s for x in self.area_budget)
        lo, hi = self.search_window
        return replace(
            self,
            target_frequency=self.target_frequency / s,
            a=self.a * s, b=self.b * s, d_H=self.d_H * s,
            d_L1=self.d_L1 * s, d_L2=self.d_L2 * s,
            dipole_width=self.dipole_width * s, dipole_gap=self.dipole_gap * s,
            area_budget=budget, search_window=(lo * s, hi * s),
        )

    def dipole_template(self, d_H=0.0):
        """Substrate / L-layer / graphene / L-layer spacer / optional H-layer / cover."""
        return HybridStackTemplate(
            self.graphene,
            frequency=self.target_frequency,
            d_H=d_H,
            d_L=self.d_L2,
            eps_L=self.eps_low,
            eps_H=self.eps_high,
            eps_substrate=self.eps_substrate,
            eps_cover=self.eps_cover,
            d_under=self.d_L1,
            eps_under=self.eps_low,
        )


@dataclass
class DesignReport:
    spec: DesignSpec
    dipole: DipoleGeometry
    dra: DraGeometry
    dra_frequency: float
    hybrid_n_eff: complex
    dipole_resonances: list
    loaded_n_eff: complex = None
    loaded_dipole_resonances: list = None
    dra_ladder: list = field(default_factory=list)
    caveats: tuple = (ISOLATED_RESONATOR_CAVEAT, GAP_CAPACITANCE_CAVEAT, FULL_WAVE_STEP)


def _dra_frequency(geom, mode):
    return solve_dra_frequency(geom, mode, window=(0.0, math.inf))


def _solve_dra_size(spec):
    """Return (DraGeometry, frequency) with the requested mode on target."""
    mode = spec.dra_mode
    target = spec.target_frequency
    lo, hi = spec.search_window
    if spec.area_budget is not None:
        a_max, b_max = spec.area_budget
    else:
        a_max = b_max = math.inf

    if spec.free == "dH":
        if spec.a > a_max or spec.b > b_max:
            raise InfeasibleDesignError(
                f"a x b = {spec.a:.6g} x {spec.b:.6g} m exceeds the area budget {spec.area_budget}",
                closest=None,
            )

        def build(d):
            return DraGeometry(spec.a, spec.b, d, spec.eps_high)

        free_name = "d_H"
    else:
        ratio = spec.b / spec.a
        hi = min(hi, a_max, b_max / ratio)

        def build(s):
            return DraGeometry(s, s * ratio, spec.d_H, spec.eps_high)

        free_name = "a"

    def mismatch(x):
        try:
            return _dra_frequency(build(x), mode) - target
        except ThzDraError:
            return math.inf  # no root: resonance pushed beyond any window

    f_lo, f_hi = mismatch(lo), mismatch(hi)
    if not (f_lo >= 0 >= f_hi):
        # frequency falls as the resonator grows; report the nearest end
        x = lo if abs(f_lo) < abs(f_hi) else hi
        closest = (free_name, x, target + mismatch(x))
        raise InfeasibleDesignError(
            f"{mode} cannot reach {target:.6g} Hz with {free_name} in [{lo:.6g}, {hi:.6g}] m; "
            f"closest achievable is {closest[2]:.6g} Hz at {free_name}={x:.6g} m",
            closest=closest,
        )
    x = brentq(mismatch, lo, hi, xtol=1e-300, rtol=1e-13, maxiter=500)
    geom = build(x)
    return geom, _dra_frequency(geom, mode)


def design(spec, modes=None):
    """Dipole length for the OC resonance, then DRA dimensions on target.

    ``modes`` optionally replaces the dipole stack's mode model (anything
    with ``n_eff(frequency)``); by default the hybrid mode of the dipole
    stack without the H-layer is used. The report also lists the dipole
    resonances with the designed H-layer in place, since the closed-form
    recipe does not say which cross-section applies.
    """
    k = spec.resonance_order
    if modes is None:
        bare_stack, _ = spec.dipole_template(0.0).build()
        modes = StackModes(bare_stack)
        loaded = True
    else:
        loaded = False
    length = design_length(modes, spec.target_frequency, k)
    dipole = DipoleGeometry(length, spec.dipole_width, spec.dipole_gap)
    window = (spec.target_frequency / 4, spec.target_frequency * 2)
    resonances = resonance_frequencies(dipole, modes, k + 1, window=window)

    dra, dra_f = _solve_dra_size(spec)
    ladder = enumerate_modes(dra, 1.5 * spec.target_frequency)

    report = DesignReport(
        spec=spec,
        dipole=dipole,
        dra=dra,
        dra_frequency=dra_f,
        hybrid_n_eff=modes.n_eff(spec.target_frequency),
        dipole_resonances=resonances,
        dra_ladder=ladder,
    )
    if loaded:
        loaded_stack, _ = spec.dipole_template(dra.d_H).build()
        loaded_modes = StackModes(loaded_stack)
        report.loaded_n_eff = loaded_modes.n_eff(spec.target_frequency)
        report.loaded_dipole_resonances = resonance_frequencies(dipole, loaded_modes, k + 1, window=window)
    return report
