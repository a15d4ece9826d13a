import cmath
import math
import time
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import hybrid_template, sheet
from oracles import slab_tm_modes, tm_residual
from thzdra.constants import ETA_0
from thzdra.errors import (
    BranchCutWarning,
    ConvergenceError,
    DomainError,
    NoSppBranchError,
    SpuriousRootError,
)
from thzdra.graphene import EmVariant, conductivity, to_em_model
from thzdra.multilayer.transfer import cladding_kappa
from thzdra.multilayer import (
    HybridStackTemplate,
    Layer,
    LayerStack,
    ModeClass,
    analytic_spp_seed,
    classify_mode,
    dispersion_residual,
    equivalence_check,
    find_modes,
    real_axis_roots,
    solve_mode,
    sweep,
)

F3 = 3e12
W3 = 2 * math.pi * F3
PMMA, GAAS = 2.4, 12.9


def slab(eps_core=GAAS, d=30e-6, lower=PMMA, upper=None, sheets=()):
    return LayerStack(Layer(lower), (Layer(eps_core, d),), Layer(lower if upper is None else upper), sheets)


# stack construction

def test_stack_validation():
    with pytest.raises(DomainError):
        LayerStack(Layer(1.0), (Layer(2.0, 0.0),), Layer(1.0))
    with pytest.raises(DomainError):
        LayerStack(Layer(1.0), (Layer(2.0, 1e-6),), Layer(1.0), ((2, 1e-3j),))
    with pytest.raises(DomainError):
        LayerStack(Layer(1.0), (Layer(2.0, 1e-6),), Layer(1.0), ((0, 1e-3j), (0, 2e-3j)))
    thin = to_em_model(conductivity(sheet(), W3), EmVariant.THIN_BULK, 1e-9)
    with pytest.raises(DomainError):
        LayerStack(Layer(1.0), (), Layer(1.0), ((0, thin),))


# dispersion function

def test_symmetric_slab_oracle_roots_zero_residual():
    stack = slab()
    for n in slab_tm_modes(GAAS, PMMA, 30e-6, F3):
        assert abs(dispersion_residual(stack, W3, n)) < 1e-10


def test_light_line_is_not_a_root():
    value = dispersion_residual(slab(), W3, math.sqrt(PMMA) + 0j)
    assert np.isfinite(value) and abs(value) > 1e-3


def test_zero_sheet_is_transparent_in_residual():
    bare = slab(upper=1.0)
    dressed = slab(upper=1.0, sheets=((0, 0j), (1, 0j)))
    for n in (2.0, 3.1 - 0.01j, 3.4 + 0.2j):
        assert dispersion_residual(dressed, W3, n) == dispersion_residual(bare, W3, n)


@pytest.mark.parametrize("n", [2.0, 3.2 - 0.01j, 5.0 - 0.3j, 1.7 + 0.05j])
@pytest.mark.parametrize("sign", [1, -1])
def test_residual_matches_cos_sin_reference_either_interior_sign(n, sign):
    template = hybrid_template()
    stack, omega = template.build()
    sigma = stack.sheet_conductances(omega)
    layers = [layer.relative_permittivity for layer in (stack.lower,) + stack.interior + (stack.upper,)]
    thicknesses = [layer.thickness for layer in stack.interior]
    ref = tm_residual(layers, thicknesses, sigma, F3, n, interior_sign=sign)
    assert abs(dispersion_residual(stack, omega, n) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_branch_cut_query_is_nudged_and_flagged():
    with pytest.warns(BranchCutWarning):
        value = dispersion_residual(slab(), W3, 1.0 + 0j)
    assert np.isfinite(value)


# single-sheet plasmon

def two_half_spaces(eps1, eps2, sigma):
    return LayerStack(Layer(eps1), (), Layer(eps2), ((0, sigma),))


def test_symmetric_closed_form():
    sigma = conductivity(sheet(mu=0.8), W3).value
    n = analytic_spp_seed(PMMA, PMMA, sigma, W3)
    assert n * n == pytest.approx(PMMA - (2 * PMMA / (ETA_0 * sigma)) ** 2, rel=1e-14)
    stack = two_half_spaces(PMMA, PMMA, sigma)
    scale = abs(cladding_kappa(n, PMMA) / (1j * PMMA))
    assert abs(dispersion_residual(stack, W3, n)) < 1e-9 * scale


@pytest.mark.parametrize("eps1, eps2", [(PMMA, PMMA), (PMMA, 1.0), (GAAS, PMMA), (1.0, GAAS)])
def test_solver_converges_fast_from_analytic_seed(eps1, eps2):
    sigma = conductivity(sheet(n=1, mu=0.3), W3).value
    seed = analytic_spp_seed(eps1, eps2, sigma, W3)
    mode = solve_mode(two_half_spaces(eps1, eps2, sigma), W3, seed)
    assert mode.iterations <= 5
    assert abs(mode.n_eff - seed) / abs(seed) < 1e-9


def test_large_sigma_approaches_cladding_index_from_above():
    previous = None
    for s in (1e-2, 1e-1, 1.0, 10.0):
        n = analytic_spp_seed(PMMA, PMMA, -1j * s)
        assert n.real > math.sqrt(PMMA)
        if previous is not None:
            assert n.real < previous
        previous = n.real
    assert previous == pytest.approx(math.sqrt(PMMA), rel=1e-4)


def test_lossless_sigma_gives_real_index():
    n = analytic_spp_seed(PMMA, 1.0, -0.02j)
    assert n.imag == pytest.approx(0.0, abs=1e-12 * abs(n))


def test_capacitive_sheet_has_no_spp_branch():
    with pytest.raises(NoSppBranchError):
        analytic_spp_seed(PMMA, PMMA, 0.02j)
    with pytest.raises(DomainError):
        analytic_spp_seed(PMMA, PMMA, -1e-3 - 0.02j)


# solve_mode

def test_lossless_slab_on_pmma_matches_oracle():
    stack = slab(upper=1.0)
    oracle = slab_tm_modes(GAAS, PMMA, 30e-6, F3, eps_cover=1.0)
    for n_ref in oracle:
        mode = solve_mode(stack, W3, n_ref * (1 + 1e-3))
        assert abs(mode.n_eff.imag) <= 1e-12
        assert abs(mode.n_eff - n_ref) <= 1e-9 * n_ref


def test_real_axis_scan_matches_oracle():
    for stack, oracle in (
        (slab(), slab_tm_modes(GAAS, PMMA, 30e-6, F3)),
        (slab(upper=1.0), slab_tm_modes(GAAS, PMMA, 30e-6, F3, eps_cover=1.0)),
        (slab(d=80e-6, upper=1.0), slab_tm_modes(GAAS, PMMA, 80e-6, F3, eps_cover=1.0)),
    ):
        roots = real_axis_roots(stack, W3)
        assert len(roots) == len(oracle)
        for got, want in zip(roots, oracle):
            assert abs(got - want) <= 1e-9 * want


def test_seed_below_cladding_rejected():
    with pytest.raises(DomainError):
        solve_mode(slab(), W3, 1.2)


def test_non_convergence_carries_trace():
    with pytest.raises(ConvergenceError) as info:
        solve_mode(slab(), W3, 3.0 - 0.5j, max_iter=1)
    assert len(info.value.trace) >= 1


@pytest.mark.filterwarnings("ignore::thzdra.errors.BranchCutWarning")
def test_light_line_zero_rejected():
    # a sheet-free half-space pair has only the light-line zero
    stack = LayerStack(Layer(PMMA), (Layer(PMMA, 1e-6),), Layer(PMMA))
    with pytest.raises((SpuriousRootError, ConvergenceError)):
        solve_mode(stack, W3, math.sqrt(PMMA) + 1e-4)


def test_hybrid_stack_beta_decreases_with_mu():
    betas = []
    for mu in np.linspace(0.3, 0.9, 7):
        stack, omega = hybrid_template(mu_ev=mu).build()
        betas.append(find_modes(stack, omega, classify=False)[0].beta_norm)
    assert all(b1 > b2 for b1, b2 in zip(betas, betas[1:]))


def test_reported_modes_are_guided_and_passive(hybrid_stack):
    stack, omega = hybrid_stack
    modes = find_modes(stack, omega)
    assert modes
    for mode in modes:
        assert mode.n_eff.real > stack.cladding_index
        assert mode.alpha_norm >= 0
        for clad in (stack.lower, stack.upper):
            assert cladding_kappa(mode.n_eff, clad.relative_permittivity).real > 0
        assert mode.classification in tuple(ModeClass)


def test_classification_thresholds():
    stack = slab(upper=1.0)
    ref = 3.0
    assert classify_mode(stack, W3, 4.6, ref) is ModeClass.SPP_LIKE
    assert classify_mode(stack, W3, 3.2, ref) is ModeClass.DIELECTRIC_LIKE
    assert classify_mode(stack, W3, 3.6, ref) is ModeClass.HYBRID


def test_strong_plasmon_is_spp_like():
    stack = LayerStack(Layer(PMMA), (Layer(GAAS, 2e-6),), Layer(1.0), ((0, conductivity(sheet(n=1, mu=0.1), W3)),))
    modes = find_modes(stack, W3)
    assert modes[0].classification is ModeClass.SPP_LIKE


# spectrum symmetries

def _spectrum(stack, omega):
    return [m.n_eff for m in find_modes(stack, omega, classify=False)]


def test_mirror_stack_spectrum(hybrid_stack):
    stack, omega = hybrid_stack
    forward = _spectrum(stack, omega)
    backward = _spectrum(stack.mirrored(), omega)
    assert len(forward) == len(backward)
    for a, b in zip(forward, backward):
        assert abs(a - b) <= 1e-10 * abs(a)


def test_zero_sheet_never_changes_modes():
    bare = LayerStack(Layer(PMMA), (Layer(PMMA, 3e-6), Layer(GAAS, 30e-6)), Layer(1.0))
    for index in range(3):
        dressed = LayerStack(bare.lower, bare.interior, bare.upper, ((index, 0j),))
        for a, b in zip(_spectrum(bare, W3), _spectrum(dressed, W3)):
            assert abs(a - b) <= 1e-12 * abs(a)


@settings(max_examples=15, deadline=None)
@given(
    d1=st.floats(0.5e-6, 10e-6),
    d2=st.floats(5e-6, 60e-6),
    mu=st.floats(0.1, 1.0),
    f=st.floats(1e12, 5e12),
)
def test_mirror_property(d1, d2, mu, f):
    template = HybridStackTemplate(sheet(mu=mu), frequency=f, d_H=d2, d_L=d1)
    stack, omega = template.build()
    forward = _spectrum(stack, omega)
    backward = _spectrum(stack.mirrored(), omega)
    assert len(forward) == len(backward)
    for a, b in zip(forward, backward):
        assert abs(a - b) <= 1e-9 * abs(a)


# sweeps and model equivalence

def test_mu_sweep_trends():
    grid = np.linspace(0.3, 0.9, 25) * 1.602176634e-19
    points = sweep(hybrid_template(), "chemical_potential", grid)
    assert not any(p.is_gap for p in points)
    beta = [p.mode.beta_norm for p in points]
    alpha = [p.mode.alpha_norm for p in points]
    assert all(b1 > b2 for b1, b2 in zip(beta, beta[1:]))
    assert all(a1 > a2 for a1, a2 in zip(alpha, alpha[1:]))
    assert [p.value for p in points] == list(grid)


def test_dh_sweep_trends():
    grid = np.linspace(15e-6, 35e-6, 21)
    points = sweep(hybrid_template(), "dH", grid)
    assert not any(p.is_gap for p in points)
    beta = [p.mode.beta_norm for p in points]
    alpha = [p.mode.alpha_norm for p in points]
    assert all(b1 < b2 for b1, b2 in zip(beta, beta[1:]))
    assert all(a1 > a2 for a1, a2 in zip(alpha, alpha[1:]))


def test_coarse_grid_stays_on_fine_grid_branch():
    fine = sweep(hybrid_template(), "dH", np.linspace(15e-6, 35e-6, 21))
    coarse = sweep(hybrid_template(), "dH", [15e-6, 25e-6, 35e-6])
    for point, index in zip(coarse, (0, 10, 20)):
        assert abs(point.mode.n_eff - fine[index].mode.n_eff) < 1e-8


def test_descending_grid_keeps_order():
    grid = [35e-6, 30e-6, 25e-6]
    points = sweep(hybrid_template(), "dH", grid)
    assert [p.value for p in points] == grid


def test_constant_grid_is_a_fixed_point():
    points = sweep(hybrid_template(), "chemical_potential", [0.9 * 1.602176634e-19] * 4)
    assert len({p.mode.n_eff for p in points}) == 1


def test_sweep_grid_preconditions():
    with pytest.raises(DomainError):
        sweep(hybrid_template(), "dH", [30e-6])
    with pytest.raises(DomainError):
        sweep(hybrid_template(), "dH", [10e-6, 30e-6, 20e-6])
    with pytest.raises(DomainError):
        sweep(hybrid_template(), "width", [1.0, 2.0])


def test_lost_branch_becomes_gap():
    # the GaAs slab mode of a vanishing H-layer cannot exist below zero thickness
    points = sweep(hybrid_template(), "dH", [30e-6, 20e-6, -1e-6])
    assert points[-1].is_gap
    assert points[-1].error
    assert not points[0].is_gap


def test_equivalence_hybrid_stack(hybrid_stack):
    stack, omega = hybrid_stack
    assert equivalence_check(stack, omega, 1.7e-9) < 1e-2
    deviations = [equivalence_check(stack, omega, d) for d in (10e-9, 5e-9, 2e-9, 1e-9)]
    assert all(a > b for a, b in zip(deviations, deviations[1:]))


def test_equivalence_zero_sigma():
    stack = LayerStack(Layer(PMMA), (Layer(PMMA, 3e-6), Layer(GAAS, 30e-6)), Layer(1.0), ((0, 0j),))
    assert equivalence_check(stack, W3, 1.7e-9) < 1e-14


def test_equivalence_needs_a_sheet():
    with pytest.raises(DomainError):
        equivalence_check(slab(), W3, 1e-9)


def test_oracle_suite_runtime():
    start = time.perf_counter()
    test_symmetric_slab_oracle_roots_zero_residual()
    test_symmetric_closed_form()
    test_zero_sheet_is_transparent_in_residual()
    test_mirror_stack_spectrum(hybrid_template().build())
    assert time.perf_counter() - start < 10
