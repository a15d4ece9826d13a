import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import drude_limit, interband_trapezoid
from thzdra.constants import BOLTZMANN, ELEMENTARY_CHARGE, EPSILON_0, HBAR
from thzdra.errors import DomainError
from thzdra.graphene import (
    AS_PRINTED,
    EmVariant,
    GrapheneSheet,
    SurfaceConductivity,
    conductivity,
    default_thickness,
    interband_conductivity,
    intraband_conductivity,
    to_em_model,
)

W3 = 2 * math.pi * 3e12
TAU = 0.6e-12


def sheet(n=1, mu=0.8, tau=TAU, t=300.0):
    return GrapheneSheet.from_ev(n, mu, tau, t)


def test_constants_are_codata():
    assert ELEMENTARY_CHARGE == 1.602176634e-19
    assert HBAR == 1.054571817e-34
    assert BOLTZMANN == 1.380649e-23
    assert EPSILON_0 == 8.8541878128e-12


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(layer_count=0, chemical_potential=0.0, relaxation_time=TAU),
        dict(layer_count=6, chemical_potential=0.0, relaxation_time=TAU),
        dict(layer_count=1, chemical_potential=-1e-20, relaxation_time=TAU),
        dict(layer_count=1, chemical_potential=0.0, relaxation_time=0.0),
        dict(layer_count=1, chemical_potential=0.0, relaxation_time=TAU, temperature=0.0),
    ],
)
def test_sheet_validation(kwargs):
    with pytest.raises(DomainError):
        GrapheneSheet(**kwargs)


# intraband

def test_intraband_mu_zero_bracket_is_two_ln_two():
    s = sheet(mu=0.0)
    kt = BOLTZMANN * 300.0
    expected = -1j / (W3 - 1j / TAU) * ELEMENTARY_CHARGE**2 * kt / (math.pi * HBAR**2) * 2 * math.log(2)
    assert intraband_conductivity(s, W3) == pytest.approx(expected, rel=1e-14)


def test_intraband_matches_drude_at_reference_point():
    s = sheet(mu=0.8)
    value = intraband_conductivity(s, W3)
    ref = drude_limit(s.chemical_potential, TAU, W3)
    assert abs(value - ref) / abs(ref) < 5e-3


def test_intraband_lossless_limit_is_imaginary():
    s = sheet(mu=0.8, tau=1e300)
    value = intraband_conductivity(s, W3)
    assert value.real == 0.0 or abs(value.real) < 1e-300
    assert value.imag < 0


def test_intraband_stable_for_huge_mu_over_kt():
    s = sheet(mu=1.0, t=1e-3)
    value = intraband_conductivity(s, W3)
    assert np.isfinite(value)
    assert value == pytest.approx(drude_limit(s.chemical_potential, TAU, W3), rel=1e-12)


def test_nonpositive_omega_rejected():
    with pytest.raises(DomainError):
        intraband_conductivity(sheet(), 0.0)
    with pytest.raises(DomainError):
        interband_conductivity(sheet(), -1.0)


# interband

def test_interband_matches_brute_force_oracle():
    s = sheet(mu=0.8)
    value = interband_conductivity(s, W3)
    ref = interband_trapezoid(s.chemical_potential, TAU, 300.0, W3)
    assert abs(value - ref) / abs(ref) < 1e-5


@pytest.mark.parametrize("mu, f", [(0.1, 6e12), (0.3, 0.5e12), (0.05, 20e12), (0.0, 3e12)])
def test_interband_oracle_other_regimes(mu, f):
    s = sheet(mu=mu)
    w = 2 * math.pi * f
    ref = interband_trapezoid(s.chemical_potential, TAU, 300.0, w)
    assert abs(interband_conductivity(s, w) - ref) / abs(ref) < 1e-5


def test_interband_truncation_and_tolerance_invariance():
    s = sheet(mu=0.8)
    base = interband_conductivity(s, W3)
    doubled = interband_conductivity(s, W3, factor=80.0)
    tighter = interband_conductivity(s, W3, rel_tol=0.5e-11)
    assert abs(doubled - base) / abs(base) < 1e-8
    assert abs(tighter - base) / abs(base) < 1e-8


def test_pauli_blocking_at_low_temperature():
    s = sheet(mu=0.8, t=1.0)
    assert abs(interband_conductivity(s, W3)) < 1e-3 * abs(intraband_conductivity(s, W3))


def test_universal_conductivity_far_above_two_mu():
    s = sheet(mu=0.05, tau=1e-9)
    w = 2 * math.pi * 200e12
    sigma0 = ELEMENTARY_CHARGE**2 / (4 * HBAR)
    assert interband_conductivity(s, w).real == pytest.approx(sigma0, rel=1e-3)


def test_as_printed_numerator_differs_and_is_finite():
    s = sheet(mu=0.8)
    printed = interband_conductivity(s, W3, numerator=AS_PRINTED)
    standard = interband_conductivity(s, W3)
    assert np.isfinite(printed)
    assert abs(printed - standard) > 1e-3 * abs(standard)


def test_unknown_numerator_rejected():
    with pytest.raises(DomainError):
        interband_conductivity(sheet(), W3, numerator="plus")


# total

def test_layer_count_linearity_exact():
    one = conductivity(sheet(n=1), W3).value
    for n in range(1, 6):
        assert conductivity(sheet(n=n), W3).value == n * one


def test_imag_part_grows_with_mu():
    low = conductivity(sheet(n=5, mu=0.3), W3).value
    high = conductivity(sheet(n=5, mu=0.9), W3).value
    assert abs(high.imag) > abs(low.imag)


def test_result_type():
    result = conductivity(sheet(), W3)
    assert isinstance(result, SurfaceConductivity)
    assert result.omega == W3


PASSIVITY_GRID = [
    (f, mu, n)
    for f in np.linspace(0.5e12, 6e12, 10)
    for mu in np.linspace(0.1, 1.0, 10)
    for n in range(1, 6)
]


def test_passivity_grid():
    for f, mu, n in PASSIVITY_GRID:
        assert conductivity(sheet(n=n, mu=mu), 2 * math.pi * f).value.real >= 0


def test_drude_agreement_on_grid():
    kt = BOLTZMANN * 300.0
    for f, mu, _ in PASSIVITY_GRID:
        s = sheet(mu=mu)
        if s.chemical_potential / kt <= 20:
            continue
        w = 2 * math.pi * f
        ref = drude_limit(s.chemical_potential, TAU, w)
        assert abs(intraband_conductivity(s, w) - ref) / abs(ref) < 1e-2


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(1, 5),
    mu=st.floats(0.0, 1.2),
    tau=st.floats(1e-14, 1e-11),
    t=st.floats(4.0, 600.0),
    f=st.floats(0.1e12, 30e12),
)
def test_passivity_property(n, mu, tau, t, f):
    value = conductivity(GrapheneSheet.from_ev(n, mu, tau, t), 2 * math.pi * f).value
    assert value.real >= 0
    assert np.isfinite(value)


# EM models

def test_impedance_is_reciprocal():
    model = to_em_model(SurfaceConductivity(1e-3 + 0j, W3), EmVariant.SURFACE_IMPEDANCE)
    assert model.surface_impedance == 1000


def test_zero_sigma_impedance_divides_by_zero():
    with pytest.raises(ZeroDivisionError):
        to_em_model(SurfaceConductivity(0j, W3), EmVariant.SURFACE_IMPEDANCE)


def test_thin_bulk_formula_and_halving():
    sigma = conductivity(sheet(n=5), W3)
    full = to_em_model(sigma, EmVariant.THIN_BULK, 1.7e-9)
    half = to_em_model(sigma, EmVariant.THIN_BULK, 0.85e-9)
    assert full.relative_permittivity == 1 - 1j * sigma.value / (W3 * EPSILON_0 * 1.7e-9)
    assert (half.relative_permittivity - 1) == pytest.approx(2 * (full.relative_permittivity - 1), rel=1e-15)
    back = 1j * W3 * EPSILON_0 * 1.7e-9 * (full.relative_permittivity - 1)
    assert back == pytest.approx(sigma.value, rel=1e-15)


def test_thin_bulk_needs_thickness():
    with pytest.raises(DomainError):
        to_em_model(conductivity(sheet(), W3), EmVariant.THIN_BULK, 0.0)


@pytest.mark.parametrize("mu", [0.1, 0.5, 0.9])
def test_loss_sign_consistency(mu):
    sigma = conductivity(sheet(mu=mu), W3)
    eps = to_em_model(sigma, EmVariant.THIN_BULK, 0.34e-9).relative_permittivity
    assert (eps.imag <= 0) == (sigma.value.real >= 0)


def test_default_thickness_per_layer():
    assert default_thickness(sheet(n=5)) == pytest.approx(1.7e-9)
