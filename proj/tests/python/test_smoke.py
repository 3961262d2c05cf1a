import cmath
import math

import pytest

import rydgate as rg

L = rg.RydbergLevel


@pytest.fixture(scope="module")
def atom():
    return rg.Atom(rg.Species.rubidium87())


def test_level_label_and_validation():
    assert L(70, 0, 0.5).label() == "70S1/2"
    with pytest.raises(ValueError):
        L(5, 0, 1.5)


def test_hydrogen_energy():
    h = rg.Species.hydrogen()
    e = rg.level_energy(h, L(10, 0, 0.5))
    assert e == pytest.approx(-h.rydberg_hz / 100, rel=1e-12)


def test_c6_swap_symmetry(atom):
    a = rg.c6_coefficient(atom, L(60, 0, 0.5), L(61, 0, 0.5))
    b = rg.c6_coefficient(atom, L(61, 0, 0.5), L(60, 0, 0.5))
    assert a.c6_hz_um6 == pytest.approx(b.c6_hz_um6, rel=1e-9)
    assert sorted(a.c6_branches_hz_um6) == a.c6_branches_hz_um6


def test_resonance_raises(atom):
    with pytest.raises(ValueError):
        rg.c6_coefficient(atom, L(38, 0, 0.5), L(39, 0, 0.5))


def test_radii_ordering(atom):
    c3 = rg.c3_coefficient(atom, L(70, 0, 0.5), L(70, 1, 0.5))
    c6 = rg.c6_coefficient(atom, L(70, 0, 0.5), L(71, 0, 0.5)).c6_hz_um6
    radii = rg.blockade_radii(c3, c6, 1.0, 1.0)
    assert radii.r_b3_um > radii.r_b6_um
    assert radii.window_ok


def test_resonant_pulse_is_minus_one():
    amp = rg.two_level_pulse(1.0, 0.0, 0.0, 0.0, 0.0, 2 * math.pi)
    assert abs(amp + 1) < 1e-12
    ode = rg.two_level_pulse_ode(1.0, 0.3, -0.2, 0.01, 0.02, 2 * math.pi)
    ref = rg.two_level_pulse(1.0, 0.3, -0.2, 0.01, 0.02, 2 * math.pi)
    assert abs(ode - ref) < 1e-8


def test_dephasing_at_zero_temperature_is_one():
    assert rg.motional_dephasing(0.0, 1.4e-25, 2.0, 1.25, 1e-6) == 1.0


def test_site_average_of_linear_function():
    assert rg.site_average(lambda s: 2 * s + 1, 20.0, 8.0, 0.2) == pytest.approx(41.0, rel=1e-10)


def test_optimized_fidelity(atom):
    model = rg.fidelity_model(atom, rg.GateParams(n=70, omega_mu_mhz=0.4))
    best = rg.optimize_d11(model)
    assert 0.9 < best.f_total < 1.0
    assert model.radii.window_ok
    assert best.coupling_budget == pytest.approx(0.81)
    point = rg.gate_fidelity_pointwise(model.params, best.d11_used)
    assert set(point.amplitudes) == {"00", "01", "10", "11"}
