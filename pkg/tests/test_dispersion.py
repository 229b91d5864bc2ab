"""Unit tests for the dispersion relation and phenomenology."""

import math

import numpy as np
import pytest

from latticelight.dispersion import (
    DIAGONAL,
    PLANCK_UNITS,
    EnergyOutOfRangeError,
    FlightScenario,
    UnitSystem,
    angular_frequency_adim,
    angular_frequency_si,
    energy_to_wavevector,
    group_velocity,
    group_velocity_analytic,
    omega,
    saturation_estimate,
    speed_deviation,
    speed_of_light,
    tilt_angle_estimate,
    time_of_flight_delta,
)
from latticelight.walk import MINUS, PLUS, SQRT3, DegeneratePointError, bloch_data


def test_omega_trivial_and_hand_values():
    assert omega(np.zeros(3), PLUS) == pytest.approx(0.0, abs=1e-15)
    k = np.array([math.pi * SQRT3, 0.0, 0.0])
    assert omega(k, PLUS) == pytest.approx(math.pi, abs=1e-13)
    assert omega(k, MINUS) == pytest.approx(math.pi, abs=1e-13)


@pytest.mark.parametrize("sign", [PLUS, MINUS])
def test_omega_small_k_linear(sign):
    rng = np.random.default_rng(31)
    for _ in range(50):
        u = rng.standard_normal(3)
        k = 1e-3 * u / np.linalg.norm(u)
        value = omega(k, sign)
        assert abs(value - 1e-3 / SQRT3) / (1e-3 / SQRT3) <= 1e-4


def test_group_velocity_small_k_diagonal_speed():
    vg = group_velocity(1e-4 * DIAGONAL, MINUS)
    assert np.linalg.norm(vg) == pytest.approx(1.0 / SQRT3, rel=2e-2)


def test_group_velocity_dual_route_agreement():
    rng = np.random.default_rng(32)
    checked = 0
    while checked < 100:
        k = rng.uniform(-2.0, 2.0, 3)
        lam = bloch_data(k / 2.0, MINUS).lam
        if lam < 0.05 or math.pi - lam < 0.05:
            continue
        fd = group_velocity(k, MINUS)
        analytic = group_velocity_analytic(k, MINUS)
        assert np.linalg.norm(fd - analytic) / np.linalg.norm(analytic) <= 1e-6
        checked += 1


def test_group_velocity_not_parallel_to_k_at_large_k():
    k = 0.8 * np.array([0.9, 0.35, 0.25]) / np.linalg.norm([0.9, 0.35, 0.25])
    vg = group_velocity(k, MINUS)
    cosang = np.dot(vg, k) / (np.linalg.norm(vg) * np.linalg.norm(k))
    assert math.acos(min(1.0, cosang)) > 1e-3


def test_group_velocity_degenerate_point():
    with pytest.raises(DegeneratePointError):
        group_velocity(np.zeros(3), MINUS)


def test_speed_of_light_relativistic_limit():
    assert speed_of_light(1e-7, MINUS) == pytest.approx(1.0, abs=1e-6)
    assert speed_of_light(1e-7, PLUS) == pytest.approx(1.0, abs=1e-6)


def test_speed_split_opposite_signs_and_equal_magnitude():
    k = 1e-2
    dev_plus = speed_of_light(k, PLUS) - 1.0
    dev_minus = speed_of_light(k, MINUS) - 1.0
    assert dev_plus < 0.0 < dev_minus
    assert abs(abs(dev_plus) - abs(dev_minus)) <= 0.1 * abs(dev_minus)
    # the closed forms give a diagonal split of magnitude k/9 at leading order
    assert dev_minus == pytest.approx(k / 9.0, rel=2e-2)


def test_speed_matches_gradient_route():
    for kmag in (0.05, 0.5, 1.5):
        via_gradient = SQRT3 * np.linalg.norm(group_velocity(kmag * DIAGONAL, MINUS))
        assert speed_of_light(kmag, MINUS) == pytest.approx(via_gradient, abs=1e-8)


def test_speed_deviation_stable_at_astrophysical_k():
    dev = speed_deviation(1e-19, MINUS)
    assert dev == pytest.approx(1e-19 / 9.0, rel=1e-6)


def test_superluminal_branch_uniformly_bounded():
    mags = np.linspace(1e-3, math.pi * SQRT3, 400)
    speeds = [speed_of_light(m, MINUS) for m in mags]
    assert max(speeds) > 1.0  # superluminal branch exists
    assert max(speeds) < 2.0  # but uniformly bounded


def test_isotropy_violation_bounded():
    rng = np.random.default_rng(33)
    dirs = rng.standard_normal((200, 3))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    values = np.array([omega(0.5 * d, MINUS) for d in dirs])
    assert values.max() - values.min() > 0.0
    dense = [
        omega(np.array([x, y, z]), MINUS)
        for x in np.linspace(-2, 2, 7)
        for y in np.linspace(-2, 2, 7)
        for z in np.linspace(-2, 2, 7)
    ]
    assert values.max() <= max(dense) + 1e-12


def test_tilt_estimate_values():
    assert tilt_angle_estimate(0.0) == 0.0
    k_gamma = energy_to_wavevector(3.5e12)  # TeV-scale photon
    estimate = tilt_angle_estimate(k_gamma)
    assert 1e-16 <= estimate <= 1e-14
    with pytest.raises(ValueError):
        tilt_angle_estimate(-1.0)


def test_unit_round_trip():
    w = 0.4321
    assert angular_frequency_adim(angular_frequency_si(w)) == pytest.approx(w, rel=1e-12)


def test_unit_system_consistency():
    u = UnitSystem()
    assert u.c == pytest.approx(2.9979e8, rel=1e-3)
    assert u.link_length == pytest.approx(SQRT3 * u.planck_length, rel=1e-15)


def test_flight_equal_energies():
    scenario = FlightScenario(
        distance_m=3.0857e25, photon_energies=(("a", 1e9), ("b", 1e9)), sign=MINUS
    )
    rows = time_of_flight_delta(scenario)
    assert len(rows) == 1
    assert rows[0][4] == 0.0


def test_flight_linear_in_distance():
    energies = (("hi", 1e9), ("lo", 1e6))
    r1 = time_of_flight_delta(FlightScenario(1e25, energies, MINUS))[0][4]
    r2 = time_of_flight_delta(FlightScenario(2e25, energies, MINUS))[0][4]
    assert r2 == pytest.approx(2.0 * r1, rel=1e-12)


def test_flight_first_order_agreement():
    # Delta t ~= (D/c) (k2 - k1) * slope with the diagonal slope dev = k/9
    distance = 3.0857e25
    scenario = FlightScenario(distance, (("GeV", 1e9), ("MeV", 1e6)), MINUS)
    full = time_of_flight_delta(scenario)[0][4]
    k1 = energy_to_wavevector(1e9)
    k2 = energy_to_wavevector(1e6)
    first_order = distance / PLANCK_UNITS.c * (k2 - k1) / 9.0
    assert abs(full - first_order) <= 0.01 * abs(first_order)


def test_flight_out_of_range_energy():
    scenario = FlightScenario(1e25, (("planck", 1e29), ("lo", 1e6)), MINUS)
    with pytest.raises(EnergyOutOfRangeError):
        time_of_flight_delta(scenario)


def test_flight_validation():
    with pytest.raises(ValueError):
        FlightScenario(-1.0, (("a", 1e9),), MINUS)
    with pytest.raises(ValueError):
        FlightScenario(1.0, (("a", -1e9),), MINUS)
    with pytest.raises(ValueError):
        time_of_flight_delta(FlightScenario(1e25, (("a", 1e9), ("a", 1e6)), MINUS))


def test_saturation_estimate():
    avogadro = 6.02214076e23
    modes, ratio = saturation_estimate(avogadro, 1e-15)
    cell = (SQRT3 * PLANCK_UNITS.planck_length) ** 3
    assert modes == pytest.approx(4.0 * 1e-21 / cell, rel=1e-12)
    assert ratio < 1e-50  # far below any saturation scale
    modes0, ratio0 = saturation_estimate(0.0, 1e-15)
    assert ratio0 == 0.0
    _, ratio2 = saturation_estimate(2.0 * avogadro, 1e-15)
    assert ratio2 == pytest.approx(2.0 * ratio, rel=1e-12)
