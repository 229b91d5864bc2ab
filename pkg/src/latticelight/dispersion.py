"""Dispersion relation, wavevector-dependent light speed, and observables.

The angular frequency of the emergent waves is omega(k) = 2|n(k/2)| in
adimensional walk units (one step of time, trig arguments k/sqrt3).  Units
are restored with one step = t_P and one lattice link = sqrt(3) l_P, so the
physical wavenumber is k_phys = k / (sqrt(3) l_P) and the small-k group
speed is exactly c.  The leading deviation is cubic and anisotropic,
proportional to k_x k_y k_z / |k|^2, with opposite signs for the two
chirality branches; along the positive diagonal the minus branch is
superluminal (though uniformly bounded) and the plus branch subluminal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .walk import SQRT3, DegeneratePointError, bloch_data, canonical_wavevector

#: CODATA Planck length (m) and Planck time (s); their ratio is c
PLANCK_LENGTH = 1.616255e-35
PLANCK_TIME = 5.391247e-44

HBAR = 1.054571817e-34  # J s
EV = 1.602176634e-19  # J

_DEGENERATE_TOL = 1e-12


class EnergyOutOfRangeError(ValueError):
    """Photon energy implies a wavevector outside the canonical cell."""


@dataclass(frozen=True)
class UnitSystem:
    """Planck-to-SI conversion constants.

    ``c`` is derived as planck_length / planck_time; the lattice link length
    is sqrt(3) * planck_length.
    """

    planck_length: float = PLANCK_LENGTH
    planck_time: float = PLANCK_TIME
    lattice_spacing_factor: float = SQRT3

    @property
    def c(self) -> float:
        return self.planck_length / self.planck_time

    @property
    def link_length(self) -> float:
        return self.lattice_spacing_factor * self.planck_length


PLANCK_UNITS = UnitSystem()


@dataclass(frozen=True)
class DispersionPoint:
    """omega, group velocity and speed at one wavevector."""

    k: np.ndarray
    omega: float
    group_velocity: np.ndarray
    speed: float


def omega(k, sign) -> float:
    """Angular frequency omega(k) = 2 |n(k/2)| = 2 lam(k/2), walk units."""
    return 2.0 * bloch_data(np.asarray(k, dtype=float) / 2.0, sign).lam


def group_velocity(k, sign, step: float = 1e-5) -> np.ndarray:
    """Gradient of omega by Richardson-extrapolated central differences.

    Undefined where n(k/2) = 0 (band crossing); raises DegeneratePointError
    there instead of returning an arbitrary vector.
    """
    k = np.asarray(k, dtype=float)
    if bloch_data(k / 2.0, sign).lam < _DEGENERATE_TOL:
        raise DegeneratePointError(f"group velocity undefined at k={k} (n = 0)")

    def central(h):
        g = np.zeros(3)
        for j in range(3):
            dk = np.zeros(3)
            dk[j] = h
            g[j] = (omega(k + dk, sign) - omega(k - dk, sign)) / (2.0 * h)
        return g

    coarse = central(step)
    fine = central(step / 2.0)
    return (4.0 * fine - coarse) / 3.0


def group_velocity_analytic(k, sign) -> np.ndarray:
    """Chain-rule gradient of omega: grad omega(k) = -grad d(k/2) / sin lam(k/2).

    Independent closed-form route used to cross-check the finite-difference
    gradient.
    """
    k = np.asarray(k, dtype=float)
    b = bloch_data(k / 2.0, sign)
    sin_lam = math.sin(b.lam)
    if sin_lam < _DEGENERATE_TOL:
        raise DegeneratePointError(f"group velocity undefined at k={k}")
    s = float(sign)
    a = (k / 2.0) / SQRT3
    cx, cy, cz = np.cos(a)
    sx, sy, sz = np.sin(a)
    grad_d = (
        np.array(
            [
                -sx * cy * cz + s * cx * sy * sz,
                -cx * sy * cz + s * sx * cy * sz,
                -cx * cy * sz + s * sx * sy * cz,
            ]
        )
        / SQRT3
    )
    return -grad_d / sin_lam


def dispersion_point(k, sign) -> DispersionPoint:
    k = np.asarray(k, dtype=float)
    vg = group_velocity(k, sign)
    return DispersionPoint(k=k, omega=omega(k, sign), group_velocity=vg, speed=float(np.linalg.norm(vg)))


DIAGONAL = np.array([1.0, 1.0, 1.0]) / SQRT3


def speed_deviation(k_magnitude: float, sign, direction=None) -> float:
    """Normalized group speed minus 1, in a cancellation-free closed form.

    With a = k/(2 sqrt3) the squared normalized speed is exactly

        3 |grad omega|^2 = 1 - sign * sin(2 a_x) sin(2 a_y) sin(2 a_z) / (2 |n_tilde(k/2)|^2),

    an algebraic identity of the closed forms (the gradient components
    reproduce n_tilde except for the sign of one y term, so the deviation
    collapses to a pure product of sines).  Unlike differencing omega, this
    resolves the deviation at astrophysical wavevectors (|k| ~ 1e-19) where
    it falls far below float precision of speed itself.  Along the positive
    diagonal the leading behavior is -sign * |k| / 9.
    """
    direction = DIAGONAL if direction is None else np.asarray(direction, dtype=float)
    direction = direction / np.linalg.norm(direction)
    kvec = k_magnitude * direction
    b = bloch_data(kvec / 2.0, sign)
    nt2 = float(np.sum(b.n_tilde**2))
    if nt2 == 0.0:
        raise DegeneratePointError(f"speed undefined at k={kvec} (n = 0)")
    a2 = kvec / SQRT3  # = 2a
    g = -float(sign) * 0.5 * math.sin(a2[0]) * math.sin(a2[1]) * math.sin(a2[2]) / nt2
    # sqrt(1 + g) - 1 without cancellation
    return g / (1.0 + math.sqrt(1.0 + g))


def speed_of_light(k_magnitude: float, sign, direction=None) -> float:
    """|group velocity|, normalized so the small-k limit is 1.

    Evaluated along the positive diagonal by default (k_x = k_y = k_z =
    k/sqrt3); the sqrt(3) lattice-to-physical factor is applied so the
    returned number multiplies c directly.  Computed through the stable
    closed form of speed_deviation; tests cross-check it against
    sqrt(3) |group_velocity| where finite differences can resolve it.
    """
    return 1.0 + speed_deviation(k_magnitude, sign, direction)


def tilt_angle_estimate(k_magnitude: float) -> float:
    """Leading-order estimate 2k of the polarization-plane tilt (radians).

    The exact per-wavevector tilt is the ``tilt_angle`` of
    bilinear.maxwell_emergence_report; this is the quoted one-parameter
    order estimate.
    """
    if k_magnitude < 0.0:
        raise ValueError("k must be non-negative")
    return 2.0 * k_magnitude


def energy_to_wavevector(energy_ev: float, units: UnitSystem = PLANCK_UNITS) -> float:
    """Adimensional |k| of a photon of the given energy.

    Convention: physical momentum p = hbar * k_phys with k_phys =
    k / (sqrt(3) l_P), so k = sqrt(3) l_P E / (hbar c).  Every astrophysical
    number downstream depends on this choice; it is the unique one for
    which the small-k group speed is exactly c.
    """
    if energy_ev <= 0.0:
        raise ValueError("photon energy must be positive")
    k_phys = energy_ev * EV / (HBAR * units.c)
    return units.link_length * k_phys


def angular_frequency_si(omega_adim: float, units: UnitSystem = PLANCK_UNITS) -> float:
    """Adimensional omega (radians per step) to SI rad/s."""
    return omega_adim / units.planck_time


def angular_frequency_adim(omega_si: float, units: UnitSystem = PLANCK_UNITS) -> float:
    """Inverse of angular_frequency_si."""
    return omega_si * units.planck_time


@dataclass(frozen=True)
class FlightScenario:
    """Pulse-arrival comparison: photons of several energies over one distance."""

    distance_m: float
    photon_energies: tuple  # ((label, energy_eV), ...)
    sign: int
    direction: np.ndarray = field(default_factory=lambda: DIAGONAL.copy())

    def __post_init__(self):
        if self.distance_m <= 0.0:
            raise ValueError("distance must be positive")
        for _, ev in self.photon_energies:
            if ev <= 0.0:
                raise ValueError("photon energies must be positive")


def time_of_flight_delta(scenario: FlightScenario, units: UnitSystem = PLANCK_UNITS):
    """Arrival-time differences Delta t = D (1/v_1 - 1/v_2) for each energy pair.

    Energies are converted to adimensional wavevectors (see
    energy_to_wavevector), the group speed is evaluated along the scenario
    direction, and the distance is treated as flat and static (no redshift
    integration).  Raises EnergyOutOfRangeError when an implied wavevector
    leaves the canonical periodic cell.

    Returns a list of rows (label_1, label_2, k_1, k_2, delta_seconds) over
    all unordered pairs in input order; delta_seconds > 0 means photon 1
    arrives later.
    """
    direction = np.asarray(scenario.direction, dtype=float)
    direction = direction / np.linalg.norm(direction)
    labels = [label for label, _ in scenario.photon_energies]
    if len(set(labels)) != len(labels):
        raise ValueError("photon labels must be distinct")
    deviations = {}
    ks = {}
    for label, ev in scenario.photon_energies:
        kmag = energy_to_wavevector(ev, units)
        kvec = kmag * direction
        if np.max(np.abs(kvec - canonical_wavevector(kvec))) > 1e-9:
            raise EnergyOutOfRangeError(
                f"photon {label!r} at {ev} eV implies k={kmag:.3e} outside the canonical cell"
            )
        ks[label] = kmag
        deviations[label] = speed_deviation(kmag, scenario.sign, direction)
    rows = []
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            l1, l2 = labels[i], labels[j]
            d1, d2 = deviations[l1], deviations[l2]
            # D (1/v1 - 1/v2) with v = c (1 + dev), kept stable for tiny devs
            delta = scenario.distance_m / units.c * (d2 - d1) / ((1.0 + d1) * (1.0 + d2))
            rows.append((l1, l2, ks[l1], ks[l2], delta))
    return rows


def saturation_estimate(photon_count: float, volume_cm3: float, units: UnitSystem = PLANCK_UNITS):
    """Fermionic mode count of a volume and the photon occupancy ratio.

    Convention: one lattice cell of volume (sqrt(3) l_P)^3 carries
    2 fields x 2 spin components = 4 Fermionic modes, so
    modes = 4 V / (sqrt(3) l_P)^3 and ratio = photon_count / modes.
    """
    if photon_count < 0.0 or volume_cm3 <= 0.0:
        raise ValueError("photon_count must be >= 0 and volume positive")
    volume_m3 = volume_cm3 * 1e-6
    cell_volume = units.link_length**3
    modes = 4.0 * volume_m3 / cell_volume
    return modes, photon_count / modes
