"""Closed-form evaluation of the two BCC Weyl walk unitaries.

A single step of the walk acts in momentum space as a 2x2 unitary

    A(k) = d(k) I - i n_tilde(k) . sigma = exp(-i n(k) . sigma),

with trigonometric closed forms in the arguments k_alpha / sqrt(3).  There
are exactly two branches, selected by a chirality sign: the two are mirror
images of each other through the reflection k_y -> -k_y.  The minus branch
reduces to exp(-i k/sqrt(3) . sigma) at small wavevector; the plus branch
reduces to the same generator with k_y reflected.

Everything here is a pure function of its arguments and safe to call from
any number of threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SQRT3 = math.sqrt(3.0)

#: per-axis periodicity of every closed form (the trig arguments are k/sqrt3)
AXIS_PERIOD = 2.0 * math.pi * SQRT3

PLUS = +1
MINUS = -1

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
#: sigma^mu for mu = 0..3 (identity first)
PAULI = np.stack([np.eye(2, dtype=complex), SIGMA_X, SIGMA_Y, SIGMA_Z])

# below this |n_tilde| the rotation axis is numerically undefined
_AXIS_TOL = 1e-14


class DegeneratePointError(ValueError):
    """The rotation axis is undefined: |n| vanishes away from the identity."""


def _check_sign(sign):
    if sign not in (PLUS, MINUS):
        raise ValueError(f"chirality sign must be +1 or -1, got {sign!r}")
    return float(sign)


@dataclass(frozen=True)
class BlochData:
    """Bloch decomposition of one walk step: A = d I - i n_tilde.sigma = exp(-i n.sigma).

    Invariants: d^2 + |n_tilde|^2 = 1, lam = arccos(d), |n| = lam, and
    n = lam * n_tilde / sin(lam) away from the removable sin(lam) -> 0 limit.
    """

    d: float
    n_tilde: np.ndarray
    lam: float
    n: np.ndarray


@dataclass(frozen=True)
class WeylStep:
    """One walk step: the 2x2 unitary together with its Bloch decomposition."""

    matrix: np.ndarray
    bloch: BlochData
    sign: int


def bloch_data(k, sign) -> BlochData:
    """Evaluate d, n_tilde, lam, n at wavevector ``k`` for one chirality branch.

    All four quantities are periodic in each component of k with period
    2*pi*sqrt(3).  ``lam`` is computed as atan2(|n_tilde|, d), which agrees
    with arccos(d) but stays fully accurate near d = +-1.  The lam -> 0
    limit of n = lam*n_tilde/sin(lam) is removable and handled without
    division blow-up; at an exact lam = pi degeneracy (n_tilde = 0 with
    d = -1) the axis is genuinely undefined and a DegeneratePointError is
    raised.
    """
    s = _check_sign(sign)
    a = np.asarray(k, dtype=float) / SQRT3
    if a.shape != (3,):
        raise ValueError(f"wavevector must have shape (3,), got {a.shape}")
    cx, cy, cz = np.cos(a)
    sx, sy, sz = np.sin(a)
    d = cx * cy * cz + s * sx * sy * sz
    n_tilde = np.array(
        [
            sx * cy * cz - s * cx * sy * sz,
            -s * cx * sy * cz - sx * cy * sz,
            cx * cy * sz - s * sx * sy * cz,
        ]
    )
    nt_norm = float(np.linalg.norm(n_tilde))
    lam = math.atan2(nt_norm, d)  # in [0, pi]; |n_tilde| = sin(lam)
    if nt_norm >= _AXIS_TOL:
        n = (lam / nt_norm) * n_tilde
    elif lam < math.pi / 2.0:
        # lam/sin(lam) = 1 + lam^2/6 + ...; here lam <= ~1e-14 so the
        # series collapses to n = n_tilde
        n = n_tilde * (1.0 + lam * lam / 6.0)
    else:
        raise DegeneratePointError(
            f"rotation axis undefined at k={np.asarray(k)} (lam=pi, n_tilde=0)"
        )
    return BlochData(d=float(d), n_tilde=n_tilde, lam=lam, n=n)


def _rodrigues_su2(angle: float, axis: np.ndarray) -> np.ndarray:
    """exp(-i * angle * axis.sigma) for a unit 3-vector axis."""
    c = math.cos(angle)
    s = math.sin(angle)
    return c * np.eye(2, dtype=complex) - 1j * s * (
        axis[0] * SIGMA_X + axis[1] * SIGMA_Y + axis[2] * SIGMA_Z
    )


def weyl_step(k, sign) -> WeylStep:
    """Build one walk unitary A(k) and check the two constructions agree.

    The matrix is assembled as d I - i n_tilde.sigma and cross-checked
    against the Pauli exponential exp(-i n.sigma); a mismatch beyond 1e-11
    raises, since it would mean the closed forms are being misused.
    """
    b = bloch_data(k, sign)
    matrix = b.d * np.eye(2, dtype=complex) - 1j * (
        b.n_tilde[0] * SIGMA_X + b.n_tilde[1] * SIGMA_Y + b.n_tilde[2] * SIGMA_Z
    )
    if b.lam >= _AXIS_TOL:
        via_exp = _rodrigues_su2(b.lam, b.n / b.lam)
    else:
        via_exp = _rodrigues_su2(0.0, np.array([0.0, 0.0, 1.0]))
    if np.max(np.abs(matrix - via_exp)) > 1e-11:
        raise RuntimeError("Bloch-form and exponential-form step matrices disagree")
    return WeylStep(matrix=matrix, bloch=b, sign=int(sign))


def step_power(k, sign, t: int) -> np.ndarray:
    """A(k)^t in closed form: a rotation by angle t*lam about the fixed axis.

    The angle is reduced mod 2*pi before the trig evaluation, so there is no
    error accumulation for |t| up to ~1e6; negative t gives inverse steps.
    """
    s = _check_sign(sign)
    a = np.asarray(k, dtype=float) / SQRT3
    cx, cy, cz = np.cos(a)
    sx, sy, sz = np.sin(a)
    d = cx * cy * cz + s * sx * sy * sz
    n_tilde = np.array(
        [
            sx * cy * cz - s * cx * sy * sz,
            -s * cx * sy * cz - sx * cy * sz,
            cx * cy * sz - s * sx * sy * cz,
        ]
    )
    nt_norm = float(np.linalg.norm(n_tilde))
    if nt_norm < _AXIS_TOL:
        # A = d*I with d = +-1 at these isolated points; any axis works
        val = 1.0 if d > 0.0 else (-1.0) ** (int(t) % 2)
        return val * np.eye(2, dtype=complex)
    lam = math.atan2(nt_norm, d)
    angle = math.fmod(t * lam, 2.0 * math.pi)
    return _rodrigues_su2(angle, n_tilde / nt_norm)


def interp_unitary(k, q, sign, t: int) -> np.ndarray:
    """Interpolating unitary U(k, t; q) = A(k/2)^(-t) A(q)^t, exactly.

    ``q`` is the full momentum of the second factor (not an offset from k/2).
    At q = k/2 or t = 0 this is the identity.
    """
    k_half = np.asarray(k, dtype=float) / 2.0
    return step_power(k_half, sign, -t) @ step_power(q, sign, t)


def rotation_vector(k, sign) -> np.ndarray:
    """The rotation vector n(k) with |n| = lam (convenience accessor)."""
    return bloch_data(k, sign).n


def rotation_vector_jacobian(k, sign, step: float = 1e-5) -> np.ndarray:
    """Jacobian matrix of n(.) at ``k`` by central finite differences.

    Column j holds dn/dk_j.  The default step gives ~1e-8 accuracy away from
    degenerate points; tests cross-check against Richardson extrapolation.
    """
    k = np.asarray(k, dtype=float)
    cols = []
    for j in range(3):
        dk = np.zeros(3)
        dk[j] = step
        cols.append((rotation_vector(k + dk, sign) - rotation_vector(k - dk, sign)) / (2.0 * step))
    return np.column_stack(cols)


def approx_interp_unitary(k, q_offset, sign, t: int, step: float = 1e-5) -> np.ndarray:
    """First-order surrogate for U(k, t; k/2 + q_offset).

    Returns exp(-i c t e.sigma) with e = n(k/2)/|n(k/2)| and
    c = e . J_n(k/2) q_offset, where J_n is the Jacobian of the rotation
    vector (central differences with the given step).  Because c is linear
    in the offset, the k/2 - q branch is obtained by negating ``q_offset``:
    the two branches carry opposite rotation senses about the common axis.

    Valid for offsets small against |n(k/2)|; that is the caller's
    responsibility and not checked.  Raises DegeneratePointError when
    |n(k/2)| is below tolerance (no axis to rotate about).
    """
    k_half = np.asarray(k, dtype=float) / 2.0
    b = bloch_data(k_half, sign)
    if b.lam < 1e-12:
        raise DegeneratePointError(f"|n(k/2)| = {b.lam:.3e} too small at k={np.asarray(k)}")
    e = b.n / b.lam
    jac = rotation_vector_jacobian(k_half, sign, step=step)
    c = float(e @ (jac @ np.asarray(q_offset, dtype=float)))
    return _rodrigues_su2(c * t, e)


def canonical_wavevector(k) -> np.ndarray:
    """Map each component of k into the canonical periodic cell (-pi*sqrt3, pi*sqrt3].

    Every closed form in this module is invariant under this map.  The cell
    is the axis-aligned box of full per-axis period; it is a valid
    periodicity domain, not the geometric first Brillouin zone.
    """
    k = np.asarray(k, dtype=float)
    half = AXIS_PERIOD / 2.0
    return half - np.mod(half - k, AXIS_PERIOD)
