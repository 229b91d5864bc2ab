"""Exact Fermionic Fock space over a small discrete momentum set.

The mode set is (field psi/phi) x (spin R/L) x (momentum label); lowering
operators are Jordan-Wigner sparse matrices with signs fixed by the global
ordering field, then spin, then momentum.  On top of the raw algebra this
module builds the pair operators

    gamma_{alpha,beta}(k) = sum_q f_k(q) phi_alpha(k/2 - q) psi_beta(k/2 + q),

their polarization contractions, and generic composite bosons
c = sum_i f(i) psi_i phi_i, and verifies commutation relations, Schwartz
bounds and composite-boson claims by brute force.

Momentum labels are integers; the k/2 +- q arithmetic presumes an even
total k.  The algebra only sees the resulting index pairing, so any lattice
convention can be supplied through explicit pairings as well.

Everything is exact: matrices are sparse with entries built from +-1 and
profile weights, and comparisons are matrix comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import sparse

from .walk import PAULI
from .bilinear import PolarizationFrame

FIELDS = ("psi", "phi")
SPINS = ("R", "L")

MAX_MOMENTA = 5  # keeps the dimension at or below 2**20


class FockSizeError(ValueError):
    """Requested momentum set exceeds the supported space size."""


class UnresolvedMomentumError(KeyError):
    """A k/2 +- q combination with nonzero weight falls outside the momentum set."""


class SaturationError(RuntimeError):
    """(c^dag)^N annihilates the vacuum: Pauli blocking reached."""


def _popcount(x: np.ndarray) -> np.ndarray:
    """Vectorized population count for uint64 arrays."""
    x = x.astype(np.uint64)
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return ((x * np.uint64(0x0101010101010101)) >> np.uint64(56)).astype(np.int64)


class Mode(NamedTuple):
    field: str
    spin: str
    momentum: int


class FockSpace:
    """Fock space with Jordan-Wigner lowering operators for every mode.

    All anticommutation relations are verified as exact sparse-matrix
    identities at build time (disable with verify=False for large spaces
    you have verified before).  After construction every matrix is
    immutable and safe to share across threads.
    """

    def __init__(self, momenta, verify: bool = True):
        momenta = tuple(momenta)
        if not 1 <= len(momenta) <= MAX_MOMENTA:
            raise FockSizeError(f"need 1..{MAX_MOMENTA} momenta, got {len(momenta)}")
        if len(set(momenta)) != len(momenta):
            raise ValueError("momentum labels must be distinct")
        self.momenta = momenta
        self.modes = tuple(
            Mode(field, spin, p) for field in FIELDS for spin in SPINS for p in momenta
        )
        self._positions = {mode: i for i, mode in enumerate(self.modes)}
        self.mode_count = len(self.modes)
        self.dim = 1 << self.mode_count
        self.lowering = [self._build_lowering(i) for i in range(self.mode_count)]
        self.raising = [op.T.tocsr() for op in self.lowering]
        if verify:
            self.verify_anticommutators()

    def _build_lowering(self, position: int) -> sparse.csr_matrix:
        states = np.arange(self.dim, dtype=np.uint64)
        bit = np.uint64(1 << position)
        occupied = states[(states & bit) != 0]
        below = occupied & np.uint64((1 << position) - 1)
        signs = 1.0 - 2.0 * (_popcount(below) % 2).astype(float)
        rows = (occupied ^ bit).astype(np.int64)
        cols = occupied.astype(np.int64)
        return sparse.csr_matrix((signs, (rows, cols)), shape=(self.dim, self.dim))

    def verify_anticommutators(self):
        """Check {a_i, a_j} = 0 and {a_i, a_j^dag} = delta_ij I exactly."""
        identity = sparse.identity(self.dim, format="csr")
        for i in range(self.mode_count):
            a_i = self.lowering[i]
            for j in range(i, self.mode_count):
                a_j = self.lowering[j]
                anti = a_i @ a_j + a_j @ a_i
                anti.eliminate_zeros()
                if anti.nnz:
                    raise RuntimeError(f"{{a_{i}, a_{j}}} != 0")
                mixed = a_i @ self.raising[j] + self.raising[j] @ a_i
                diff = mixed - identity if i == j else mixed
                diff.eliminate_zeros()
                if diff.nnz:
                    raise RuntimeError(f"{{a_{i}, a_{j}^dag}} != delta_{{{i}{j}}} I")

    def position(self, field: str, spin: str, momentum) -> int:
        try:
            return self._positions[Mode(field, spin, momentum)]
        except KeyError:
            if field not in FIELDS or spin not in SPINS:
                raise ValueError(f"unknown mode label ({field!r}, {spin!r})") from None
            raise UnresolvedMomentumError(
                f"momentum {momentum!r} not in space {self.momenta}"
            ) from None

    def annihilator(self, field: str, spin: str, momentum) -> sparse.csr_matrix:
        return self.lowering[self.position(field, spin, momentum)]

    def creator(self, field: str, spin: str, momentum) -> sparse.csr_matrix:
        return self.raising[self.position(field, spin, momentum)]

    def number_operator(self, field: str, spin: str, momentum) -> sparse.csr_matrix:
        position = self.position(field, spin, momentum)
        states = np.arange(self.dim, dtype=np.uint64)
        diag = ((states >> np.uint64(position)) & np.uint64(1)).astype(float)
        return sparse.diags(diag, format="csr")

    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[0] = 1.0
        return v

    def particle_numbers(self) -> np.ndarray:
        """Total occupation of every basis state (index = basis state)."""
        return _popcount(np.arange(self.dim, dtype=np.uint64))


def build_fock(momenta, verify: bool = True) -> FockSpace:
    """Fock space over 4 * len(momenta) modes with build-time verification."""
    return FockSpace(momenta, verify=verify)


# ---------------------------------------------------------------------------
# profiles on an integer momentum lattice


@dataclass(frozen=True)
class LatticeProfile:
    """Discrete normalized profile f_k(q) for an even total pair momentum k."""

    total: int
    weights: tuple  # ((q, weight), ...) sorted by q

    def __post_init__(self):
        if self.total % 2 != 0:
            raise ValueError("total pair momentum must be even (k/2 integral)")
        items = tuple(sorted((int(q), complex(w)) for q, w in self.weights))
        if len({q for q, _ in items}) != len(items):
            raise ValueError("duplicate q in profile")
        norm = sum(abs(w) ** 2 for _, w in items)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"profile not normalized: sum|f|^2 = {norm!r}")
        object.__setattr__(self, "weights", items)

    @property
    def half(self) -> int:
        return self.total // 2

    def weight(self, q: int) -> complex:
        for qq, w in self.weights:
            if qq == q:
                return w
        return 0.0

    def overlap(self, other: "LatticeProfile") -> complex:
        return sum(w * np.conj(other.weight(q)) for q, w in self.weights)


def uniform_profile(total: int, qs) -> LatticeProfile:
    qs = tuple(qs)
    w = 1.0 / math.sqrt(len(qs))
    return LatticeProfile(total=total, weights=tuple((q, w) for q in qs))


def available_profiles(momenta) -> dict:
    """Uniform profiles for every total momentum the lattice supports.

    k = p1 + p2 over mode pairs with even difference; q = (p2 - p1)/2.
    """
    table: dict = {}
    for p1 in momenta:
        for p2 in momenta:
            if (p2 - p1) % 2 == 0:
                table.setdefault(p1 + p2, set()).add((p2 - p1) // 2)
    return {k: uniform_profile(k, sorted(qs)) for k, qs in sorted(table.items())}


# ---------------------------------------------------------------------------
# pair operators


@dataclass(frozen=True)
class CompositeOperator:
    """A sparse quadratic pair operator with a human-readable label."""

    matrix: sparse.csr_matrix
    label: str


def gamma_ab(space: FockSpace, alpha: str, beta: str, pairing, weights) -> sparse.csr_matrix:
    """gamma = sum_j w_j phi_alpha(minus_j) psi_beta(plus_j) from an explicit pairing.

    ``pairing`` is a sequence of (minus_momentum, plus_momentum) labels; the
    caller owns the lattice convention behind it.
    """
    weights = np.asarray(weights, dtype=complex)
    if len(weights) != len(pairing):
        raise ValueError("pairing and weights must have equal length")
    out = sparse.csr_matrix((space.dim, space.dim), dtype=complex)
    for (minus, plus), w in zip(pairing, weights):
        if w == 0.0:
            continue
        out = out + w * (space.annihilator("phi", alpha, minus) @ space.annihilator("psi", beta, plus))
    return out


def gamma_for_profile(space: FockSpace, alpha: str, beta: str, profile: LatticeProfile) -> sparse.csr_matrix:
    """gamma_{alpha,beta}(k) with momenta resolved as k/2 -+ q on the lattice."""
    pairing = [(profile.half - q, profile.half + q) for q, _ in profile.weights]
    weights = [w for _, w in profile.weights]
    return gamma_ab(space, alpha, beta, pairing, weights)


def h_operator(
    space: FockSpace,
    branch: int,
    field: str,
    spin_dag: str,
    spin_in: str,
    prof_dag: LatticeProfile,
    prof_in: LatticeProfile,
) -> sparse.csr_matrix:
    """Hopping operator H^branch appearing in the pair commutator.

    With k = prof_in.total, k' = prof_dag.total, s = (k' - k)/2 and
    branch = +-1:

        H = sum_q f_k(q) conj(f_k'(q + branch*s))
            field^dag_{spin_dag}(k' - k/2 + branch*q) field_{spin_in}(k/2 + branch*q)

    Zero-weight terms are skipped; a nonzero-weight term whose momentum is
    not in the space raises UnresolvedMomentumError.
    """
    if branch not in (+1, -1):
        raise ValueError("branch must be +1 or -1")
    shift = (prof_dag.total - prof_in.total) // 2
    out = sparse.csr_matrix((space.dim, space.dim), dtype=complex)
    for q, w_in in prof_in.weights:
        w_dag = prof_dag.weight(q + branch * shift)
        weight = w_in * np.conj(w_dag)
        if weight == 0.0:
            continue
        mom_dag = prof_dag.total - prof_in.half + branch * q
        mom_in = prof_in.half + branch * q
        out = out + weight * (
            space.creator(field, spin_dag, mom_dag) @ space.annihilator(field, spin_in, mom_in)
        )
    return out


def gamma_weighted_number(
    space: FockSpace, profile: LatticeProfile, field: str, spin: str, branch: int
) -> sparse.csr_matrix:
    """Profile-shaped number operator Gamma^branch = sum_q |f(q)|^2 n(k/2 + branch*q)."""
    if branch not in (+1, -1):
        raise ValueError("branch must be +1 or -1")
    out = sparse.csr_matrix((space.dim, space.dim), dtype=complex)
    for q, w in profile.weights:
        out = out + (abs(w) ** 2) * space.number_operator(field, spin, profile.half + branch * q)
    return out


@dataclass(frozen=True)
class CommutatorReport:
    """Direct [gamma, gamma'^dag] against its identity-minus-hopping assembly."""

    direct: sparse.csr_matrix
    identity_coefficient: complex
    delta_part: sparse.csr_matrix
    assembled: sparse.csr_matrix
    max_abs_difference: float


def commutator_report(space: FockSpace, spec1, spec2) -> CommutatorReport:
    """Compare [gamma_1(k), gamma_2(k')^dag] with its assembled decomposition.

    Each spec is (alpha, beta, profile).  The assembly is
    overlap * delta_spin * I - (delta_{alpha,alpha'} H^+_psi +
    delta_{beta,beta'} H^-_phi); the overlap reduces to 1 for identical
    normalized profiles and to 0 for k != k'.
    """
    alpha1, beta1, prof1 = spec1
    alpha2, beta2, prof2 = spec2
    g1 = gamma_for_profile(space, alpha1, beta1, prof1)
    g2 = gamma_for_profile(space, alpha2, beta2, prof2)
    g2d = g2.conj().T.tocsr()
    direct = (g1 @ g2d - g2d @ g1).tocsr()

    if alpha1 == alpha2 and beta1 == beta2 and prof1.total == prof2.total:
        coefficient = complex(prof1.overlap(prof2))
    else:
        coefficient = 0.0
    delta_part = sparse.csr_matrix((space.dim, space.dim), dtype=complex)
    if alpha1 == alpha2:
        delta_part = delta_part + h_operator(space, +1, "psi", beta2, beta1, prof2, prof1)
    if beta1 == beta2:
        delta_part = delta_part + h_operator(space, -1, "phi", alpha2, alpha1, prof2, prof1)
    assembled = (coefficient * sparse.identity(space.dim, dtype=complex, format="csr") - delta_part).tocsr()

    diff = (direct - assembled).tocsr()
    diff.eliminate_zeros()
    max_abs = float(np.max(np.abs(diff.data))) if diff.nnz else 0.0
    return CommutatorReport(
        direct=direct,
        identity_coefficient=coefficient,
        delta_part=delta_part,
        assembled=assembled,
        max_abs_difference=max_abs,
    )


# ---------------------------------------------------------------------------
# Schwartz bound


def schwartz_bound_check(state, h_matrix, gamma_a, gamma_b, slack: float = 1e-10):
    """Evaluate |<H>| <= sqrt(<Gamma_a><Gamma_b>) on one normalized state."""
    state = np.asarray(state, dtype=complex)
    lhs = abs(np.vdot(state, h_matrix @ state))
    ga = float(np.vdot(state, gamma_a @ state).real)
    gb = float(np.vdot(state, gamma_b @ state).real)
    rhs = math.sqrt(max(ga, 0.0) * max(gb, 0.0))
    return lhs, rhs, lhs <= rhs + slack


@dataclass(frozen=True)
class SchwartzSweep:
    """Exhaustive basis-state sweep of the hopping-operator bound."""

    cases: int
    states: int
    worst_margin: float  # min over everything of rhs - lhs
    holds: bool


def schwartz_exhaustive(space: FockSpace, profiles, slack: float = 1e-10) -> SchwartzSweep:
    """Check the bound on every basis state for every label combination.

    Basis-state expectations only see operator diagonals, so each case is a
    vectorized comparison across all 2^M states.
    """
    profiles = list(profiles)
    worst = math.inf
    cases = 0
    for field in FIELDS:
        for branch in (+1, -1):
            for prof_in in profiles:
                for prof_dag in profiles:
                    for spin_in in SPINS:
                        for spin_dag in SPINS:
                            h = h_operator(space, branch, field, spin_dag, spin_in, prof_dag, prof_in)
                            g_in = gamma_weighted_number(space, prof_in, field, spin_in, branch)
                            g_dag = gamma_weighted_number(space, prof_dag, field, spin_dag, branch)
                            lhs = np.abs(h.diagonal())
                            rhs = np.sqrt(g_in.diagonal().real * g_dag.diagonal().real)
                            worst = min(worst, float(np.min(rhs - lhs)))
                            cases += 1
    return SchwartzSweep(cases=cases, states=space.dim, worst_margin=worst, holds=worst >= -slack)


# ---------------------------------------------------------------------------
# polarization operators


def polarization_matrices(frame: PolarizationFrame) -> list:
    """Spin contraction matrices for the four polarization modes.

    Index 0 is timelike (identity), 1 and 2 transverse (u1, u2), 3
    longitudinal (the axis e).  Each matrix carries a 1/sqrt(2) so that the
    resulting pair mode is unit-normalized on the vacuum.
    """
    vectors = [None, frame.u1, frame.u2, frame.e]
    mats = [PAULI[0]]
    for v in vectors[1:]:
        mats.append(v[0] * PAULI[1] + v[1] * PAULI[2] + v[2] * PAULI[3])
    return [m / math.sqrt(2.0) for m in mats]


def polarization_gamma(
    space: FockSpace, profile: LatticeProfile, frame: PolarizationFrame, index: int
) -> sparse.csr_matrix:
    """gamma^i(k) = sum_{alpha,beta} M^i_{alpha,beta} gamma_{alpha,beta}(k)."""
    mat = polarization_matrices(frame)[index]
    out = sparse.csr_matrix((space.dim, space.dim), dtype=complex)
    for ia, alpha in enumerate(SPINS):
        for ib, beta in enumerate(SPINS):
            w = mat[ia, ib]
            if w == 0.0:
                continue
            out = out + w * gamma_for_profile(space, alpha, beta, profile)
    return out


_DEFAULT_FRAME = PolarizationFrame(
    e=np.array([0.0, 0.0, 1.0]), u1=np.array([1.0, 0.0, 0.0]), u2=np.array([0.0, 1.0, 0.0])
)


@dataclass(frozen=True)
class PolarizationReport:
    """Deviation of [gamma^i(k), gamma^j(k')^dag] from delta_ij delta_kk'."""

    cases: int
    states_checked: int
    deviation_by_particles: dict
    max_deviation: float
    vacuum_deviation: float


def polarization_boson_check(
    space: FockSpace, profiles, frame: PolarizationFrame = _DEFAULT_FRAME, max_particles: int = 2
) -> PolarizationReport:
    """Evaluate the four-mode Bose commutators on all low-occupancy basis states.

    Expectations are taken on the vacuum and on every basis state with total
    particle number <= max_particles; deviations are grouped by particle
    number (they grow with occupancy, vanishing exactly on the vacuum).
    """
    profiles = list(profiles)
    numbers = space.particle_numbers()
    keep = numbers <= max_particles
    kept_numbers = numbers[keep]
    gammas = {}
    for ip, prof in enumerate(profiles):
        for i in range(4):
            gammas[(ip, i)] = polarization_gamma(space, prof, frame, i)
    by_particles: dict = {int(n): 0.0 for n in sorted(set(kept_numbers.tolist()))}
    cases = 0
    for (ip, i), g in gammas.items():
        for (jp, j), g2 in gammas.items():
            g2d = g2.conj().T.tocsr()
            comm = (g @ g2d - g2d @ g).tocsr()
            expected = 1.0 if (ip == jp and i == j) else 0.0
            dev = np.abs(comm.diagonal() - expected)[keep]
            for n in by_particles:
                sel = kept_numbers == n
                if np.any(sel):
                    by_particles[n] = max(by_particles[n], float(np.max(dev[sel])))
            cases += 1
    max_dev = max(by_particles.values())
    return PolarizationReport(
        cases=cases,
        states_checked=int(np.sum(keep)),
        deviation_by_particles=by_particles,
        max_deviation=max_dev,
        vacuum_deviation=by_particles.get(0, 0.0),
    )


# ---------------------------------------------------------------------------
# composite bosons


def default_pairs(space: FockSpace) -> tuple:
    """One (psi, phi) mode pair per (spin, momentum), in deterministic order."""
    return tuple(
        ((spin, p), (spin, p)) for spin in SPINS for p in space.momenta
    )


def composite_boson(space: FockSpace, pairs, weights) -> sparse.csr_matrix:
    """c = sum_i f(i) psi_i phi_i over explicit (psi mode, phi mode) pairs."""
    weights = np.asarray(weights, dtype=complex)
    if len(weights) != len(pairs):
        raise ValueError("pairs and weights must have equal length")
    out = sparse.csr_matrix((space.dim, space.dim), dtype=complex)
    for ((psi_spin, psi_p), (phi_spin, phi_p)), w in zip(pairs, weights):
        if w == 0.0:
            continue
        out = out + w * (
            space.annihilator("psi", psi_spin, psi_p) @ space.annihilator("phi", phi_spin, phi_p)
        )
    return out


def pair_number_operators(space: FockSpace, pairs, weights):
    """(Gamma_psi, Gamma_phi) = profile-weighted number operators of the pair modes."""
    weights = np.asarray(weights, dtype=complex)
    g_psi = sparse.csr_matrix((space.dim, space.dim), dtype=complex)
    g_phi = sparse.csr_matrix((space.dim, space.dim), dtype=complex)
    for ((psi_spin, psi_p), (phi_spin, phi_p)), w in zip(pairs, weights):
        w2 = abs(w) ** 2
        g_psi = g_psi + w2 * space.number_operator("psi", psi_spin, psi_p)
        g_phi = g_phi + w2 * space.number_operator("phi", phi_spin, phi_p)
    return g_psi, g_phi


def purity(weights) -> float:
    """P = sum |f(i)|^4, the single-pair reduced-state purity."""
    w = np.asarray(weights, dtype=complex)
    return float(np.sum(np.abs(w) ** 4))


def pair_condensate(space: FockSpace, c_matrix, n: int) -> np.ndarray:
    """Normalized |N> proportional to (c^dag)^N |0>.

    The normalization is computed numerically from the vector norm.  Raises
    SaturationError when (c^dag)^N |0> vanishes identically (Pauli
    blocking); the vanishing is exact, not a tolerance call.
    """
    cd = c_matrix.conj().T.tocsr()
    v = space.vacuum()
    for _ in range(n):
        v = cd @ v
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise SaturationError(f"(c^dag)^{n} |0> = 0: more pairs than modes")
    return v / norm


def _max_abs(matrix) -> float:
    matrix = matrix.tocsr()
    matrix.eliminate_zeros()
    return float(np.max(np.abs(matrix.data))) if matrix.nnz else 0.0


@dataclass(frozen=True)
class CompositeBosonReport:
    purity: float
    commutator_identity_deviation: float
    sandwich_rows: tuple  # (N, <Gamma_psi>, P, N*P, holds)
    saturation_order: int
    cross_rows: tuple  # (N, |<[c1, c2dag]>|, 2*N*Pmax, holds), empty without a second profile
    cross_identity_deviation: float


def composite_boson_suite(
    space: FockSpace, pairs, weights, n_max: int, second_weights=None, slack: float = 1e-12
) -> CompositeBosonReport:
    """Brute-force verification of the composite-boson relations.

    Checks, as matrices, [c, c^dag] = I - (Gamma_psi + Gamma_phi); for each
    N = 1..n_max the sandwich P <= <N|Gamma_psi|N> <= N P; the exact Pauli
    saturation order; and, given a second orthogonal weight vector, the
    cross-commutator identity and |<N|[c1, c2^dag]|N>| <= 2 N max(P1, P2).
    Raises SaturationError if n_max exceeds the constructible N.
    """
    weights = np.asarray(weights, dtype=complex)
    c1 = composite_boson(space, pairs, weights)
    g_psi, g_phi = pair_number_operators(space, pairs, weights)
    c1d = c1.conj().T.tocsr()
    identity = sparse.identity(space.dim, dtype=complex, format="csr")
    comm_dev = _max_abs((c1 @ c1d - c1d @ c1) - (identity - g_psi - g_phi))
    p1 = purity(weights)

    rows = []
    for n in range(1, n_max + 1):
        state = pair_condensate(space, c1, n)
        expect = float(np.vdot(state, g_psi @ state).real)
        holds = (p1 - slack) <= expect <= (n * p1 + slack)
        rows.append((n, expect, p1, n * p1, holds))

    active = int(np.sum(np.abs(weights) > 0.0))
    saturation_order = active + 1
    cd = c1.conj().T.tocsr()
    v = space.vacuum()
    for _ in range(saturation_order):
        v = cd @ v
    if float(np.linalg.norm(v)) != 0.0:
        raise RuntimeError("expected exact Pauli blocking above the pair count")

    cross_rows = []
    cross_dev = 0.0
    if second_weights is not None:
        w2 = np.asarray(second_weights, dtype=complex)
        overlap = complex(np.sum(weights * np.conj(w2)))
        c2 = composite_boson(space, pairs, w2)
        c2d = c2.conj().T.tocsr()
        # [c1, c2^dag] = overlap*I - sum_i f1(i) conj(f2(i)) (n_psi_i + n_phi_i)
        target = overlap * identity
        for ((psi_spin, psi_p), (phi_spin, phi_p)), w1, ww2 in zip(pairs, weights, w2):
            coeff = w1 * np.conj(ww2)
            if coeff == 0.0:
                continue
            target = target - coeff * (
                space.number_operator("psi", psi_spin, psi_p)
                + space.number_operator("phi", phi_spin, phi_p)
            )
        cross_dev = _max_abs((c1 @ c2d - c2d @ c1) - target)
        p_max = max(p1, purity(w2))
        cross_comm = (c1 @ c2d - c2d @ c1).tocsr()
        for n in range(1, n_max + 1):
            state = pair_condensate(space, c1, n)
            value = abs(np.vdot(state, cross_comm @ state))
            bound = 2.0 * n * p_max
            cross_rows.append((n, float(value), bound, value <= bound + slack))

    return CompositeBosonReport(
        purity=p1,
        commutator_identity_deviation=comm_dev,
        sandwich_rows=tuple(rows),
        saturation_order=saturation_order,
        cross_rows=tuple(cross_rows),
        cross_identity_deviation=cross_dev,
    )
