"""Density-matrix propagation for the walk under both dephasing models.

Two integrators are provided.  The default is a split-operator scheme
that alternates two exactly computable maps: unitary conjugation by
exp(-iHt), and entrywise damping exp(-w(x,y) t) with the model's
off-diagonal decay weights.  Composed symmetrically (half damping step
on each side) the scheme is second order in the step size, preserves
trace, Hermiticity, and positivity by construction, and is exact when
either map vanishes.  Classical RK4 on the full right-hand side is kept
as an independent cross-check.

The hypercube Hamiltonian is a sum of commuting one-bit flips, so its
propagator is the d-fold tensor power of a 2x2 rotation.  For small d
that power is formed densely; for d >= 8 conjugation is applied as a
tensor contraction of two half-register factors, which is what makes
d = 10 trajectories affordable.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import ceil, comb, cos, sin

import numpy as np

from .closed_form import build_decay_table
from .core import (
    Diagnostics,
    IntegratorError,
    PositivityError,
    WalkParams,
    build_hamiltonian,
    diagnose,
    hamming_matrix,
    hitting_probability,
    validate_density_matrix,
    von_neumann_entropy,
)

# Above this dimension the unitary is applied in two half-register
# factors instead of one dense 2^d x 2^d matrix product.
_BLOCK_MIN_DIMENSION = 8

HITTING_SLACK = 1e-9


class ModelKind(Enum):
    UNITARY = "unitary"
    VERTEX = "vertex"
    SUBSPACE = "subspace"


class Method(Enum):
    SPLIT_OPERATOR = "split-operator"
    RUNGE_KUTTA4 = "rk4"


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float = 1e-3
    method: Method = Method.SPLIT_OPERATOR
    trace_tol: float = 1e-9

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.trace_tol <= 0:
            raise ValueError(f"trace_tol must be positive, got {self.trace_tol}")

    def require_resolves(self, rate: float) -> None:
        """The step must resolve the fastest rate in the generator: dt * rate < 0.1."""
        if self.dt * rate >= 0.1:
            raise ValueError(
                f"dt={self.dt:g} too coarse: dt * max rate = {self.dt * rate:.3g} >= 0.1"
            )

    def check_step(self, params: WalkParams) -> None:
        self.require_resolves(max(params.omega * params.d, params.lam * params.d))


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    hitting: np.ndarray
    entropy: np.ndarray | None
    diagnostics: tuple[Diagnostics, ...] | None
    final_state: np.ndarray

    def __post_init__(self):
        n = len(self.times)
        for name in ("hitting", "entropy", "diagnostics"):
            field = getattr(self, name)
            if field is not None and len(field) != n:
                raise ValueError(f"{name} has {len(field)} samples for {n} times")
        if self.hitting.size and not (
            self.hitting.min() >= -HITTING_SLACK and self.hitting.max() <= 1 + HITTING_SLACK
        ):
            raise ValueError("hitting probability left [0, 1]")


def _model_weights(params: WalkParams, kind: ModelKind) -> np.ndarray:
    """Entrywise decay rates w(x, y) multiplying -rho in the master equation."""
    ham = hamming_matrix(params.d)
    if kind is ModelKind.UNITARY:
        return np.zeros_like(ham)
    if kind is ModelKind.VERTEX:
        return params.lam * (ham > 0).astype(float)
    if kind is ModelKind.SUBSPACE:
        return params.lam * ham
    raise ValueError(f"unknown model kind {kind!r}")


def lindblad_rhs(rho: np.ndarray, params: WalkParams, kind: ModelKind) -> np.ndarray:
    """drho/dt = -i[H, rho] - w(x, y) rho_{x,y}, with w from the model kind.

    Both models damp only off-diagonal entries: the vertex model at the
    uniform rate lam, the subspace model at lam times the Hamming
    distance between the indices.
    """
    rho = np.asarray(rho, dtype=complex)
    validate_density_matrix(rho)
    if rho.shape[0] != params.dim:
        raise ValueError(f"state dimension {rho.shape[0]} != 2^d = {params.dim}")
    H = build_hamiltonian(params)
    out = -1j * (H @ rho - rho @ H)
    if kind is not ModelKind.UNITARY:
        out -= _model_weights(params, kind) * rho
    return out


def _bit_propagator(omega: float, t: float) -> np.ndarray:
    """exp(-i omega t X): the one-bit factor of the hypercube propagator."""
    c, s = cos(omega * t), sin(omega * t)
    return np.array([[c, -1j * s], [-1j * s, c]])


def _tensor_power(u: np.ndarray, k: int) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for _ in range(k):
        out = np.kron(out, u)
    return out


def walk_unitary(params: WalkParams, t: float) -> np.ndarray:
    """Exact coherent propagator exp(-iHt) as a d-fold tensor power."""
    return _tensor_power(_bit_propagator(params.omega, t), params.d)


def _conjugate_dense(rho: np.ndarray, u: np.ndarray) -> np.ndarray:
    return u @ rho @ u.conj().T


def _conjugate_blocked(rho: np.ndarray, factors) -> np.ndarray:
    """U rho U^dag for U = u_hi (x) u_lo without forming U."""
    u_hi, u_lo = factors
    nh, nl = u_hi.shape[0], u_lo.shape[0]
    r = rho.reshape(nh, nl, nh, nl)
    r = np.tensordot(u_hi, r, axes=(1, 0))
    r = np.tensordot(u_lo, r, axes=(1, 1)).transpose(1, 0, 2, 3)
    r = np.tensordot(r, u_hi.conj(), axes=(2, 1))
    r = np.tensordot(r, u_lo.conj(), axes=(2, 1))
    return r.reshape(nh * nl, nh * nl)


def _substeps(span: float, dt: float) -> int:
    # the tiny slack keeps exact multiples from rounding up to an extra step
    return max(1, ceil(span / dt - 1e-12))


def _validate_time_grid(t_grid) -> np.ndarray:
    if t_grid is None:
        raise ValueError("t_grid is required")
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size == 0:
        raise ValueError("t_grid must be a nonempty 1-d array")
    if abs(t_grid[0]) > 1e-12:
        raise ValueError(f"t_grid must start at 0, got {t_grid[0]}")
    if t_grid.size > 1 and np.diff(t_grid).min() <= 0:
        raise ValueError("t_grid must be strictly increasing")
    return t_grid


class _SplitPropagator:
    """Strang composition of exact unitary and exact damping sub-steps."""

    def __init__(self, params: WalkParams, kind: ModelKind):
        self._params = params
        w = _model_weights(params, kind)
        self._weights = None if not w.any() else w
        self._cache = {}

    def _ops(self, h: float):
        ops = self._cache.get(h)
        if ops is None:
            d = self._params.d
            u = _bit_propagator(self._params.omega, h)
            if d >= _BLOCK_MIN_DIMENSION:
                d_hi = (d + 1) // 2
                unitary = (_tensor_power(u, d_hi), _tensor_power(u, d - d_hi))
                conjugate = _conjugate_blocked
            else:
                unitary = _tensor_power(u, d)
                conjugate = _conjugate_dense
            w = self._weights
            damps = None if w is None else (np.exp(-w * h), np.exp(-w * (h / 2)))
            ops = self._cache[h] = (conjugate, unitary, damps)
        return ops

    def advance(self, rho: np.ndarray, span: float, dt: float) -> np.ndarray:
        m = _substeps(span, dt)
        conjugate, unitary, damps = self._ops(span / m)
        if damps is None:
            for _ in range(m):
                rho = conjugate(rho, unitary)
            return rho
        damp_full, damp_half = damps
        rho = rho * damp_half
        for k in range(m):
            rho = conjugate(rho, unitary)
            if k + 1 < m:
                rho = rho * damp_full
        return rho * damp_half


class _RungeKutta4:
    def __init__(self, params: WalkParams, kind: ModelKind):
        self._h_mat = build_hamiltonian(params)
        self._weights = _model_weights(params, kind)

    def _rhs(self, rho):
        H = self._h_mat
        return -1j * (H @ rho - rho @ H) - self._weights * rho

    def advance(self, rho: np.ndarray, span: float, dt: float) -> np.ndarray:
        m = _substeps(span, dt)
        h = span / m
        for _ in range(m):
            k1 = self._rhs(rho)
            k2 = self._rhs(rho + 0.5 * h * k1)
            k3 = self._rhs(rho + 0.5 * h * k2)
            k4 = self._rhs(rho + h * k3)
            rho = rho + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        return rho


def _check_sample(rho: np.ndarray, t: float, trace_tol: float) -> None:
    dev = abs(np.trace(rho) - 1.0)
    if dev > trace_tol:
        raise IntegratorError(
            f"trace deviates by {dev:.3e} at t={t:.6g} (tol {trace_tol:g})", diagnose(rho)
        )


def evolve(
    rho0: np.ndarray,
    params: WalkParams,
    kind: ModelKind,
    config: IntegratorConfig | None = None,
    t_grid=None,
    *,
    target: int | None = None,
    compute_entropy: bool = False,
    compute_diagnostics: bool = False,
) -> Trajectory:
    """Propagate rho0 over t_grid and record observables at each sample.

    t_grid must increase from 0.  The integrator subdivides each sample
    interval into ceil(span / config.dt) equal sub-steps, so the sample
    spacing never affects accuracy.  Entropy and per-sample diagnostics
    are opt-in; both diagonalize the state and dominate the cost for
    large d.
    """
    if config is None:
        config = IntegratorConfig()
    config.check_step(params)
    t_grid = _validate_time_grid(t_grid)
    rho = np.array(rho0, dtype=complex)
    validate_density_matrix(rho)
    if rho.shape[0] != params.dim:
        raise ValueError(f"state dimension {rho.shape[0]} != 2^d = {params.dim}")
    if target is None:
        target = params.dim - 1
    if not 0 <= target < params.dim:
        raise ValueError(f"target vertex {target} outside [0, {params.dim})")

    if config.method is Method.SPLIT_OPERATOR:
        stepper = _SplitPropagator(params, kind)
    else:
        stepper = _RungeKutta4(params, kind)

    n = t_grid.size
    hitting = np.empty(n)
    entropy = np.empty(n) if compute_entropy else None
    diagnostics = [] if compute_diagnostics else None

    for i, t in enumerate(t_grid):
        if i:
            rho = stepper.advance(rho, t_grid[i] - t_grid[i - 1], config.dt)
        _check_sample(rho, t, config.trace_tol)
        p = hitting_probability(rho, target)
        if not -HITTING_SLACK <= p <= 1 + HITTING_SLACK:
            raise IntegratorError(
                f"hitting probability {p:.3e} outside [0, 1] at t={t:.6g}", diagnose(rho)
            )
        hitting[i] = p
        if compute_entropy:
            try:
                entropy[i] = von_neumann_entropy(rho)
            except PositivityError as exc:
                raise PositivityError(f"{exc} at t={t:.6g}", diagnose(rho)) from exc
        if compute_diagnostics:
            snap = diagnose(rho)
            diagnostics.append(snap)
            if snap.min_eigenvalue < -1e-8:
                raise PositivityError(
                    f"minimum eigenvalue {snap.min_eigenvalue:.3e} at t={t:.6g}", snap
                )

    return Trajectory(
        times=t_grid,
        hitting=hitting,
        entropy=entropy,
        diagnostics=None if diagnostics is None else tuple(diagnostics),
        final_state=rho,
    )


@dataclass(frozen=True)
class ProjectorFamily:
    """Diagonal projectors given as vertex masks, grouped into complete measurements.

    Each of the `measurements` groups is a partition of unity, so every
    vertex is covered by exactly `measurements` masks; that is what makes
    the measured process trace preserving.
    """

    masks: np.ndarray
    measurements: int

    def __post_init__(self):
        if self.masks.ndim != 2 or self.masks.dtype != bool:
            raise ValueError("masks must be a 2-d boolean array")
        cover = self.masks.sum(axis=0)
        if not (cover == self.measurements).all():
            raise ValueError(
                f"masks must cover every vertex exactly {self.measurements} times"
            )
        # K(x, y) = #projectors containing both x and y; sum_j P_j A P_j = K * A
        m = self.masks.astype(float)
        object.__setattr__(self, "_overlap", m.T @ m)

    @property
    def dim(self) -> int:
        return self.masks.shape[1]

    def overlap_counts(self) -> np.ndarray:
        return self._overlap


def vertex_projectors(d: int) -> ProjectorFamily:
    """One measurement with a rank-one projector per vertex."""
    return ProjectorFamily(masks=np.eye(2**d, dtype=bool), measurements=1)


def subspace_projectors(d: int) -> ProjectorFamily:
    """d two-outcome measurements, one per coordinate bit."""
    bits = (np.arange(2**d)[None, :] >> np.arange(d)[:, None]) & 1
    masks = np.empty((2 * d, 2**d), dtype=bool)
    masks[0::2] = bits == 0
    masks[1::2] = bits == 1
    return ProjectorFamily(masks=masks, measurements=d)


def discrete_measured_step(
    rho: np.ndarray, U: np.ndarray, projectors: ProjectorFamily, p: float
) -> np.ndarray:
    """One step of unitary evolution interrupted by unrecorded measurements.

    rho' = (1 - mp) U rho U^dag + p sum_j P_j U rho U^dag P_j, where each
    of the family's m measurements fires with probability p.  Trace is
    preserved exactly because the diagonal is never damped.
    """
    m = projectors.measurements
    if p < 0 or m * p > 1:
        raise ValueError(f"p={p:g} with {m} measurements leaves [0, 1] total probability")
    if rho.shape != (projectors.dim, projectors.dim) or U.shape != rho.shape:
        raise ValueError("rho, U, and projector masks must share one dimension")
    kicked = U @ rho @ U.conj().T
    return ((1 - m * p) + p * projectors.overlap_counts()) * kicked


@lru_cache(maxsize=16)
def _sign_basis(d: int) -> np.ndarray:
    """Orthonormal Hamiltonian eigenbasis: W[x, k] = (-1)^popcount(x & k) / 2^(d/2)."""
    h1 = np.array([[1.0, 1.0], [1.0, -1.0]])
    out = np.ones((1, 1))
    for _ in range(d):
        out = np.kron(out, h1)
    out /= np.sqrt(2.0) ** d
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SubspaceSpectrum:
    """Predicted vs computed dephasing spectrum within one oscillation subspace."""

    n: int
    dimension: int
    predicted: tuple
    computed: tuple
    max_mismatch: float


@dataclass(frozen=True)
class SpectralReport:
    params: WalkParams
    subspaces: tuple
    max_mismatch: float
    basis_residual: float
    passed: bool


def verify_perturbative_spectrum(params: WalkParams, *, tol: float = 1e-9) -> SpectralReport:
    """Check the perturbative decay rates against exact diagonalization.

    The commutator superoperator acting on |x><y| splits into 2d+1
    eigenspaces with eigenvalues 2i omega (d - n); the basis of each is
    the set of outer products of Hamiltonian eigenvectors whose weights
    differ by d - n.  The vertex dephasing superoperator (diagonal in
    the vertex basis, -lam off the diagonal) is projected onto each
    eigenspace and diagonalized exactly; first-order perturbation theory
    predicts eigenvalue -lam_pn with multiplicity C(d, n-2p) for each
    pair count p, and -lam for everything else.  Sorted spectra are
    compared elementwise, so a multiplicity error shows up as an
    eigenvalue mismatch.
    """
    d = params.d
    if d > 6:
        raise ValueError(f"spectral verification capped at d=6 (4^d basis), got d={d}")
    dim = params.dim
    W = _sign_basis(d)
    # bitwise_count yields uint8; d - 2*weight must not wrap
    weight = np.bitwise_count(np.arange(dim)).astype(np.int64)
    H = build_hamiltonian(params)
    eigval = params.omega * (d - 2 * weight)
    basis_residual = float(np.abs(H @ W - W * eigval).max())

    # vertex-model dephasing acts diagonally on the superoperator basis
    damp = (-params.lam * (hamming_matrix(d) > 0)).ravel()
    table = build_decay_table(params)

    pairs_by_n = [[] for _ in range(2 * d + 1)]
    for k in range(dim):
        for l in range(dim):
            pairs_by_n[d - weight[k] + weight[l]].append((k, l))

    subspaces = []
    for n in range(2 * d + 1):
        pairs = pairs_by_n[n]
        B = np.empty((dim * dim, len(pairs)))
        for col, (k, l) in enumerate(pairs):
            B[:, col] = np.outer(W[:, k], W[:, l]).ravel()
        computed = np.linalg.eigvalsh(B.T @ (B * damp[:, None]))

        predicted = [
            (-rate, mult)
            for (nn, p), (rate, mult) in sorted(table.entries.items())
            if nn == n
        ]
        remainder = comb(2 * d, n) - sum(mult for _, mult in predicted)
        if remainder < 0:
            raise RuntimeError(f"predicted multiplicities exceed subspace {n} dimension")
        if remainder:
            predicted.append((-params.lam, remainder))
        expected = np.sort(np.repeat([v for v, _ in predicted], [m for _, m in predicted]))

        if len(pairs) != expected.size:
            raise RuntimeError(f"subspace {n} dimension {len(pairs)} != {expected.size}")
        mismatch = float(np.abs(computed - expected).max())
        subspaces.append(
            SubspaceSpectrum(
                n=n,
                dimension=len(pairs),
                predicted=tuple(predicted),
                computed=tuple(computed),
                max_mismatch=mismatch,
            )
        )

    max_mismatch = max(s.max_mismatch for s in subspaces)
    return SpectralReport(
        params=params,
        subspaces=tuple(subspaces),
        max_mismatch=max_mismatch,
        basis_residual=basis_residual,
        passed=max_mismatch <= tol and basis_residual <= tol,
    )
