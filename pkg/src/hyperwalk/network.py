"""Single-excitation dynamics of coupled qubit networks under dephasing.

An XY-coupled network prepared with one excitation stays in the span of
the ground state and the single-excitation states, so the simulator
works with an N x N excited block plus a scalar ground population, never
in the 2^N qubit space.  Two noise models are supported: independent
(each qubit has its own energy-decay and dephasing channels) and
collective (qubits sharing a coordinate subspace dephase together).  On
hypercube couplings the independent model reduces to the per-vertex walk
model and the collective model to the per-bit one, both with
lam = 2 / Tphi; those reductions are the primary correctness tests.

Both noise models leave the excited block with a master equation of the
same shape as the walk models (commutator plus entrywise damping), so
the same split-operator and RK4 steppers apply.  Energy decay enters the
independent model only as a uniform factor exp(-t/T1) on the block and
an analytically known feed into the ground population.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import exp, inf, isinf

import numpy as np

from .core import IntegratorError, WalkParams, build_hamiltonian, hamming_matrix
from .dynamics import IntegratorConfig, Method, _substeps, _validate_time_grid

_SYMMETRY_TOL = 1e-12
_CONSERVATION_TOL = 1e-9


@dataclass(frozen=True)
class CouplingMatrix:
    """Real symmetric exchange rates Omega[j, k] between network nodes."""

    entries: np.ndarray

    def __post_init__(self):
        m = self.entries
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"coupling matrix must be square, got shape {m.shape}")
        if np.iscomplexobj(m):
            raise ValueError("coupling matrix must be real")
        if np.abs(m - m.T).max() > _SYMMETRY_TOL:
            raise ValueError("coupling matrix must be symmetric")
        if np.abs(np.diag(m)).max() != 0.0:
            raise ValueError("coupling matrix must have a zero diagonal")

    @property
    def size(self) -> int:
        return self.entries.shape[0]


def hypercube_coupling(d: int, omega: float) -> CouplingMatrix:
    """Hypercube-adjacency exchange rates: the walk Hamiltonian as a network."""
    return CouplingMatrix(entries=build_hamiltonian(WalkParams(d=d, omega=omega)))


def load_coupling_csv(path) -> CouplingMatrix:
    """Read a square comma-separated adjacency matrix."""
    return CouplingMatrix(entries=np.loadtxt(path, delimiter=",", ndmin=2))


class NoiseKind(Enum):
    INDEPENDENT = "independent"
    COLLECTIVE = "collective"


@dataclass(frozen=True)
class NoiseParams:
    """Amplitude-damping time t1 and dephasing time tphi; inf disables a channel."""

    t1: float = inf
    tphi: float = inf
    kind: NoiseKind = NoiseKind.INDEPENDENT

    def __post_init__(self):
        if not self.t1 > 0:
            raise ValueError(f"t1 must be positive, got {self.t1}")
        if not self.tphi > 0:
            raise ValueError(f"tphi must be positive, got {self.tphi}")


@dataclass(frozen=True)
class ExcitationState:
    """Ground population plus the Hermitian single-excitation block."""

    ground: float
    block: np.ndarray

    def __post_init__(self):
        if self.block.ndim != 2 or self.block.shape[0] != self.block.shape[1]:
            raise ValueError(f"block must be square, got shape {self.block.shape}")

    @property
    def size(self) -> int:
        return self.block.shape[0]

    def total_probability(self) -> float:
        return self.ground + float(np.trace(self.block).real)


def single_excitation(n: int, site: int = 0) -> ExcitationState:
    """State with the excitation localized on one node and no ground weight."""
    if not 0 <= site < n:
        raise ValueError(f"site {site} outside [0, {n})")
    block = np.zeros((n, n), dtype=complex)
    block[site, site] = 1.0
    return ExcitationState(ground=0.0, block=block)


@dataclass(frozen=True)
class NetworkTrajectory:
    times: np.ndarray
    states: tuple

    def __post_init__(self):
        if len(self.states) != len(self.times):
            raise ValueError(f"{len(self.states)} states for {len(self.times)} times")

    def ground_populations(self) -> np.ndarray:
        return np.array([s.ground for s in self.states])

    def site_populations(self, site: int) -> np.ndarray:
        return np.array([s.block[site, site].real for s in self.states])


def _check_initial(state: ExcitationState, n: int) -> None:
    if state.size != n:
        raise ValueError(f"state block size {state.size} != network size {n}")
    herm = np.abs(state.block - state.block.conj().T).max()
    if herm > _CONSERVATION_TOL:
        raise ValueError(f"initial block Hermiticity violated by {herm:.3e}")
    if not -_CONSERVATION_TOL <= state.ground <= 1 + _CONSERVATION_TOL:
        raise ValueError(f"ground population {state.ground} outside [0, 1]")
    total = state.total_probability()
    if abs(total - 1.0) > _CONSERVATION_TOL:
        raise ValueError(f"total probability {total} != 1")


def _rate(time_constant: float) -> float:
    return 0.0 if isinf(time_constant) else 1.0 / time_constant


class _BlockStepper:
    """Commutator-plus-damping propagation of the excited block.

    The split path conjugates with the exact exp(-i Omega h) from one
    eigendecomposition of the coupling matrix and damps entrywise; RK4
    integrates the same right-hand side.
    """

    def __init__(self, coupling: CouplingMatrix, weights: np.ndarray, config: IntegratorConfig):
        self._weights = weights
        self._eigval, self._eigvec = np.linalg.eigh(coupling.entries)
        self._entries = coupling.entries
        self._method = config.method
        self._cache = {}
        config.require_resolves(
            max(float(np.abs(self._eigval).max()), float(weights.max()))
        )

    def _ops(self, h: float):
        ops = self._cache.get(h)
        if ops is None:
            V = self._eigvec
            u = (V * np.exp(-1j * self._eigval * h)) @ V.T
            w = self._weights
            ops = self._cache[h] = (u, np.exp(-w * h), np.exp(-w * (h / 2)))
        return ops

    def _rhs(self, block):
        m = self._entries
        return -1j * (m @ block - block @ m) - self._weights * block

    def advance(self, block: np.ndarray, span: float, dt: float) -> np.ndarray:
        m = _substeps(span, dt)
        h = span / m
        if self._method is Method.RUNGE_KUTTA4:
            for _ in range(m):
                k1 = self._rhs(block)
                k2 = self._rhs(block + 0.5 * h * k1)
                k3 = self._rhs(block + 0.5 * h * k2)
                k4 = self._rhs(block + h * k3)
                block = block + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
            return block
        u, damp_full, damp_half = self._ops(h)
        block = block * damp_half
        for k in range(m):
            block = u @ block @ u.conj().T
            if k + 1 < m:
                block = block * damp_full
        return block * damp_half


def _evolve_network(state0, coupling, weights, ground_of_t, t_grid, config) -> NetworkTrajectory:
    t_grid = _validate_time_grid(t_grid)
    _check_initial(state0, coupling.size)
    stepper = _BlockStepper(coupling, weights, config)
    block = np.array(state0.block, dtype=complex)
    states = []
    for i, t in enumerate(t_grid):
        if i:
            block = stepper.advance(block, t_grid[i] - t_grid[i - 1], config.dt)
        state = ExcitationState(ground=ground_of_t(t), block=block.copy())
        total = state.total_probability()
        if abs(total - 1.0) > _CONSERVATION_TOL:
            raise IntegratorError(
                f"total probability deviates by {abs(total - 1.0):.3e} at t={t:.6g}"
            )
        states.append(state)
    return NetworkTrajectory(times=t_grid, states=tuple(states))


def evolve_independent(
    state0: ExcitationState,
    coupling: CouplingMatrix,
    noise: NoiseParams,
    t_grid,
    config: IntegratorConfig | None = None,
) -> NetworkTrajectory:
    """Network evolution with per-qubit energy decay and dephasing.

    The excited block damps entrywise at 1/T1 on the diagonal and
    1/T1 + 2/Tphi off it; everything the block loses feeds the ground
    population, which therefore satisfies
    ground(t) = 1 - (1 - ground(0)) exp(-t/T1) exactly.
    """
    if noise.kind is not NoiseKind.INDEPENDENT:
        raise ValueError(f"expected independent noise, got {noise.kind.value}")
    if config is None:
        config = IntegratorConfig()
    g1, gphi = _rate(noise.t1), _rate(noise.tphi)
    n = coupling.size
    weights = np.full((n, n), g1 + 2 * gphi)
    np.fill_diagonal(weights, g1)
    excited0 = 1.0 - state0.ground

    def ground_of_t(t):
        return 1.0 - excited0 * exp(-g1 * t)

    return _evolve_network(state0, coupling, weights, ground_of_t, t_grid, config)


def evolve_collective(
    state0: ExcitationState,
    coupling: CouplingMatrix,
    noise: NoiseParams,
    t_grid,
    config: IntegratorConfig | None = None,
) -> NetworkTrajectory:
    """Network evolution with shared per-coordinate dephasing.

    Nodes must be labeled by bit strings (network size a power of two):
    the shared channels act on coordinate subspaces, and the sign rule
    S |x)(y| S = (2 delta_{x_j, y_j} - 1) |x)(y| makes an off-diagonal
    element whose labels differ in n bits decay at 2n/Tphi.  There is no
    energy decay, so the ground population never changes.
    """
    if noise.kind is not NoiseKind.COLLECTIVE:
        raise ValueError(f"expected collective noise, got {noise.kind.value}")
    if not isinf(noise.t1):
        raise ValueError("collective dephasing has no energy-decay channel; t1 must be inf")
    n = coupling.size
    if n < 2 or n & (n - 1):
        raise ValueError(f"collective model needs a power-of-two network, got {n} nodes")
    if config is None:
        config = IntegratorConfig()
    d = n.bit_length() - 1
    weights = 2 * _rate(noise.tphi) * hamming_matrix(d)
    ground0 = state0.ground
    return _evolve_network(state0, coupling, weights, lambda t: ground0, t_grid, config)


def rescale_excited_block(traj: NetworkTrajectory, t1: float) -> NetworkTrajectory:
    """Remove uniform energy decay: multiply the block at time t by exp(t/t1).

    The rescaled block of an independent-noise run obeys the pure
    dephasing equation, so it matches a T1 = inf run directly.  Note the
    rescaled states no longer sum to unit probability.
    """
    if not t1 > 0:
        raise ValueError(f"t1 must be positive, got {t1}")
    g1 = _rate(t1)
    states = tuple(
        ExcitationState(ground=s.ground, block=s.block * exp(g1 * t))
        for s, t in zip(traj.states, traj.times)
    )
    return NetworkTrajectory(times=traj.times, states=states)
