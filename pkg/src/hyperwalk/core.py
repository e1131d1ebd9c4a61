"""States, Hamiltonian, and observables for walks on the d-dimensional hypercube.

Vertices are labeled by integers in [0, 2^d); bit j of the label is
coordinate j, counted from the least significant bit.  Every observable
computed here (corner hitting probability, entropy) is invariant under
relabeling, so nothing downstream depends on that choice.

All matrices are dense complex arrays.  A 2^14-dimensional density
matrix is ~4 GB, which is where the size cap sits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import pi

import numpy as np

MAX_DIMENSION = 14

TRACE_TOL = 1e-9
HERMITICITY_TOL = 1e-12
# Spectrum below this is an integrator failure, not roundoff.
POSITIVITY_FLOOR = -1e-8


class IntegratorError(RuntimeError):
    """Numerical evolution left the physical manifold.

    Carries a Diagnostics snapshot of the offending state when available.
    """

    def __init__(self, message: str, diagnostics: "Diagnostics | None" = None):
        super().__init__(message)
        self.diagnostics = diagnostics


class PositivityError(IntegratorError):
    """A state's spectrum went negative beyond the roundoff floor."""


@dataclass(frozen=True)
class WalkParams:
    """Walk parameters: dimension d, hopping rate omega, dephasing rate lam."""

    d: int
    omega: float = 1.0
    lam: float = 0.0

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"d must be a positive integer, got {self.d}")
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.lam < 0:
            raise ValueError(f"lam must be nonnegative, got {self.lam}")

    @property
    def dim(self) -> int:
        return 2**self.d

    @property
    def hitting_time(self) -> float:
        """First time of maximal coherent transfer, T = pi/(2 omega)."""
        return pi / (2 * self.omega)


@dataclass(frozen=True)
class Diagnostics:
    trace_deviation: float
    hermiticity_deviation: float
    min_eigenvalue: float


def hamming_distance(x: int, y: int) -> int:
    """Number of bits in which vertex labels x and y differ."""
    if x < 0 or y < 0:
        raise ValueError("vertex labels are nonnegative integers")
    return (x ^ y).bit_count()


@lru_cache(maxsize=16)
def _hamming_matrix(d: int) -> np.ndarray:
    idx = np.arange(2**d)
    m = np.bitwise_count(np.bitwise_xor.outer(idx, idx)).astype(np.float64)
    m.setflags(write=False)
    return m


def hamming_matrix(d: int) -> np.ndarray:
    """Pairwise Hamming distances between all 2^d vertex labels (read-only)."""
    if not 1 <= d <= MAX_DIMENSION:
        raise ValueError(f"d={d} outside [1, {MAX_DIMENSION}]")
    return _hamming_matrix(d)


def build_hamiltonian(params: WalkParams, *, max_dimension: int = MAX_DIMENSION) -> np.ndarray:
    """Hypercube adjacency Hamiltonian: H[x, y] = omega iff x, y differ in one bit."""
    if params.d > max_dimension:
        raise ValueError(
            f"d={params.d} exceeds the size cap {max_dimension} (2^d complex matrices)"
        )
    n = params.dim
    H = np.zeros((n, n))
    x = np.arange(n)
    for j in range(params.d):
        H[x, x ^ (1 << j)] = params.omega
    return H


def vertex_state(d: int, vertex: int = 0) -> np.ndarray:
    """Density matrix of the walker localized at a vertex."""
    n = 2**d
    if not 0 <= vertex < n:
        raise ValueError(f"vertex {vertex} outside [0, {n})")
    rho = np.zeros((n, n), dtype=complex)
    rho[vertex, vertex] = 1.0
    return rho


def maximally_mixed(d: int) -> np.ndarray:
    n = 2**d
    return np.eye(n, dtype=complex) / n


def validate_density_matrix(
    rho: np.ndarray,
    *,
    trace_tol: float = TRACE_TOL,
    hermiticity_tol: float = HERMITICITY_TOL,
    check_positivity: bool = False,
) -> None:
    """Check the density-matrix invariants; raise on violation.

    Trace and Hermiticity are cheap and always checked.  The positivity
    check diagonalizes and is opt-in.
    """
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    n = rho.shape[0]
    if n < 2 or n & (n - 1):
        raise ValueError(f"dimension {n} is not a power of two")
    trace_dev = abs(np.trace(rho) - 1.0)
    if trace_dev > trace_tol:
        raise ValueError(f"trace deviates from 1 by {trace_dev:.3e} (tol {trace_tol:g})")
    herm_dev = np.abs(rho - rho.conj().T).max()
    if herm_dev > hermiticity_tol:
        raise ValueError(f"Hermiticity violated by {herm_dev:.3e} (tol {hermiticity_tol:g})")
    if check_positivity:
        emin = float(np.linalg.eigvalsh(rho)[0])
        if emin < POSITIVITY_FLOOR:
            raise PositivityError(f"minimum eigenvalue {emin:.3e} below {POSITIVITY_FLOOR:g}")


def hitting_probability(rho: np.ndarray, target: int) -> float:
    """Probability of finding the walker at the target vertex, Re rho[b, b]."""
    p = rho[target, target]
    if abs(p.imag) > 1e-10:
        raise ValueError(
            f"diagonal element at {target} has imaginary part {p.imag:.3e}; state is corrupted"
        )
    return float(p.real)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy -tr[rho log2 rho] in bits.

    Nonpositive eigenvalues above POSITIVITY_FLOOR are integrator roundoff
    and treated as zero (0 log 0 := 0).  Anything below the floor means the
    evolution lost positivity and raises instead of being clipped.
    """
    eig = np.linalg.eigvalsh(rho)
    if eig[0] < POSITIVITY_FLOOR:
        raise PositivityError(
            f"eigenvalue {eig[0]:.3e} below {POSITIVITY_FLOOR:g}; positivity lost"
        )
    eig = eig[eig > 0.0]
    return float(-(eig * np.log2(eig)).sum()) if eig.size else 0.0


def diagnose(rho: np.ndarray) -> Diagnostics:
    """Trace deviation, Hermiticity deviation, and minimum eigenvalue of rho."""
    herm = 0.5 * (rho + rho.conj().T)
    return Diagnostics(
        trace_deviation=float(abs(np.trace(rho) - 1.0)),
        hermiticity_deviation=float(np.abs(rho - rho.conj().T).max()),
        min_eigenvalue=float(np.linalg.eigvalsh(herm)[0]),
    )
