"""Shared fixtures and brute-force reference implementations.

The reference evolution is deliberately naive: build the full generator on
the |x><y| basis and apply scipy's expm. Slow but independent of the
production integrator, so the two can check each other.
"""

from fractions import Fraction
from math import comb, factorial

import numpy as np
from scipy.linalg import expm

from hyperwalk import ModelKind, WalkParams, build_hamiltonian, hamming_matrix


def dissipation_weights(params: WalkParams, kind: ModelKind) -> np.ndarray:
    ham = hamming_matrix(params.d)
    if kind is ModelKind.UNITARY:
        return np.zeros_like(ham)
    if kind is ModelKind.VERTEX:
        return params.lam * (ham > 0).astype(float)
    return params.lam * ham


def superoperator(params: WalkParams, kind: ModelKind) -> np.ndarray:
    """Full generator acting on row-major vec(rho)."""
    h = build_hamiltonian(params)
    eye = np.eye(params.dim)
    commutator = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    return commutator - np.diag(dissipation_weights(params, kind).ravel())


def reference_evolve(rho0: np.ndarray, params: WalkParams, kind: ModelKind,
                     t: float) -> np.ndarray:
    dim = params.dim
    return (expm(superoperator(params, kind) * t) @ rho0.ravel()).reshape(dim, dim)


def unfolded_hitting(params: WalkParams, t) -> np.ndarray:
    """Perturbative transfer probability as the raw double sum over n in [0, 2d].

    No term folding, no shared decay-rate code: weights and rates are spelled
    out from scratch so this can serve as an oracle for the production series.
    """
    t = np.asarray(t, dtype=float)
    d, omega, lam = params.d, params.omega, params.lam
    total = np.zeros_like(t)
    for n in range(2 * d + 1):
        for p in range(max(0, n - d), n // 2 + 1):
            weight = Fraction(
                factorial(d),
                factorial(p) * factorial(n - 2 * p) * factorial(d - n + p),
            ) / Fraction(2) ** (2 * d - n + 2 * p)
            rate = lam * float(1 - Fraction(comb(d - n + 2 * p, p), 2 ** (d + 2 * p - n)))
            total = total + (
                (-1.0) ** (d - n)
                * float(weight)
                * np.exp(-rate * t)
                * np.cos(2.0 * omega * t * (d - n))
            )
    return total


def random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real
