"""Closed-form hitting probabilities, decay-rate table, bounds, and asymptotics.

The per-bit (subspace) dephasing model factorizes over bits, so its
hitting probability is the d-th power of an exactly solvable 2x2
problem.  The per-vertex model does not factorize; its hitting
probability comes from first-order degenerate perturbation theory in
lam/omega as a finite sum of damped cosines, with rates lam_pn indexed
by frequency subspace n and pair count p.  All combinatorial weights
are evaluated in exact integer arithmetic before the single final
conversion to float.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb, exp, pi

import numpy as np

from .core import WalkParams

# Beyond this ratio first-order perturbation theory degrades visibly
# (the series can leave [0, 1]); results are flagged, not refused.
PERTURBATIVE_VALIDITY_RATIO = 0.5


def perturbative_valid(params: WalkParams) -> bool:
    return params.lam <= PERTURBATIVE_VALIDITY_RATIO * params.omega


def unitary_hitting(params: WalkParams, t) -> float | np.ndarray:
    """Coherent corner-to-corner transfer probability sin(omega t)^(2d)."""
    t = np.asarray(t, dtype=float)
    out = np.sin(params.omega * t) ** (2 * params.d)
    return out if out.ndim else float(out)


def subspace_hitting(params: WalkParams, t) -> float | np.ndarray:
    """Exact hitting probability of the per-bit dephasing model.

    Each bit contributes the damped factor
        (1/2) [1 - e^(-lam t/2) (cos(beta t/2) + (lam/beta) sin(beta t/2))],
    beta = sqrt(16 omega^2 - lam^2), and the full probability is the
    d-th power.  For lam > 4 omega the trigonometric functions continue
    to hyperbolic ones; that branch is evaluated as a sum of decaying
    exponentials so it cannot overflow.
    """
    t = np.asarray(t, dtype=float)
    lam, omega = params.lam, params.omega
    beta_sq = 16 * omega**2 - lam**2
    if beta_sq > 1e-12:
        beta = np.sqrt(beta_sq)
        damped = np.exp(-lam * t / 2) * (
            np.cos(beta * t / 2) + (lam / beta) * np.sin(beta * t / 2)
        )
    elif beta_sq < -1e-12:
        b = np.sqrt(-beta_sq)  # lam > b, both exponents decay
        damped = 0.5 * (1 + lam / b) * np.exp((b - lam) * t / 2) + 0.5 * (
            1 - lam / b
        ) * np.exp(-(b + lam) * t / 2)
    else:
        damped = np.exp(-lam * t / 2) * (1.0 + lam * t / 2)
    p = (0.5 * (1.0 - damped)) ** params.d
    assert np.all(p >= -1e-12) and np.all(p <= 1 + 1e-12), "hitting probability left [0, 1]"
    p = np.clip(p, 0.0, 1.0)
    return p if p.ndim else float(p)


def _check_subspace_pair(d: int, n: int, p: int) -> None:
    if not 0 <= n <= 2 * d:
        raise ValueError(f"subspace index n={n} outside [0, {2 * d}]")
    lo, hi = max(0, n - d), n // 2
    if not lo <= p <= hi:
        raise ValueError(f"pair count p={p} outside [{lo}, {hi}] for n={n}, d={d}")


def vertex_decay_rate(d: int, lam: float, n: int, p: int) -> float:
    """Perturbative decay rate lam_pn of the (n, p) eigenvector family.

    lam_pn = lam (1 - 2^(n-d-2p) (d-n+2p)! / [p! (d-n+p)!]).  The
    factorial ratio is the binomial C(d-n+2p, p) and the power of two
    has a nonnegative exponent d+2p-n throughout the valid range, so the
    parenthesis is an exact rational.
    """
    _check_subspace_pair(d, n, p)
    ratio = Fraction(comb(d - n + 2 * p, p), 2 ** (d + 2 * p - n))
    return lam * float(1 - ratio)


@dataclass(frozen=True)
class DecayRateTable:
    """Perturbed spectrum of the per-vertex dephasing superoperator.

    entries[(n, p)] = (lam_pn, multiplicity), where n in [0, 2d] indexes
    the frequency subspaces and p the paired excitations.  multiplicity
    = C(d, n-2p) counts the eigenvectors shifted to -lam_pn; everything
    else in subspace n stays at -lam.
    """

    d: int
    lam: float
    entries: dict

    def subspace_dimension(self, n: int) -> int:
        return comb(2 * self.d, n)

    def pair_count(self, n: int, p: int) -> int:
        """d_p = (d-n+2p)! / [p! (d-n+p)!], the admissible pair placements."""
        _check_subspace_pair(self.d, n, p)
        return comb(self.d - n + 2 * p, p)

    def covered_dimension(self, n: int) -> int:
        """Exact count of superoperator basis states reached by subspace n's families.

        Must reproduce subspace_dimension(n); each (n, p) family spans
        multiplicity * 2^(n-2p) * d_p states.
        """
        return sum(
            mult * 2 ** (nn - 2 * p) * self.pair_count(nn, p)
            for (nn, p), (_, mult) in self.entries.items()
            if nn == n
        )


def build_decay_table(params: WalkParams) -> DecayRateTable:
    """All (n, p) decay rates with multiplicities, in exact arithmetic."""
    d = params.d
    entries = {}
    for n in range(2 * d + 1):
        for p in range(max(0, n - d), n // 2 + 1):
            entries[(n, p)] = (vertex_decay_rate(d, params.lam, n, p), comb(d, n - 2 * p))
    return DecayRateTable(d=d, lam=params.lam, entries=entries)


@dataclass(frozen=True)
class SeriesTerm:
    """One frequency component of the perturbative hitting probability.

    g_n(t) = sum_p weights[p] exp(-rates[p] t) envelopes the oscillation
    cos(frequency * t); weights are positive and carry the fold factor
    (2 - delta_{n,d}) from combining the n and 2d-n subspaces.
    """

    n: int
    frequency: float
    weights: tuple
    rates: tuple


def _multinomial(d: int, p: int, q: int) -> int:
    """d! / (p! q! (d-p-q)!) exactly."""
    return comb(d, p) * comb(d - p, q)


def perturbative_series(params: WalkParams) -> list[SeriesTerm]:
    """Terms of the folded (n <= d) perturbative sum for the vertex model."""
    d = params.d
    terms = []
    for n in range(d + 1):
        weights, rates = [], []
        for p in range(n // 2 + 1):
            w = Fraction(
                (2 - (n == d)) * _multinomial(d, p, n - 2 * p), 2 ** (2 * d + 2 * p - n)
            )
            weights.append(float(w))
            rates.append(vertex_decay_rate(d, params.lam, n, p))
        terms.append(
            SeriesTerm(
                n=n,
                frequency=2 * params.omega * (d - n),
                weights=tuple(weights),
                rates=tuple(rates),
            )
        )
    return terms


def vertex_hitting_perturbative(params: WalkParams, t) -> float | np.ndarray:
    """Perturbative hitting probability of the per-vertex dephasing model.

    P_v(t) = sum_{n=0}^{d} (-1)^(d-n) g_n(t) cos(2 omega t (d-n)).
    First order in lam/omega: outside lam << omega the value can leave
    [0, 1] slightly and a validity warning is issued, but the result is
    returned as computed.
    """
    if not perturbative_valid(params):
        warnings.warn(
            f"lam/omega = {params.lam / params.omega:.3g} exceeds "
            f"{PERTURBATIVE_VALIDITY_RATIO}; perturbative result outside its regime",
            stacklevel=2,
        )
    t = np.asarray(t, dtype=float)
    d = params.d
    out = np.zeros(t.shape)
    for term in perturbative_series(params):
        g = sum(w * np.exp(-r * t) for w, r in zip(term.weights, term.rates))
        out += (-1) ** (d - term.n) * g * np.cos(term.frequency * t)
    return out if out.ndim else float(out)


def vertex_hitting_lower_bound(params: WalkParams, T: float) -> float:
    """Dimension-independent floor e^(-lam T) under the perturbative P_v(T)."""
    if T < 0:
        raise ValueError("T must be nonnegative")
    return exp(-params.lam * T)


def subspace_asymptote(params: WalkParams, T: float) -> float:
    """Small-lam T approximation e^(-d lam T / 4) of the subspace P_s(T)."""
    if T < 0:
        raise ValueError("T must be nonnegative")
    return exp(-params.d * params.lam * T / 4)


def kendon_tregenna_probability(lam: float, T: float, d: int) -> float:
    """Per-step measurement probability p = 2 lam T / (pi d).

    Matches the continuous model's information-loss rate, so an n-step
    measured walk with this p decays like e^(-d p) = e^(-2 lam T / pi).
    """
    if lam < 0 or T < 0 or d < 1:
        raise ValueError("lam and T must be nonnegative, d positive")
    return 2 * lam * T / (pi * d)
