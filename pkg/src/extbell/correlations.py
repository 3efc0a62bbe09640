"""Measurement-outcome correlations for entangled pairs.

Two independent routes are provided:

* the *trace route* materializes the local/non-local split of the density
  operator and projects it onto the product measurement basis
  (:func:`diagonal_probabilities`, :func:`correlation`);
* the *closed-form route* evaluates the family-specific analytic expressions
  (:func:`correlation_closed_form`, :func:`closed_form_components`).

The closed forms accept numpy arrays as well as floats so that large
theorem sweeps can run vectorized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .states import (
    Direction,
    EntangledPairState,
    PairFamily,
    single_particle_pair,
    state_vector,
)


@dataclass(frozen=True)
class DensitySplit:
    """Local (diagonal) and non-local (coherence) parts of ``|psi><psi|``."""

    local: np.ndarray
    nonlocal_: np.ndarray

    @property
    def full(self) -> np.ndarray:
        return self.local + self.nonlocal_


@dataclass(frozen=True)
class DiagonalProbabilities:
    """Basis-diagonal elements ``<i|rho|i>`` for i = 1..4, split by part."""

    local: np.ndarray
    nonlocal_: np.ndarray
    total: np.ndarray

    def _entry(self, i):
        return (float(self.local[i]), float(self.nonlocal_[i]), float(self.total[i]))

    @property
    def rho11(self):
        return self._entry(0)

    @property
    def rho22(self):
        return self._entry(1)

    @property
    def rho33(self):
        return self._entry(2)

    @property
    def rho44(self):
        return self._entry(3)


class CorrelationBreakdown(NamedTuple):
    p_lc: float
    p_nlc: float
    p_total: float


class NumberCorrelations(NamedTuple):
    """Joint outcome probabilities N(+a,+b), N(+a,-b), N(-a,+b), N(-a,-b)."""

    n_pp: float
    n_pm: float
    n_mp: float
    n_mm: float


def density_split(s: EntangledPairState) -> DensitySplit:
    psi = state_vector(s)
    i, j = s.family.occupied_slots
    local = np.zeros((4, 4), dtype=complex)
    local[i, i] = abs(psi[i]) ** 2
    local[j, j] = abs(psi[j]) ** 2
    nonlocal_ = np.zeros((4, 4), dtype=complex)
    nonlocal_[i, j] = psi[i] * psi[j].conjugate()
    nonlocal_[j, i] = psi[j] * psi[i].conjugate()
    return DensitySplit(local, nonlocal_)


def measurement_basis(s: EntangledPairState, a: Direction, b: Direction) -> np.ndarray:
    """Rows are the product vectors |1>..|4> = |+a+b>, |+a-b>, |-a+b>, |-a-b>.

    For photon families "+" is the horizontal and "-" the vertical
    polarization relative to the polarizer azimuth; polar angles are ignored.
    """
    a_pair = single_particle_pair(s.family, a)
    b_pair = single_particle_pair(s.family, b)
    return np.array([np.kron(u, v) for u in a_pair for v in b_pair])


def _diagonal(basis: np.ndarray, rho: np.ndarray) -> np.ndarray:
    # <i|rho|i> for every row i; imaginary part vanishes for Hermitian rho
    return np.einsum("ij,jk,ik->i", basis.conj(), rho, basis).real


def diagonal_probabilities(
    s: EntangledPairState, a: Direction, b: Direction
) -> DiagonalProbabilities:
    basis = measurement_basis(s, a, b)
    split = density_split(s)
    total = np.abs(basis.conj() @ state_vector(s)) ** 2
    return DiagonalProbabilities(
        _diagonal(basis, split.local), _diagonal(basis, split.nonlocal_), total
    )


def _signed_sum(rho: np.ndarray) -> float:
    return float(rho[0] - rho[1] - rho[2] + rho[3])


def correlation(s: EntangledPairState, a: Direction, b: Direction) -> CorrelationBreakdown:
    """Outcome correlation via ``rho11 - rho22 - rho33 + rho44`` on each part."""
    d = diagonal_probabilities(s, a, b)
    return CorrelationBreakdown(
        _signed_sum(d.local), _signed_sum(d.nonlocal_), _signed_sum(d.total)
    )


def number_correlations(s: EntangledPairState, a: Direction, b: Direction) -> NumberCorrelations:
    total = diagonal_probabilities(s, a, b).total
    return NumberCorrelations(*(float(t) for t in total))


def closed_form_components(family, xi, eta, theta_a, phi_a, theta_b, phi_b, lib=math):
    """Analytic ``(P_lc, P_nlc)`` for one direction pair.

    ``lib`` is ``math`` for scalars or ``numpy`` for arrays. Photon families
    use the azimuths only.
    """
    family = PairFamily(family)
    cos, sin = lib.cos, lib.sin
    k = sin(2 * xi)
    if family is PairFamily.SPIN_ANTIPARALLEL:
        p_lc = -cos(theta_a) * cos(theta_b)
        p_nlc = k * sin(theta_a) * sin(theta_b) * cos(phi_a - phi_b + 2 * eta)
    elif family is PairFamily.SPIN_PARALLEL:
        p_lc = cos(theta_a) * cos(theta_b)
        p_nlc = k * sin(theta_a) * sin(theta_b) * cos(phi_a + phi_b + 2 * eta)
    elif family is PairFamily.PHOTON_PERPENDICULAR:
        p_lc = -cos(2 * phi_a) * cos(2 * phi_b)
        p_nlc = k * cos(2 * eta) * sin(2 * phi_a) * sin(2 * phi_b)
    else:
        p_lc = cos(2 * phi_a) * cos(2 * phi_b)
        p_nlc = k * sin(2 * phi_a) * sin(2 * phi_b) * cos(2 * eta)
    return p_lc, p_nlc


def correlation_closed_form(s: EntangledPairState, a: Direction, b: Direction) -> float:
    p_lc, p_nlc = closed_form_components(
        s.family, s.xi, s.eta, a.theta, a.phi, b.theta, b.phi
    )
    return p_lc + p_nlc


def sample_outcomes(
    s: EntangledPairState, a: Direction, b: Direction, shots: int, seed: int
) -> tuple[int, int, int, int]:
    """Draw ``shots`` joint outcomes; returns counts ``(c_pp, c_pm, c_mp, c_mm)``.

    Each shot maps one PCG64 uniform ``u`` in [0, 1) through the inverse CDF
    of the four cells ordered as :class:`NumberCorrelations`. The generator is
    ``numpy.random.default_rng(seed mod 2**64)``, so counts are reproducible
    across platforms for a given seed.
    """
    if isinstance(shots, bool) or int(shots) != shots or shots < 1:
        raise ValueError(f"shots must be a positive integer, got {shots!r}")
    probs = np.clip(np.asarray(number_correlations(s, a, b)), 0.0, None)
    # cells below rounding noise are treated as impossible
    probs[probs < 1e-15] = 0.0
    cdf = np.cumsum(probs)
    rng = np.random.default_rng(int(seed) % 2**64)
    u = rng.random(int(shots)) * cdf[-1]
    idx = np.searchsorted(cdf, u, side="right")
    # guard the u*total == total rounding edge
    idx = np.minimum(idx, int(np.flatnonzero(probs)[-1]))
    counts = np.bincount(idx, minlength=4)
    return tuple(int(c) for c in counts)


def estimate_correlation(counts) -> float:
    """Empirical correlation ``(c_pp - c_pm - c_mp + c_mm) / shots``."""
    c_pp, c_pm, c_mp, c_mm = counts
    return (c_pp - c_pm - c_mp + c_mm) / (c_pp + c_pm + c_mp + c_mm)
