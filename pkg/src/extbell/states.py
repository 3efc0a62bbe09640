"""Entangled pair states, measurement directions and single-particle bases.

Product-basis ordering is fixed throughout the package::

    spin:   |++>, |+->, |-+>, |-->
    photon: |ex ex>, |ex ey>, |ey ex>, |ey ey>

Single-particle amplitudes are ordered (|+>, |->) or (|ex>, |ey>).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

#: Tolerance used by normalization checks.
ATOL = 1e-12


class PairFamily(enum.Enum):
    """The four two-particle entangled-state families."""

    SPIN_ANTIPARALLEL = "spin-anti"
    SPIN_PARALLEL = "spin-par"
    PHOTON_PERPENDICULAR = "photon-perp"
    PHOTON_PARALLEL = "photon-par"

    @property
    def is_photon(self) -> bool:
        return self in (PairFamily.PHOTON_PERPENDICULAR, PairFamily.PHOTON_PARALLEL)

    @property
    def is_parallel(self) -> bool:
        return self in (PairFamily.SPIN_PARALLEL, PairFamily.PHOTON_PARALLEL)

    @property
    def occupied_slots(self) -> tuple[int, int]:
        """Product-basis indices carrying c1 and c2."""
        return (0, 3) if self.is_parallel else (1, 2)


def _wrap_phi(phi: float) -> float:
    phi = math.fmod(phi, TWO_PI)
    if phi < 0.0:
        phi += TWO_PI
    # fmod of a tiny negative number can round up to exactly 2*pi
    if phi >= TWO_PI:
        phi = 0.0
    return phi


@dataclass(frozen=True)
class Direction:
    """Measurement direction given by polar angle ``theta`` and azimuth ``phi``.

    Any real input is accepted. ``theta`` is folded into [0, pi], shifting
    ``phi`` by pi whenever a reflection is needed, and ``phi`` is wrapped into
    [0, 2*pi). Both operations leave the unit vector unchanged and are exact
    no-ops on already-normalized values.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = math.fmod(float(self.theta), TWO_PI)
        phi = float(self.phi)
        if theta < 0.0:
            theta += TWO_PI
        if theta > math.pi:
            theta = TWO_PI - theta
            phi += math.pi
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", _wrap_phi(phi))

    @classmethod
    def planar(cls, phi: float) -> Direction:
        """Direction in the x-y plane, as used for photon polarizers."""
        return cls(math.pi / 2, phi)

    @property
    def vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )


@dataclass(frozen=True)
class EntangledPairState:
    """Pure state ``c1|u> + c2|v>`` of a pair family.

    The coefficients are ``c1 = exp(i*eta) sin(xi)`` and
    ``c2 = exp(-i*eta) cos(xi)``. ``xi`` and ``eta`` are stored as given.
    """

    family: PairFamily
    xi: float
    eta: float = 0.0

    def __post_init__(self):
        if not isinstance(self.family, PairFamily):
            object.__setattr__(self, "family", PairFamily(self.family))
        object.__setattr__(self, "xi", float(self.xi))
        object.__setattr__(self, "eta", float(self.eta))

    @property
    def c1(self) -> complex:
        return complex(math.cos(self.eta), math.sin(self.eta)) * math.sin(self.xi)

    @property
    def c2(self) -> complex:
        return complex(math.cos(self.eta), -math.sin(self.eta)) * math.cos(self.xi)


def spin_coherent_pair(r: Direction) -> tuple[np.ndarray, np.ndarray]:
    """Return the eigenstates ``(|+r>, |-r>)`` of ``sigma . r``.

    Uses the north/south-pole gauge::

        |+r> = cos(t/2)|+> + sin(t/2) e^{i phi} |->
        |-r> = sin(t/2)|+> - cos(t/2) e^{i phi} |->
    """
    c = math.cos(r.theta / 2)
    s = math.sin(r.theta / 2)
    phase = complex(math.cos(r.phi), math.sin(r.phi))
    up = np.array([c, s * phase], dtype=complex)
    down = np.array([s, -c * phase], dtype=complex)
    return up, down


def photon_measurement_pair(phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Return the horizontal and vertical polarization states for azimuth ``phi``."""
    phi = _wrap_phi(float(phi))
    c = math.cos(phi)
    s = math.sin(phi)
    return np.array([c, s], dtype=complex), np.array([-s, c], dtype=complex)


def single_particle_pair(family: PairFamily, r: Direction) -> tuple[np.ndarray, np.ndarray]:
    """Outcome-(+1, -1) basis for one particle of ``family`` measured along ``r``."""
    if family.is_photon:
        return photon_measurement_pair(r.phi)
    return spin_coherent_pair(r)


def state_vector(s: EntangledPairState) -> np.ndarray:
    """Amplitudes of ``s`` on the fixed product basis."""
    psi = np.zeros(4, dtype=complex)
    i, j = s.family.occupied_slots
    psi[i] = s.c1
    psi[j] = s.c2
    return psi
