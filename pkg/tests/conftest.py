import math

import numpy as np
import pytest
from hypothesis import strategies as st

from extbell import Direction, EntangledPairState, PairFamily

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def spin_observable(r: Direction) -> np.ndarray:
    n = r.vector
    return n[0] * SX + n[1] * SY + n[2] * SZ


def polarizer_observable(phi: float) -> np.ndarray:
    """+1 on the polarizer axis, -1 orthogonal to it: R(phi) sz R(phi)^T."""
    rot = np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]])
    return rot @ SZ @ rot.T


def raw_state(family: PairFamily, xi: float, eta: float) -> np.ndarray:
    """State vector written out independently of extbell.states."""
    c1 = np.exp(1j * eta) * np.sin(xi)
    c2 = np.exp(-1j * eta) * np.cos(xi)
    up, down = np.array([1, 0]), np.array([0, 1])
    if family in (PairFamily.SPIN_ANTIPARALLEL, PairFamily.PHOTON_PERPENDICULAR):
        return c1 * np.kron(up, down) + c2 * np.kron(down, up)
    return c1 * np.kron(up, up) + c2 * np.kron(down, down)


def operator_correlation(family, xi, eta, a: Direction, b: Direction) -> float:
    """<psi| O_a (x) O_b |psi> built from Pauli / rotation matrices."""
    family = PairFamily(family)
    if family.is_photon:
        oa, ob = polarizer_observable(a.phi), polarizer_observable(b.phi)
    else:
        oa, ob = spin_observable(a), spin_observable(b)
    psi = raw_state(family, xi, eta)
    return float(np.vdot(psi, np.kron(oa, ob) @ psi).real)


def random_configurations(seed: int, count: int):
    """Seeded (state, a, b, c) tuples spread over all four families."""
    rng = np.random.default_rng(seed)
    families = list(PairFamily)
    for _ in range(count):
        family = families[rng.integers(4)]
        xi, eta = rng.uniform(-2 * math.pi, 2 * math.pi, 2)
        dirs = []
        for _ in range(3):
            if family.is_photon:
                dirs.append(Direction.planar(rng.uniform(0, 2 * math.pi)))
            else:
                dirs.append(Direction(math.acos(rng.uniform(-1, 1)), rng.uniform(0, 2 * math.pi)))
        yield (EntangledPairState(family, xi, eta), *dirs)


angles = st.floats(min_value=-20.0, max_value=20.0, allow_nan=False, allow_infinity=False)
families = st.sampled_from(list(PairFamily))


@st.composite
def directions(draw):
    return Direction(draw(angles), draw(angles))


@st.composite
def pair_states(draw):
    return EntangledPairState(draw(families), draw(angles), draw(angles))


@pytest.fixture
def singlet():
    return EntangledPairState(PairFamily.SPIN_ANTIPARALLEL, 3 * math.pi / 4, 0.0)


@pytest.fixture
def max_spin_config():
    half = math.pi / 2
    return (
        EntangledPairState(PairFamily.SPIN_ANTIPARALLEL, math.pi / 4, math.pi / 4),
        Direction(half, half),
        Direction(half, 0.0),
        Direction(half, math.pi),
    )


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
