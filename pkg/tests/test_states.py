import math

import numpy as np
import pytest
from hypothesis import given

from conftest import angles, directions, pair_states, spin_observable
from extbell import (
    Direction,
    EntangledPairState,
    PairFamily,
    photon_measurement_pair,
    spin_coherent_pair,
    state_vector,
)

R2 = 1 / math.sqrt(2)


@pytest.mark.parametrize(
    "theta, phi, up, down",
    [
        (0.0, 0.0, (1, 0), (0, -1)),
        (math.pi, 0.0, (0, 1), (1, 0)),
        (math.pi / 2, 0.0, (R2, R2), (R2, -R2)),
    ],
)
def test_spin_coherent_pair_examples(theta, phi, up, down):
    u, d = spin_coherent_pair(Direction(theta, phi))
    np.testing.assert_allclose(u, up, atol=1e-15)
    np.testing.assert_allclose(d, down, atol=1e-15)


@pytest.mark.parametrize(
    "phi, h, v",
    [
        (0.0, (1, 0), (0, 1)),
        (math.pi / 2, (0, 1), (-1, 0)),
        (math.pi / 4, (R2, R2), (-R2, R2)),
    ],
)
def test_photon_measurement_pair_examples(phi, h, v):
    hh, vv = photon_measurement_pair(phi)
    np.testing.assert_allclose(hh, h, atol=1e-15)
    np.testing.assert_allclose(vv, v, atol=1e-15)
    assert np.all(hh.imag == 0) and np.all(vv.imag == 0)


@pytest.mark.parametrize(
    "state, expected",
    [
        (EntangledPairState(PairFamily.SPIN_ANTIPARALLEL, 3 * math.pi / 4, 0.0), (0, R2, -R2, 0)),
        (
            EntangledPairState(PairFamily.SPIN_PARALLEL, math.pi / 4, math.pi / 4),
            (np.exp(1j * math.pi / 4) * R2, 0, 0, np.exp(-1j * math.pi / 4) * R2),
        ),
        (EntangledPairState(PairFamily.PHOTON_PERPENDICULAR, math.pi / 4, 0.0), (0, R2, R2, 0)),
        (EntangledPairState(PairFamily.PHOTON_PARALLEL, 3 * math.pi / 4, 0.0), (R2, 0, 0, -R2)),
    ],
)
def test_state_vector_examples(state, expected):
    np.testing.assert_allclose(state_vector(state), expected, atol=1e-15)


def test_family_accepts_cli_names():
    assert EntangledPairState("photon-par", 0.1).family is PairFamily.PHOTON_PARALLEL


class TestDirectionNormalization:
    def test_negative_theta_reflects(self):
        r = Direction(-0.3, 0.2)
        assert r.theta == pytest.approx(0.3)
        assert r.phi == pytest.approx(0.2 + math.pi)

    def test_theta_above_pi_reflects(self):
        r = Direction(math.pi + 0.4, 1.0)
        assert r.theta == pytest.approx(math.pi - 0.4)
        assert r.phi == pytest.approx(1.0 + math.pi)

    def test_phi_wraps(self):
        assert Direction(1.0, -0.5).phi == pytest.approx(2 * math.pi - 0.5)
        assert Direction(1.0, 7.0).phi == pytest.approx(7.0 - 2 * math.pi)

    def test_tiny_negative_phi_stays_below_two_pi(self):
        assert Direction(1.0, -1e-17).phi < 2 * math.pi

    def test_poles_are_kept(self):
        assert Direction(math.pi, 0.0).theta == math.pi
        assert Direction(0.0, 0.0).theta == 0.0

    @given(directions())
    def test_ranges(self, r):
        assert 0.0 <= r.theta <= math.pi
        assert 0.0 <= r.phi < 2 * math.pi

    @given(angles, angles)
    def test_unit_vector_preserved(self, theta, phi):
        r = Direction(theta, phi)
        raw = np.array(
            [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
        )
        np.testing.assert_allclose(r.vector, raw, atol=1e-12)

    @given(directions())
    def test_idempotent(self, r):
        again = Direction(r.theta, r.phi)
        assert (again.theta, again.phi) == (r.theta, r.phi)


@given(directions())
def test_spin_pair_orthonormal_and_complete(r):
    up, down = spin_coherent_pair(r)
    assert abs(np.vdot(up, down)) < 1e-12
    assert abs(np.linalg.norm(up) - 1) < 1e-12
    assert abs(np.linalg.norm(down) - 1) < 1e-12
    identity = np.outer(up, up.conj()) + np.outer(down, down.conj())
    np.testing.assert_allclose(identity, np.eye(2), atol=1e-12)


@given(directions())
def test_spin_pair_are_eigenstates(r):
    op = spin_observable(r)
    up, down = spin_coherent_pair(r)
    np.testing.assert_allclose(op @ up, up, atol=1e-12)
    np.testing.assert_allclose(op @ down, -down, atol=1e-12)


@given(angles)
def test_photon_pair_orthonormal(phi):
    h, v = photon_measurement_pair(phi)
    assert abs(np.vdot(h, v)) < 1e-12
    np.testing.assert_allclose(np.outer(h, h) + np.outer(v, v), np.eye(2), atol=1e-12)


@given(pair_states())
def test_coefficients_normalized(s):
    assert abs(abs(s.c1) ** 2 + abs(s.c2) ** 2 - 1) < 1e-12
    assert abs(np.linalg.norm(state_vector(s)) - 1) < 1e-12


def test_state_parameters_stored_unwrapped():
    s = EntangledPairState(PairFamily.SPIN_PARALLEL, 9.0, -7.0)
    assert (s.xi, s.eta) == (9.0, -7.0)
