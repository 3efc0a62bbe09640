"""Bell correlation probability and the extended Bell inequality.

For directions a, b, c the Bell correlation probability is::

    P_B = |P(a,b) - P(a,c)| - |P(b,c)|

Local realistic correlations satisfy ``P_B <= 1``; quantum correlations of
the supported families stay within ``-1 <= P_B <= 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correlations import closed_form_components
from .states import Direction, EntangledPairState, PairFamily

BOUND_ATOL = 1e-12


@dataclass(frozen=True)
class BellEvaluation:
    p_ab: float
    p_ac: float
    p_bc: float
    p_b: float
    p_b_local: float
    violated: bool

    @property
    def margin(self) -> float:
        """``p_b - 1``; positive exactly when the inequality is violated."""
        return self.p_b - 1.0

    def as_dict(self) -> dict:
        return {
            "p_ab": self.p_ab,
            "p_ac": self.p_ac,
            "p_bc": self.p_bc,
            "p_b": self.p_b,
            "p_b_local": self.p_b_local,
            "margin": self.margin,
            "violated": self.violated,
        }


def bell_combination(p_ab, p_ac, p_bc):
    """``|p_ab - p_ac| - |p_bc|``; works elementwise on arrays."""
    return abs(p_ab - p_ac) - abs(p_bc)


def _pair(s: EntangledPairState, x: Direction, y: Direction):
    return closed_form_components(s.family, s.xi, s.eta, x.theta, x.phi, y.theta, y.phi)


def qbcp(s: EntangledPairState, a: Direction, b: Direction, c: Direction) -> BellEvaluation:
    lc_ab, nlc_ab = _pair(s, a, b)
    lc_ac, nlc_ac = _pair(s, a, c)
    lc_bc, nlc_bc = _pair(s, b, c)
    p_ab = lc_ab + nlc_ab
    p_ac = lc_ac + nlc_ac
    p_bc = lc_bc + nlc_bc
    p_b = bell_combination(p_ab, p_ac, p_bc)
    return BellEvaluation(
        p_ab=p_ab,
        p_ac=p_ac,
        p_bc=p_bc,
        p_b=p_b,
        p_b_local=bell_combination(lc_ab, lc_ac, lc_bc),
        violated=p_b > 1.0,
    )


def extended_bi_local(s: EntangledPairState, a: Direction, b: Direction, c: Direction) -> bool:
    """Check ``1 + |P_lc(b,c)| >= |P_lc(a,b) - P_lc(a,c)|``."""
    return qbcp(s, a, b, c).p_b_local <= 1.0 + BOUND_ATOL


def original_bi_check(
    s: EntangledPairState, a: Direction, b: Direction, c: Direction
) -> tuple[float, float, bool]:
    """Sign-resolved inequality ``1 +/- P_lc(b,c) >= |P_lc(a,b) - P_lc(a,c)|``.

    The sign is ``+`` for antiparallel and ``-`` for parallel spin pairs.
    Returns ``(lhs, rhs, holds)``.
    """
    if s.family.is_photon:
        raise ValueError("the sign-resolved inequality is defined for spin families only")
    lc_ab, _ = _pair(s, a, b)
    lc_ac, _ = _pair(s, a, c)
    lc_bc, _ = _pair(s, b, c)
    sign = -1.0 if s.family.is_parallel else 1.0
    lhs = 1.0 + sign * lc_bc
    rhs = abs(lc_ab - lc_ac)
    return lhs, rhs, lhs + BOUND_ATOL >= rhs


def bound_check(s: EntangledPairState, a: Direction, b: Direction, c: Direction) -> bool:
    p_b = qbcp(s, a, b, c).p_b
    return -1.0 - BOUND_ATOL <= p_b <= 2.0 + BOUND_ATOL


def polar_envelope(theta_a, theta_b, theta_c):
    """Largest of ``|-cos(ta + s tb) + cos(ta - s tc)|`` over ``s = +1, -1``.

    Upper bound on ``P_B`` for antiparallel spin pairs that depends on the
    polar angles only.
    """
    lib = np if isinstance(theta_a, np.ndarray) else math
    plus = abs(-lib.cos(theta_a + theta_b) + lib.cos(theta_a - theta_c))
    minus = abs(-lib.cos(theta_a - theta_b) + lib.cos(theta_a + theta_c))
    return np.maximum(plus, minus) if lib is np else max(plus, minus)


def qbcp_arrays(family, xi, eta, theta_a, phi_a, theta_b, phi_b, theta_c, phi_c):
    """Vectorized ``(p_b, p_b_local, lc_ab, lc_ac, lc_bc)`` over array inputs.

    Angles must already be normalized (theta in [0, pi]); arithmetic matches
    :func:`qbcp` term for term.
    """
    family = PairFamily(family)
    lc_ab, nlc_ab = closed_form_components(family, xi, eta, theta_a, phi_a, theta_b, phi_b, np)
    lc_ac, nlc_ac = closed_form_components(family, xi, eta, theta_a, phi_a, theta_c, phi_c, np)
    lc_bc, nlc_bc = closed_form_components(family, xi, eta, theta_b, phi_b, theta_c, phi_c, np)
    p_b = bell_combination(lc_ab + nlc_ab, lc_ac + nlc_ac, lc_bc + nlc_bc)
    p_b_local = bell_combination(lc_ab, lc_ac, lc_bc)
    return p_b, p_b_local, lc_ab, lc_ac, lc_bc


def inequality_checks_arrays(family, xi, eta, theta_a, phi_a, theta_b, phi_b, theta_c, phi_c):
    """Elementwise outcomes of the three theorem checks.

    Returns a dict of boolean arrays: ``extended`` (as
    :func:`extended_bi_local`), ``original`` (as :func:`original_bi_check`,
    all true for photon families where it does not apply) and ``bounds`` (as
    :func:`bound_check`), plus the underlying ``p_b`` and ``p_b_local``.
    """
    family = PairFamily(family)
    p_b, p_b_local, lc_ab, lc_ac, lc_bc = qbcp_arrays(
        family, xi, eta, theta_a, phi_a, theta_b, phi_b, theta_c, phi_c
    )
    if family.is_photon:
        original = np.ones(np.shape(p_b), dtype=bool)
    else:
        sign = -1.0 if family.is_parallel else 1.0
        original = 1.0 + sign * lc_bc + BOUND_ATOL >= abs(lc_ab - lc_ac)
    return {
        "extended": p_b_local <= 1.0 + BOUND_ATOL,
        "original": original,
        "bounds": (p_b >= -1.0 - BOUND_ATOL) & (p_b <= 2.0 + BOUND_ATOL),
        "p_b": p_b,
        "p_b_local": p_b_local,
    }
