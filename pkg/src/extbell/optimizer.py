"""Numerical search for the largest Bell correlation probability.

The search is multi-start Nelder-Mead on ``-P_B``. Starts come from the best
points of a coarse vectorized grid plus seeded uniform random points. Angles
are never constrained during the search: every evaluation goes through
:class:`~extbell.states.Direction`, which folds them into range.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .bell import qbcp, qbcp_arrays
from .states import TWO_PI, Direction, EntangledPairState, PairFamily

SPIN_ANGLES = ("theta_a", "phi_a", "theta_b", "phi_b", "theta_c", "phi_c")
PHOTON_ANGLES = ("phi_a", "phi_b", "phi_c")
STATE_PARAMS = ("xi", "eta")

# standard (non-adaptive) Nelder-Mead coefficients used by scipy
NM_REFLECTION = 1.0
NM_EXPANSION = 2.0
NM_CONTRACTION = 0.5
NM_SHRINK = 0.5

INITIAL_STEP = 0.3
DEGENERATE_JITTER = 1e-6


def parameter_names(family: PairFamily, free_state: bool = True) -> tuple[str, ...]:
    family = PairFamily(family)
    names = PHOTON_ANGLES if family.is_photon else SPIN_ANGLES
    return names + STATE_PARAMS if free_state else names


def parameter_range(name: str) -> tuple[float, float]:
    """Canonical search/scan interval for a parameter."""
    if name.startswith("theta"):
        return 0.0, math.pi
    if name.startswith("phi"):
        return 0.0, TWO_PI
    return 0.0, math.pi


def build_configuration(family: PairFamily, params: Mapping[str, float]):
    """``(state, a, b, c)`` from a parameter mapping.

    Missing angles default to 0; photon directions lie in the x-y plane.
    """
    family = PairFamily(family)
    state = EntangledPairState(family, params["xi"], params["eta"])
    if family.is_photon:
        dirs = tuple(Direction.planar(params.get(f"phi_{d}", 0.0)) for d in "abc")
    else:
        dirs = tuple(
            Direction(params.get(f"theta_{d}", 0.0), params.get(f"phi_{d}", 0.0))
            for d in "abc"
        )
    return (state,) + dirs


def configuration_params(state: EntangledPairState, a: Direction, b: Direction, c: Direction):
    """Inverse of :func:`build_configuration`."""
    params = {"xi": state.xi, "eta": state.eta}
    for d, r in zip("abc", (a, b, c)):
        if not state.family.is_photon:
            params[f"theta_{d}"] = r.theta
        params[f"phi_{d}"] = r.phi
    return params


@dataclass(frozen=True)
class OptimizationProblem:
    family: PairFamily
    free_state: bool = True
    fixed_xi: float | None = None
    fixed_eta: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", PairFamily(self.family))
        if not self.free_state and (self.fixed_xi is None or self.fixed_eta is None):
            raise ValueError("fixed_xi and fixed_eta are required when free_state is false")

    @property
    def names(self) -> tuple[str, ...]:
        return parameter_names(self.family, self.free_state)

    def params(self, x) -> dict:
        params = dict(zip(self.names, (float(v) for v in x)))
        if not self.free_state:
            params["xi"] = self.fixed_xi
            params["eta"] = self.fixed_eta
        return params

    def evaluate(self, x) -> float:
        return qbcp(*build_configuration(self.family, self.params(x))).p_b


@dataclass(frozen=True)
class OptimizerConfig:
    n_starts: int = 64
    grid_resolution: int = 5
    tolerance: float = 1e-10
    max_iterations: int = 2000
    seed: int = 0

    def __post_init__(self):
        for name in ("n_starts", "grid_resolution", "max_iterations"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class OptimizationResult:
    best_value: float
    best_angles: tuple[Direction, Direction, Direction]
    best_state: tuple[float, float]
    starts_converged: int
    evaluations: int
    max_evaluated: float
    grid_points: int
    best_start: int
    family: PairFamily = field(default=PairFamily.SPIN_ANTIPARALLEL)

    def as_dict(self) -> dict:
        a, b, c = self.best_angles
        angles = {}
        for d, r in zip("abc", (a, b, c)):
            angles[d] = {"phi": r.phi} if self.family.is_photon else {"theta": r.theta, "phi": r.phi}
        return {
            "best_value": self.best_value,
            "best_angles": angles,
            "best_state": {"xi": self.best_state[0], "eta": self.best_state[1]},
            "starts_converged": self.starts_converged,
            "evaluations": self.evaluations,
            "max_evaluated": self.max_evaluated,
            "grid_points": self.grid_points,
        }


def _grid_axes(names, resolution):
    axes = []
    for name in names:
        lo, hi = parameter_range(name)
        if name.startswith("theta"):
            axes.append(np.linspace(lo, hi, resolution))
        else:
            axes.append(lo + (hi - lo) * np.arange(resolution) / resolution)
    return axes


def _grid_values(problem: OptimizationProblem, points: np.ndarray) -> np.ndarray:
    cols = dict(zip(problem.names, points.T))
    if not problem.free_state:
        cols["xi"] = problem.fixed_xi
        cols["eta"] = problem.fixed_eta
    zeros = np.zeros(len(points))
    half_pi = np.full(len(points), math.pi / 2)
    args = []
    for d in "abc":
        args.append(cols.get(f"theta_{d}", half_pi))
        args.append(cols[f"phi_{d}"])
    return qbcp_arrays(problem.family, cols["xi"], cols["eta"] + zeros, *args)[0]


def _initial_simplex(problem: OptimizationProblem, x0: np.ndarray, rng) -> np.ndarray:
    n = len(x0)
    simplex = np.vstack([x0, x0 + INITIAL_STEP * np.eye(n)])
    # wrapped vertices may coincide; break ties with a tiny deterministic jitter
    canon = [tuple(np.round(_canonical(problem, v), 12)) for v in simplex]
    if len(set(canon)) < len(canon):
        simplex = simplex + DEGENERATE_JITTER * rng.standard_normal(simplex.shape)
    return simplex


def _canonical(problem: OptimizationProblem, x) -> list[float]:
    state, *dirs = build_configuration(problem.family, problem.params(x))
    out = []
    for r in dirs:
        out.extend((r.theta, r.phi))
    if problem.free_state:
        out.extend((state.xi % TWO_PI, state.eta % TWO_PI))
    return out


def maximize_qbcp(problem: OptimizationProblem, config: OptimizerConfig | None = None) -> OptimizationResult:
    """Maximize the Bell correlation probability for ``problem``.

    Deterministic for a fixed ``config.seed``. Starts are processed in index
    order and merged by (value, lowest start index).
    """
    config = config or OptimizerConfig()
    names = problem.names
    rng = np.random.default_rng(int(config.seed) % 2**64)

    axes = _grid_axes(names, config.grid_resolution)
    grid = np.array(list(itertools.product(*axes)))
    grid_values = _grid_values(problem, grid)
    n_grid = min(config.n_starts // 2, len(grid))
    order = np.argsort(-grid_values, kind="stable")[:n_grid]
    lows = np.array([parameter_range(n)[0] for n in names])
    highs = np.array([parameter_range(n)[1] for n in names])
    random_starts = rng.uniform(lows, highs, size=(config.n_starts - n_grid, len(names)))
    starts = np.vstack([grid[order], random_starts])

    seen = {"count": 0, "max": -math.inf}

    def negated(x):
        value = problem.evaluate(x)
        seen["count"] += 1
        if value > seen["max"]:
            seen["max"] = value
        return -value

    best = (-math.inf, None, -1)
    converged = 0
    for index, x0 in enumerate(starts):
        res = minimize(
            negated,
            x0,
            method="Nelder-Mead",
            options={
                "initial_simplex": _initial_simplex(problem, x0, rng),
                "maxiter": config.max_iterations,
                "xatol": np.inf,
                "fatol": config.tolerance,
                "adaptive": False,
            },
        )
        converged += bool(res.success)
        value = problem.evaluate(res.x)
        if value > best[0]:
            best = (value, res.x, index)

    value, x, index = best
    state, a, b, c = build_configuration(problem.family, problem.params(x))
    return OptimizationResult(
        best_value=value,
        best_angles=(a, b, c),
        best_state=(state.xi, state.eta),
        starts_converged=converged,
        evaluations=seen["count"],
        max_evaluated=seen["max"],
        grid_points=len(grid),
        best_start=index,
        family=problem.family,
    )


@dataclass(frozen=True)
class ScanAxis:
    """``steps`` points ``start + k (stop - start) / steps`` for k < steps."""

    name: str
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if isinstance(self.steps, bool) or int(self.steps) != self.steps or self.steps < 1:
            raise ValueError(f"steps must be a positive integer, got {self.steps!r}")
        if not self.stop >= self.start:
            raise ValueError(f"empty range [{self.start}, {self.stop})")
        if self.stop == self.start and self.steps > 1:
            raise ValueError(f"empty range [{self.start}, {self.stop}) with {self.steps} steps")

    @property
    def values(self) -> np.ndarray:
        k = np.arange(int(self.steps))
        return self.start + (self.stop - self.start) * k / self.steps


@dataclass(frozen=True)
class ScanResult:
    names: tuple[str, ...]
    points: np.ndarray
    values: np.ndarray

    def rows(self):
        for point, value in zip(self.points, self.values):
            yield (*(float(p) for p in point), float(value))


def landscape_scan(
    family: PairFamily, base: Mapping[str, float], axes: Sequence[ScanAxis]
) -> ScanResult:
    """Evaluate ``P_B`` on a 1-D or 2-D grid in row-major order.

    ``base`` supplies ``xi``, ``eta`` and any fixed angles; each axis
    overrides one parameter.
    """
    family = PairFamily(family)
    if not 1 <= len(axes) <= 2:
        raise ValueError("a scan takes one or two axes")
    allowed = parameter_names(family, True)
    names = tuple(axis.name for axis in axes)
    for name in names:
        if name not in allowed:
            raise ValueError(f"unknown parameter {name!r} for {family.value}; expected one of {allowed}")
    if len(set(names)) != len(names):
        raise ValueError("scan axes must name distinct parameters")

    points = np.array(list(itertools.product(*(axis.values for axis in axes))))
    values = np.empty(len(points))
    params = dict(base)
    for i, point in enumerate(points):
        params.update(zip(names, (float(p) for p in point)))
        values[i] = qbcp(*build_configuration(family, params)).p_b
    return ScanResult(names, points, values)
