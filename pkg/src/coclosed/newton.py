"""Damped Newton minimization of separable edge energies.

The energy of a mean-zero vertex field u is the sum over edges of
psi(h_e + (du)_e) for a fixed edge field h.  For the cosh potential the
energy is self-concordant, which certifies the two-phase iteration: damped
steps scaled by 1/(1+decrement) while the decrement is at least 1/4, full
steps below, and an a priori bound on the number of damped steps of
ceil(gap / (1/4 - ln(5/4))).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    DegenerateWeightError,
    MaxIterationsError,
    NotMeanZeroError,
)
from .graphs import (
    OrientedGraph,
    _as_edge_field,
    coboundary,
    divergence,
    mean_zero_project,
)
from .hodge import _solve_grounded
from .potentials import Potential

__all__ = [
    "MIN_DAMPED_DECREASE",
    "EnergyProblem",
    "NewtonIteration",
    "NewtonReport",
    "SelfConcordanceReport",
    "energy",
    "gradient",
    "hessian_weights",
    "newton_decrement",
    "damped_phase_bound",
    "minimize",
    "self_concordance_check",
]

# Guaranteed energy decrease of one damped step at decrement 1/4.
MIN_DAMPED_DECREASE = 0.25 - math.log(1.25)

_DECREMENT_THRESHOLD = 0.25
_WEIGHT_FLOOR = 1e-12
_DEGENERATE_GATE = 1e-14
_MEAN_ZERO_RTOL = 1e-10
_BACKTRACK_LIMIT = 60


@dataclass(frozen=True)
class EnergyProblem:
    """Graph, offset edge field and potential defining one energy."""

    graph: OrientedGraph
    offset: np.ndarray
    potential: Potential

    def __post_init__(self):
        offset = _as_edge_field(self.graph, self.offset)
        offset.setflags(write=False)
        object.__setattr__(self, "offset", offset)


@dataclass(frozen=True)
class NewtonIteration:
    phase: str  # "damped" or "full"
    decrement: float
    energy: float


@dataclass(frozen=True)
class NewtonReport:
    """Outcome of one Newton run.

    ``certified`` is set only for the self-concordant cosh potential, whose
    damped-step count is guaranteed to stay within the a priori bound.
    ``weights_floored`` records that some Hessian weight had to be clamped
    at the floor, which voids the certificate's assumptions.
    """

    iterations: tuple[NewtonIteration, ...]
    damped_steps_taken: int
    a_priori_damped_bound: int
    final_decrement: float
    converged: bool
    minimizer: np.ndarray
    tolerance: float
    certified: bool
    weights_floored: bool

    def to_dict(self) -> dict:
        return {
            "iterations": [
                {"phase": it.phase, "decrement": it.decrement, "energy": it.energy}
                for it in self.iterations
            ],
            "damped_steps_taken": self.damped_steps_taken,
            "a_priori_damped_bound": self.a_priori_damped_bound,
            "final_decrement": self.final_decrement,
            "converged": self.converged,
            "minimizer": list(map(float, self.minimizer)),
            "tolerance": self.tolerance,
            "certified": self.certified,
            "weights_floored": self.weights_floored,
        }


def _require_mean_zero(u, n: int) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    scale = np.max(np.abs(u)) if u.size else 0.0
    if abs(u.sum()) > _MEAN_ZERO_RTOL * scale * n:
        raise NotMeanZeroError(f"field sums to {u.sum()!r}")
    return u


def energy(prob: EnergyProblem, u) -> float:
    """Total potential of offset + coboundary(u) for mean-zero u."""
    u = _require_mean_zero(u, prob.graph.vertex_count)
    z = prob.offset + coboundary(prob.graph, u)
    return float(np.sum(prob.potential.psi(z)))


def gradient(prob: EnergyProblem, u) -> np.ndarray:
    """Divergence of sigma at the current edge field, re-centered."""
    u = _require_mean_zero(u, prob.graph.vertex_count)
    z = prob.offset + coboundary(prob.graph, u)
    return mean_zero_project(divergence(prob.graph, prob.potential.sigma(z)))


def hessian_weights(prob: EnergyProblem, u, *, floor: float | None = None) -> np.ndarray:
    """Edge weights sigma'(offset + du) of the Newton metric.

    With ``floor=None`` a weight at or below 1e-14 raises
    DegenerateWeightError; passing a positive floor clamps instead.
    """
    u = _require_mean_zero(u, prob.graph.vertex_count)
    z = prob.offset + coboundary(prob.graph, u)
    w = np.asarray(prob.potential.sigma_prime(z), dtype=float)
    if floor is None:
        if w.size and w.min() <= _DEGENERATE_GATE:
            k = int(np.argmin(w))
            raise DegenerateWeightError(
                f"Hessian weight {w[k]!r} at edge {k} is degenerate"
            )
        return w
    return np.maximum(w, floor)


def newton_decrement(prob: EnergyProblem, u) -> float:
    """Square root of gradient dot Newton-step, the local optimality gauge."""
    g = gradient(prob, u)
    w = hessian_weights(prob, u)
    step = _solve_grounded(prob.graph, w, g)
    return math.sqrt(max(float(g @ step), 0.0))


def damped_phase_bound(gap: float) -> int:
    """A priori damped-step count for an initial energy gap."""
    if gap < 0.0:
        raise ValueError(f"gap must be nonnegative, got {gap}")
    return int(math.ceil(gap / MIN_DAMPED_DECREASE))


def minimize(
    prob: EnergyProblem,
    u0,
    tol: float = 1e-10,
    *,
    max_iterations: int | None = None,
) -> NewtonReport:
    """Two-phase damped Newton iteration from a mean-zero start.

    Args:
        prob: energy being minimized.
        u0: mean-zero initial vertex field.
        tol: decrement threshold for convergence, in (0, 1/4).
        max_iterations: step budget; defaults to 10 * a-priori bound + 100.

    Returns:
        NewtonReport with the iteration trace; energies along it are
        non-increasing and the final decrement is below tol.

    Raises:
        MaxIterationsError: the budget is exhausted before convergence.

    Potentials without the self-concordance certificate take the same
    damped step but halve it while it fails to decrease the energy.
    """
    if not 0.0 < tol < _DECREMENT_THRESHOLD:
        raise ValueError(f"tol must lie in (0, 0.25), got {tol}")
    g_, pot = prob.graph, prob.potential
    phi = mean_zero_project(_require_mean_zero(u0, g_.vertex_count))

    def local_energy(z: np.ndarray) -> float:
        return float(np.sum(pot.psi(z)))

    z = prob.offset + coboundary(g_, phi)
    bound = damped_phase_bound(local_energy(z))
    budget = max_iterations if max_iterations is not None else 10 * bound + 100

    iterations: list[NewtonIteration] = []
    damped_steps = 0
    floored = False
    converged = False
    lam = math.inf
    steps = 0
    while True:
        w = np.asarray(pot.sigma_prime(z), dtype=float)
        if w.size and w.min() <= _WEIGHT_FLOOR:
            floored = True
            w = np.maximum(w, _WEIGHT_FLOOR)
        grad = mean_zero_project(divergence(g_, pot.sigma(z)))
        step = _solve_grounded(g_, w, grad)
        lam = math.sqrt(max(float(grad @ step), 0.0))
        e_now = local_energy(z)
        phase = "damped" if lam >= _DECREMENT_THRESHOLD else "full"
        iterations.append(NewtonIteration(phase, lam, e_now))
        if lam < tol:
            converged = True
            break
        if steps >= budget:
            break
        if phase == "damped":
            scale = 1.0 / (1.0 + lam)
            damped_steps += 1
        else:
            scale = 1.0
        if pot.self_concordant:
            phi = mean_zero_project(phi - scale * step)
            z = prob.offset + coboundary(g_, phi)
        else:
            # No growth certificate: halve until the energy stops rising.
            accepted = False
            slack = 4.0 * np.finfo(float).eps * (1.0 + abs(e_now))
            for _ in range(_BACKTRACK_LIMIT):
                cand = mean_zero_project(phi - scale * step)
                z_cand = prob.offset + coboundary(g_, cand)
                if local_energy(z_cand) <= e_now + slack:
                    phi, z = cand, z_cand
                    accepted = True
                    break
                scale *= 0.5
            if not accepted:
                raise MaxIterationsError(
                    "step halving failed to decrease the energy"
                )
        steps += 1
    if not converged:
        raise MaxIterationsError(
            f"no convergence within {budget} steps; last decrement {lam:.3e}"
        )
    return NewtonReport(
        iterations=tuple(iterations),
        damped_steps_taken=damped_steps,
        a_priori_damped_bound=bound,
        final_decrement=lam,
        converged=True,
        minimizer=phi,
        tolerance=tol,
        certified=pot.self_concordant and not floored,
        weights_floored=floored,
    )


def _replace_minimizer(report: NewtonReport, minimizer: np.ndarray) -> NewtonReport:
    return replace(report, minimizer=minimizer)


@dataclass(frozen=True)
class SelfConcordanceReport:
    samples: int
    max_ratio: float
    max_second: float

    @property
    def passed(self) -> bool:
        return self.max_ratio <= 1.0 + 1e-10


def self_concordance_check(
    prob: EnergyProblem,
    samples: int,
    rng: np.random.Generator | None = None,
) -> SelfConcordanceReport:
    """Sample |D3| <= D2**1.5 along random mean-zero fields and directions.

    Only meaningful for the cosh potential, whose second and third
    directional derivatives are the cosh- and sinh-weighted power sums of
    the coboundary of the direction.
    """
    if not prob.potential.self_concordant:
        raise ValueError("self-concordance check applies to the cosh potential")
    if rng is None:
        rng = np.random.default_rng(0)
    g_ = prob.graph
    if g_.edge_count == 0:
        return SelfConcordanceReport(samples, 0.0, 0.0)
    d = g_.incidence_matrix()
    base = rng.standard_normal((samples, g_.vertex_count))
    dirs = rng.standard_normal((samples, g_.vertex_count))
    base -= base.mean(axis=1, keepdims=True)
    dirs -= dirs.mean(axis=1, keepdims=True)
    c = prob.offset[None, :] + base @ d.T
    v = dirs @ d.T
    second = np.sum(np.cosh(c) * v**2, axis=1)
    third = np.sum(np.sinh(c) * v**3, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(second > 0.0, np.abs(third) / second**1.5, 0.0)
    return SelfConcordanceReport(
        samples=samples,
        max_ratio=float(ratios.max()),
        max_second=float(second.max()),
    )
