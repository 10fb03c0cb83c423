"""Even strictly convex edge potentials and their superposition gap.

A potential is admissible when it is even, vanishes at zero, is strictly
convex with a locally integrable second derivative, and is not quadratic.
The gap sigma(2t) - 2*sigma(t) of its derivative is what distinguishes a
genuinely nonlinear potential from a quadratic one; it powers the
obstruction witnesses on non-cactus graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NoObstructionFoundError

__all__ = [
    "Potential",
    "COSH",
    "QUADRATIC",
    "power_alpha",
    "cosh_power",
    "AdmissibilityReport",
    "check_admissible",
    "obstruction_gap",
    "find_obstruction_scale",
]

# Geometric sweep 2**-20 .. 2**10 used by find_obstruction_scale.
_SWEEP_LOW_EXP = -20
_SWEEP_HIGH_EXP = 10
_GAP_RTOL = 1e-8


@dataclass(frozen=True)
class Potential:
    """Scalar edge potential with first and second derivatives.

    All three callables must accept numpy arrays elementwise.  The
    ``admissible`` flag is declared by the constructor; ``check_admissible``
    probes it numerically.  ``self_concordant`` marks the one potential
    whose Newton iteration carries a step-count certificate.
    """

    name: str
    psi: Callable[[np.ndarray], np.ndarray]
    sigma: Callable[[np.ndarray], np.ndarray]
    sigma_prime: Callable[[np.ndarray], np.ndarray]
    admissible: bool = True
    self_concordant: bool = False


COSH = Potential(
    name="cosh",
    psi=lambda t: np.cosh(t) - 1.0,
    sigma=np.sinh,
    sigma_prime=np.cosh,
    admissible=True,
    self_concordant=True,
)

# Quadratic reference potential: explicitly not admissible (its gap is
# identically zero) but useful as the linear-theory cross-check.
QUADRATIC = Potential(
    name="quad",
    psi=lambda t: 0.5 * np.square(t),
    sigma=lambda t: np.asarray(t, dtype=float) + 0.0,
    sigma_prime=lambda t: np.ones_like(np.asarray(t, dtype=float)),
    admissible=False,
)


def power_alpha(alpha: float) -> Potential:
    """Potential |t|**alpha / alpha for alpha > 2.

    Its second derivative vanishes at t = 0, so Newton metrics built from
    it can degenerate where an edge field crosses zero.
    """
    if not alpha > 2.0:
        raise ValueError(f"alpha must exceed 2, got {alpha}")

    def psi(t):
        return np.abs(t) ** alpha / alpha

    def sigma(t):
        t = np.asarray(t, dtype=float)
        return np.sign(t) * np.abs(t) ** (alpha - 1.0)

    def sigma_prime(t):
        return (alpha - 1.0) * np.abs(t) ** (alpha - 2.0)

    return Potential(f"power:{alpha:g}", psi, sigma, sigma_prime)


def cosh_power(p: float) -> Potential:
    """Potential (cosh t - 1)**p for p > 1.

    sinh**2 = m*(m+2) with m = cosh - 1 keeps the derivative formulas free
    of negative powers of m, so they evaluate cleanly at t = 0.
    """
    if not p > 1.0:
        raise ValueError(f"p must exceed 1, got {p}")

    def psi(t):
        return (np.cosh(t) - 1.0) ** p

    def sigma(t):
        m = np.cosh(t) - 1.0
        return p * m ** (p - 1.0) * np.sinh(t)

    def sigma_prime(t):
        t = np.asarray(t, dtype=float)
        m = np.cosh(t) - 1.0
        return p * m ** (p - 1.0) * ((p - 1.0) * (m + 2.0) + np.cosh(t))

    return Potential(f"coshpow:{p:g}", psi, sigma, sigma_prime)


@dataclass(frozen=True)
class AdmissibilityReport:
    even: bool
    zero_at_zero: bool
    convex: bool
    non_quadratic: bool

    @property
    def passed(self) -> bool:
        return self.even and self.zero_at_zero and self.convex and self.non_quadratic


def check_admissible(p: Potential, grid: np.ndarray | None = None) -> AdmissibilityReport:
    """Probe evenness, normalization, convexity and non-quadraticity.

    Args:
        p: potential under test.
        grid: symmetric sample grid; defaults to [-8, 8] in steps of 0.01.
    """
    if grid is None:
        grid = np.linspace(-8.0, 8.0, 1601)
    grid = np.sort(np.asarray(grid, dtype=float))
    if grid.size == 0:
        raise ValueError("grid must be nonempty")
    if not np.allclose(grid + grid[::-1], 0.0, atol=1e-12):
        raise ValueError("grid must be symmetric about 0")

    values = np.asarray(p.psi(grid), dtype=float)
    second = np.asarray(p.sigma_prime(grid), dtype=float)
    scale = 1.0 + np.max(np.abs(values))
    even = bool(np.all(np.abs(values - values[::-1]) <= 1e-12 * scale))
    zero_at_zero = bool(abs(float(p.psi(np.array(0.0)))) <= 1e-12)
    first = np.asarray(p.sigma(grid), dtype=float)
    convex = bool(np.all(second >= 0.0) and np.all(np.diff(first) >= -1e-12))
    spread = float(second.max() - second.min())
    non_quadratic = bool(spread > 1e-8 * (1.0 + float(np.abs(second).max())))
    return AdmissibilityReport(even, zero_at_zero, convex, non_quadratic)


def obstruction_gap(p: Potential, t: float) -> float:
    """sigma(2t) - 2*sigma(t): zero for all t exactly when sigma is linear."""
    t = float(t)
    return float(p.sigma(np.array(2.0 * t))) - 2.0 * float(p.sigma(np.array(t)))


def find_obstruction_scale(p: Potential) -> float:
    """Smallest sweep scale with a relative superposition gap above 1e-8.

    Sweeps t geometrically over 2**-20 .. 2**10.

    Raises:
        NoObstructionFoundError: the gap stays below threshold on the whole
            sweep, as it does for the quadratic potential.
    """
    for k in range(_SWEEP_LOW_EXP, _SWEEP_HIGH_EXP + 1):
        t = 2.0**k
        gap = obstruction_gap(p, t)
        if abs(gap) > _GAP_RTOL * (1.0 + abs(float(p.sigma(np.array(2.0 * t))))):
            return t
    raise NoObstructionFoundError(
        f"potential {p.name!r} shows no superposition gap on the sweep"
    )
