#!/usr/bin/env python3
"""
Fixed points

Newton search for roots of g(x) = f(x) - x over a grid of seeds, with the
stability and spectrum of each root.
"""
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Sequence

import numpy as np

from ..core.dynamics import MapSystem, NonFiniteState
from ..linalg.differentiation import jacobian
from ..linalg.spectral import ConvergenceFailure, SpectralSummary, eigen

logger = logging.getLogger(__name__)

STABILITY_TOL = 1e-6
FIXED_RESIDUAL_TOL = 1e-9
DEDUP_DISTANCE = 1e-6
NEWTON_MAX_ITER = 50


class Stability(Enum):
    Stable = "Stable"
    Unstable = "Unstable"
    Marginal = "Marginal"


def stability_of(spectral: SpectralSummary, tol: float = STABILITY_TOL) -> Stability:
    """Stable iff rho < 1 - tol, Unstable iff some |lambda| > 1 + tol"""
    if spectral.spectral_radius < 1.0 - tol:
        return Stability.Stable
    if np.any(spectral.moduli > 1.0 + tol):
        return Stability.Unstable
    return Stability.Marginal


@dataclass(frozen=True, eq=False)
class FixedPoint:
    """
    Candidate fixed point x* with its linearization A = Df(x*)

    Attributes:
        location: x*
        residual: ||f(x*) - x*||
        stability: Stable / Unstable / Marginal from the spectrum of A
        spectral: Spectral summary of A
    """
    location: np.ndarray
    residual: float
    stability: Stability
    spectral: SpectralSummary

    @property
    def jacobian(self) -> np.ndarray:
        return self.spectral.matrix

    @property
    def is_fixed(self) -> bool:
        return self.residual <= FIXED_RESIDUAL_TOL * (1.0 + float(np.linalg.norm(self.location)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'location': [float(c) for c in self.location],
            'residual': self.residual,
            'stability': self.stability.value,
            'spectral': self.spectral.to_dict(),
        }


def fixed_point_at(system: MapSystem, x) -> FixedPoint:
    """
    Linearize the map at x

    Works for any x; callers check is_fixed before relying on fixed-point
    semantics.

    Raises:
        ConvergenceFailure: Eigensolver failure on Df(x)
        NonFiniteState: Jacobian probes left the domain
    """
    location = np.array(x, dtype=float).reshape(-1)
    residual = float(np.linalg.norm(system.evaluate(location) - location))
    spectral = eigen(jacobian(system, location))
    location.setflags(write=False)
    return FixedPoint(location=location, residual=residual,
                      stability=stability_of(spectral), spectral=spectral)


def _newton(system: MapSystem, seed: np.ndarray, tol: float):
    x = seed.copy()
    identity = np.eye(system.dimension)
    for _ in range(NEWTON_MAX_ITER):
        g = system.evaluate(x) - x
        if not np.all(np.isfinite(g)):
            return None
        if not np.any(g):
            return x
        try:
            J = jacobian(system, x) - identity
            step = np.linalg.solve(J, g)
        except (np.linalg.LinAlgError, NonFiniteState):
            return None
        x = x - step
        if not np.all(np.isfinite(x)):
            return None
        if np.linalg.norm(step) <= tol * (1.0 + np.linalg.norm(x)):
            return x
    return None


def find_fixed_points(system: MapSystem, region: Sequence[Sequence[float]],
                      grid: Sequence[int], tol: float = 1e-12) -> List[FixedPoint]:
    """
    Fixed points of the map inside a box

    Args:
        system: Map to search
        region: Per-axis (low, high) bounds
        grid: Seeds per axis (each >= 2)
        tol: Relative Newton step tolerance

    Returns:
        Fixed points in lexicographic order, deduplicated within 1e-6
    """
    bounds = np.asarray(region, dtype=float).reshape(system.dimension, 2)
    counts = [int(g) for g in grid]
    if len(counts) != system.dimension or min(counts) < 2:
        raise ValueError(f"grid needs {system.dimension} counts >= 2, got {list(grid)}")
    if np.any(bounds[:, 0] > bounds[:, 1]):
        raise ValueError("region bounds must satisfy low <= high")

    axes = [np.linspace(lo, hi, k) for (lo, hi), k in zip(bounds, counts)]
    slack = 1e-9 * (1.0 + np.abs(bounds))
    roots: List[np.ndarray] = []
    dropped = 0
    for seed in itertools.product(*axes):
        root = _newton(system, np.array(seed), tol)
        if root is None:
            dropped += 1
            continue
        inside = np.all(root >= bounds[:, 0] - slack[:, 0]) and np.all(root <= bounds[:, 1] + slack[:, 1])
        if not inside:
            continue
        if any(np.linalg.norm(root - other) <= DEDUP_DISTANCE for other in roots):
            continue
        roots.append(root)
    if dropped:
        logger.info("%s: %d of %d Newton seeds did not converge", system.name, dropped,
                    int(np.prod(counts)))

    found = []
    for root in sorted(roots, key=tuple):
        try:
            fp = fixed_point_at(system, root)
        except (ConvergenceFailure, NonFiniteState) as e:
            logger.warning("%s: cannot linearize at %s: %s", system.name, root, e)
            continue
        if fp.is_fixed:
            found.append(fp)
    return found
