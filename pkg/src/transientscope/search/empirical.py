#!/usr/bin/env python3
"""
Empirical transient-center evidence

Escape suprema over shrinking balls around a candidate, the empirical
center verdict built on them, quasi-random transient-point search and
honeymoon scaling along a ray. Sampling is seeded per (seed, radius index,
sample index), so results never depend on batch layout or worker count.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import qmc

from ..core.dynamics import (
    MapSystem, NonFiniteState, Observable, TransientTimeResult,
    as_state, candidate_residual, first_triggers, running_delta_max, transient_time,
)
from ..criteria.verdicts import CenterVerdict, Criterion, Decision
from ..errors import TransientScopeError
from ..linalg.differentiation import jacobian
from ..linalg.spectral import ConvergenceFailure, eigen

logger = logging.getLogger(__name__)

DEFAULT_RADII = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
DEFAULT_HORIZON = 100_000
DEFAULT_SAMPLES = 256
XV_CANDIDATE_TOL = 1e-10
DECAY_RATIO = 0.5
ESCAPE_FLOOR = 1e-12
CANDIDATE_PRECHECK = 1000


class CandidateNotInXv(TransientScopeError):
    """The candidate's orbit changes the observable, so it cannot be a center"""

    def __init__(self, candidate, residual: float):
        super().__init__(f"candidate {list(np.round(candidate, 12))} is not in X^v: "
                         f"max |Δv| along its orbit is {residual:.3g}")
        self.candidate = candidate
        self.residual = residual


@dataclass(frozen=True)
class EmpiricalSettings:
    """Sampling budget of the empirical center check"""
    radii: Tuple[float, ...] = DEFAULT_RADII
    horizon: int = DEFAULT_HORIZON
    samples: int = DEFAULT_SAMPLES
    seed: int = 0


@dataclass(frozen=True, eq=False)
class EscapeProfile:
    """Sampled double supremum sup_{x in B_r} sup_t |Δv(f^t(x))| per radius"""
    candidate: np.ndarray
    radii: Tuple[float, ...]
    escape_sup: Tuple[float, ...]
    horizon: int
    samples_per_radius: int
    seed: int

    def rows(self) -> List[Tuple[float, float]]:
        return list(zip(self.radii, self.escape_sup))


@dataclass(frozen=True)
class TransientPointHit:
    point: Tuple[float, ...]
    time: int


@dataclass(frozen=True)
class ScalingRow:
    epsilon: float
    result: Optional[TransientTimeResult] = None
    error: Optional[str] = None

    @property
    def status(self) -> str:
        return self.result.status.value if self.result is not None else "NonFiniteState"

    @property
    def time(self) -> Optional[int]:
        return self.result.time if self.result is not None else None


# === Sampling ===

def unstable_directions(system: MapSystem, candidate) -> List[np.ndarray]:
    """Orthonormal basis of E^u at a fixed point; empty for other points"""
    x = np.asarray(candidate, dtype=float)
    fx = system.evaluate(x)
    if not np.linalg.norm(fx - x) <= 1e-9 * (1.0 + np.linalg.norm(x)):
        return []
    try:
        basis = eigen(jacobian(system, x)).unstable_basis()
    except (ConvergenceFailure, NonFiniteState) as e:
        logger.debug("no unstable directions at %s: %s", x, e)
        return []
    return [basis[:, k] for k in range(basis.shape[1])]


def _reflect(system: MapSystem, points: np.ndarray) -> np.ndarray:
    low = system.low
    high = system.high
    points = np.where(points < low, 2.0 * low - points, points)
    points = np.where(points > high, 2.0 * high - points, points)
    return np.clip(points, low, high)


def ball_samples(system: MapSystem, candidate, r: float, samples: int, seed: int,
                 radius_index: int = 0,
                 directions: Optional[Sequence[np.ndarray]] = None) -> np.ndarray:
    """
    Points in the closed ball B_r(candidate)

    Uniform samples (Gaussian direction scaled by r * u^(1/n)) followed by
    deterministic probes at distance r/2 along the coordinate axes and the
    given directions, both signs. Points outside the domain box are
    reflected back into it.
    """
    c = np.asarray(candidate, dtype=float).reshape(-1)
    n = len(c)
    uniform = np.empty((samples, n))
    for k in range(samples):
        rng = np.random.default_rng(np.random.SeedSequence([seed, radius_index, k]))
        g = rng.standard_normal(n)
        u = rng.random()
        uniform[k] = c + r * u ** (1.0 / n) * g / np.linalg.norm(g)

    axes = [np.eye(n)[i] for i in range(n)]
    probes = []
    for w in axes + list(directions or []):
        w = np.asarray(w, dtype=float)
        w = w / np.linalg.norm(w)
        probes.append(c + 0.5 * r * w)
        probes.append(c - 0.5 * r * w)
    return _reflect(system, np.concatenate([uniform, np.array(probes)]))


# === Escape suprema ===

def _require_candidate(system: MapSystem, v: Observable, candidate, horizon: int) -> np.ndarray:
    c = as_state(system, candidate)
    residual = candidate_residual(system, v, c, horizon)
    if residual > XV_CANDIDATE_TOL:
        raise CandidateNotInXv(c, residual)
    return c


def escape_supremum(system: MapSystem, v: Observable, candidate, r: float, horizon: int,
                    samples: int = DEFAULT_SAMPLES, seed: int = 0, radius_index: int = 0,
                    directions: Optional[Sequence[np.ndarray]] = None,
                    check: bool = True) -> float:
    """
    max over sampled x in B_r(candidate) of max over t <= horizon of |Δv(f^t(x))|

    Orbits that leave the domain contribute the maximum reached before.

    Raises:
        CandidateNotInXv: The candidate's own orbit has |Δv| > 1e-10
    """
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    c = _require_candidate(system, v, candidate, horizon) if check \
        else np.asarray(candidate, dtype=float)
    if directions is None:
        directions = unstable_directions(system, c)
    points = ball_samples(system, c, r, samples, seed, radius_index, directions)
    maxima, failed = running_delta_max(system, v, points, horizon)
    escaped = int(np.count_nonzero(failed >= 0))
    if escaped:
        logger.debug("r=%g: %d of %d orbits left the domain", r, escaped, len(points))
    return float(np.max(maxima))


def escape_profile(system: MapSystem, v: Observable, candidate,
                   radii: Sequence[float] = DEFAULT_RADII, horizon: int = DEFAULT_HORIZON,
                   samples: int = DEFAULT_SAMPLES, seed: int = 0) -> EscapeProfile:
    """Escape suprema for each radius, largest radius first"""
    radii = tuple(sorted((float(r) for r in radii), reverse=True))
    if not radii or radii[-1] <= 0:
        raise ValueError("radii must be a nonempty list of positive reals")
    # short check first so off-X^v candidates fail fast; the full-horizon
    # residual comes from row 0 of the batch below
    c = _require_candidate(system, v, candidate, min(int(horizon), CANDIDATE_PRECHECK))
    directions = unstable_directions(system, c)
    # one orbit pass for all radii; rows are independent, so per-radius maxima
    # match escape_supremum exactly
    batches = [c[None, :]] + [ball_samples(system, c, r, samples, seed, i, directions)
                              for i, r in enumerate(radii)]
    maxima, failed = running_delta_max(system, v, np.concatenate(batches), horizon)
    if failed[0] >= 0:
        # replays the candidate orbit and raises the typed failure
        candidate_residual(system, v, c, horizon)
    if maxima[0] > XV_CANDIDATE_TOL:
        raise CandidateNotInXv(c, float(maxima[0]))
    bounds = np.cumsum([len(b) for b in batches])[:-1]
    values = tuple(float(np.max(chunk)) for chunk in np.split(maxima, bounds)[1:])
    escaped = int(np.count_nonzero(failed[1:] >= 0))
    if escaped:
        logger.debug("%d of %d orbits left the domain", escaped, len(maxima))
    logger.info("escape profile at %s: %s", c, ", ".join(f"{r:g}:{s:.4g}" for r, s in zip(radii, values)))
    return EscapeProfile(candidate=c, radii=radii, escape_sup=values, horizon=int(horizon),
                         samples_per_radius=int(samples), seed=int(seed))


def empirical_center_verdict(system: MapSystem, v: Observable, candidate,
                             radii: Sequence[float] = DEFAULT_RADII,
                             horizon: int = DEFAULT_HORIZON, samples: int = DEFAULT_SAMPLES,
                             seed: int = 0) -> CenterVerdict:
    """
    Center when escape suprema do not decay as the ball shrinks

    S* is half the escape supremum at the largest radius; the candidate is
    reported as a center when every radius reaches S*. The verdict is
    simulation evidence and is flagged empirical.

    Raises:
        CandidateNotInXv: The candidate's own orbit has |Δv| > 1e-10
    """
    profile = escape_profile(system, v, candidate, radii, horizon, samples, seed)
    largest = profile.escape_sup[0]
    smallest = min(profile.escape_sup)
    s_star = 0.5 * largest
    ratio = smallest / largest if largest > 0 else 0.0

    certificate = {
        'S_star': s_star,
        'escape_sup_max': max(profile.escape_sup),
        'escape_sup_min': smallest,
        'ratio': ratio,
        'horizon': float(horizon),
        'samples': float(samples),
    }
    for i, (r, value) in enumerate(profile.rows()):
        certificate[f"escape_sup_{i}"] = value
    center = s_star > ESCAPE_FLOOR and smallest >= s_star
    verdict = CenterVerdict(
        decision=Decision.Center if center else Decision.Inconclusive,
        criterion=Criterion.Empirical,
        certificate=certificate,
        margins={'ratio': ratio - DECAY_RATIO},
        empirical=True,
    )
    verdict.add_vector('candidate', profile.candidate)
    verdict.add_vector('radii', profile.radii)
    return verdict


# === Transient points and scaling ===

def transient_point_search(system: MapSystem, v: Observable, region, s: float, T: int,
                           horizon: int, budget: int, seed: int = 0) -> List[TransientPointHit]:
    """
    Scrambled Halton sampling of a box, keeping (v, s, T)-transient points

    Args:
        region: Per-axis (low, high) bounds
        budget: Number of sampled initial states

    Returns:
        Hits in sample order, each with its transient time
    """
    if int(budget) < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    if int(horizon) <= int(T):
        raise ValueError(f"horizon ({horizon}) must exceed T ({T})")
    bounds = np.asarray(region, dtype=float).reshape(system.dimension, 2)
    sampler = qmc.Halton(d=system.dimension, scramble=True, seed=seed)
    points = qmc.scale(sampler.random(int(budget)), bounds[:, 0], bounds[:, 1])
    points = points[system.contains(points)]
    if len(points) == 0:
        return []
    times, _, failed = first_triggers(system, v, points, s, horizon)
    hits = np.flatnonzero(times > T)
    logger.info("transient point search: %d of %d samples are (v, %g, %d)-transient points "
                "(%d orbits failed)", len(hits), len(points), s, T, int(np.sum(failed >= 0)))
    return [TransientPointHit(point=tuple(float(c) for c in points[k]), time=int(times[k]))
            for k in hits]


def honeymoon_scaling(system: MapSystem, v: Observable, candidate, direction,
                      epsilons: Sequence[float], s: float, horizon: int) -> List[ScalingRow]:
    """
    Transient times of candidate + eps * direction, one row per eps

    Rows follow decreasing eps. Orbits that blow up are recorded in their row.
    """
    c = np.asarray(candidate, dtype=float).reshape(-1)
    d = np.asarray(direction, dtype=float).reshape(-1)
    norm = np.linalg.norm(d)
    if d.shape != c.shape or norm == 0:
        raise ValueError("direction must be a nonzero vector of the state dimension")
    d = d / norm
    rows = []
    for eps in sorted((float(e) for e in epsilons), reverse=True):
        try:
            rows.append(ScalingRow(eps, transient_time(system, v, c + eps * d, s, horizon)))
        except NonFiniteState as e:
            logger.warning("scaling row eps=%g failed: %s", eps, e)
            rows.append(ScalingRow(eps, error=str(e)))
    return rows
