#!/usr/bin/env python3
"""
Transient-center criteria

Each criterion checks the hypotheses of one analytic sufficient condition
at a candidate point and returns a CenterVerdict carrying the numbers that
witness it. Strict inequalities are checked with a relative margin; a
hypothesis that holds only below the margin gives Inconclusive. Structural
mismatches (no unstable real eigenvalue, reducible Jacobian, ...) raise
NotApplicable. `classify` chains all criteria.
"""
import logging
from enum import Enum
from typing import Callable, List, Optional

import numpy as np

from ..core.dynamics import MapSystem, NonFiniteState, Observable
from ..linalg.differentiation import delta_v_field, delta_v_gradient, gradient, hessian_delta_v
from ..linalg.spectral import ConvergenceFailure, definiteness, eigen, nonneg_irreducible
from .fixed_points import FixedPoint, Stability
from .verdicts import CenterVerdict, Criterion, Decision, NotApplicable

logger = logging.getLogger(__name__)

MARGIN = 1e-6
GRADIENT_TOL = 1e-9
DELTA_TOL = 1e-9
FLATNESS_TOL = 1e-7
DEFINITENESS_TOL = 1e-6


class GradientMode(Enum):
    LinearMap = "LinearMap"
    H1 = "H1"
    H2 = "H2"


_MODE_CRITERION = {
    GradientMode.LinearMap: Criterion.GradientEigvecLinear,
    GradientMode.H1: Criterion.GradientEigvecH1,
    GradientMode.H2: Criterion.GradientEigvecH2,
}


def _require_fixed(fp: FixedPoint):
    if not fp.is_fixed:
        raise NotApplicable(f"{list(fp.location)} is not a fixed point (residual {fp.residual:.3g})")


def _relative_margin(lhs: float, rhs: float) -> float:
    return (lhs - rhs) / max(abs(rhs), np.finfo(float).tiny)


# === Negative criterion ===

def stable_exclusion(fp: FixedPoint) -> CenterVerdict:
    """
    NotCenter for every observable when the fixed point is asymptotically stable

    rho(A) < 1 implies Lyapunov stability, which rules out transient
    centers. Marginal and unstable points give Inconclusive.
    """
    _require_fixed(fp)
    rho = fp.spectral.spectral_radius
    verdict = CenterVerdict(
        decision=Decision.NotCenter if fp.stability is Stability.Stable else Decision.Inconclusive,
        criterion=Criterion.StableExclusion,
        certificate={'spectral_radius': rho},
        margins={'stability': 1.0 - rho},
    )
    verdict.add_vector('location', fp.location)
    return verdict


# === Linear maps ===

def linear_eigenspace_criterion(system: MapSystem, v: Observable, samples: int = 16,
                                seed: int = 0) -> CenterVerdict:
    """
    Origin of a linear map: Center when Δv is nonzero somewhere on E^u

    Probes basis vectors of E^u, their pairwise sums and differences, and
    seeded random combinations, all scaled to unit norm.

    Raises:
        NotApplicable: Map not declared linear, or E^u trivial
    """
    if not system.is_linear:
        raise NotApplicable(f"{system.name} is not declared linear")
    basis = eigen(system.linear_matrix).unstable_basis()
    k = basis.shape[1]
    if k == 0:
        raise NotApplicable("unstable eigenspace is trivial")

    probes = [basis[:, i] for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            probes.append(basis[:, i] + basis[:, j])
            probes.append(basis[:, i] - basis[:, j])
    rng = np.random.default_rng(seed)
    probes.extend(basis @ rng.standard_normal(k) for _ in range(int(samples)))
    points = np.array([w / np.linalg.norm(w) for w in probes])
    deltas = np.abs(delta_v_field(system, v, points))
    best = int(np.argmax(deltas))

    verdict = CenterVerdict(
        decision=Decision.Center if deltas[best] > DELTA_TOL else Decision.Inconclusive,
        criterion=Criterion.LinearEigenspace,
        certificate={'max_abs_delta_v': float(deltas[best]), 'unstable_dimension': float(k)},
        margins={'delta_v': float(deltas[best]) - DELTA_TOL},
    )
    verdict.add_vector('w', points[best])
    return verdict


# === Gradient and eigenvector ===

def gradient_eigvec_criterion(system: MapSystem, fp: FixedPoint, v: Observable,
                              mode: GradientMode = GradientMode.H2) -> CenterVerdict:
    """
    Real unstable eigenvector w with ∇v(x*)·w != 0

    Modes:
        LinearMap: the map is linear, no further condition
        H1: lambda^2 > ||A|| (spectral norm)
        H2: lambda^2 > rho(A)

    Raises:
        NotApplicable: No real eigenvalue with |lambda| > 1, LinearMap mode
            on a nonlinear map, or H1/H2 on a map not asserted smooth
    """
    _require_fixed(fp)
    if mode is GradientMode.LinearMap and not system.is_linear:
        raise NotApplicable(f"{system.name} is not declared linear")
    if mode is not GradientMode.LinearMap and not system.smooth:
        raise NotApplicable(f"{system.name} is not asserted C^2")
    pairs = fp.spectral.unstable_pairs()
    if not pairs:
        raise NotApplicable("no real eigenvalue exceeds 1 in modulus")

    rho = fp.spectral.spectral_radius
    norm = fp.spectral.spectral_norm
    grad = gradient(v, fp.location)
    criterion = _MODE_CRITERION[mode]

    best = None
    for lam, w in pairs:
        product = float(grad @ w)
        margins = {'unstable': abs(lam) - 1.0, 'gradient': abs(product) - GRADIENT_TOL}
        if mode is GradientMode.H1:
            margins['H1'] = _relative_margin(lam * lam, norm)
        elif mode is GradientMode.H2:
            margins['H2'] = _relative_margin(lam * lam, rho)
        holds = margins['unstable'] > MARGIN and abs(product) > GRADIENT_TOL and \
            all(margins[key] > MARGIN for key in ('H1', 'H2') if key in margins)
        verdict = CenterVerdict(
            decision=Decision.Center if holds else Decision.Inconclusive,
            criterion=criterion,
            certificate={
                'lambda': lam,
                'lambda_squared': lam * lam,
                'spectral_radius': rho,
                'spectral_norm': norm,
                'grad_dot_w': product,
            },
            margins=margins,
        )
        verdict.add_vector('w', w)
        if holds:
            return verdict
        if best is None:
            best = verdict
    return best


def perron_frobenius_criterion(fp: FixedPoint, p_vec) -> CenterVerdict:
    """
    Linear observable p.x at a fixed point with a nonnegative irreducible Jacobian

    Center when rho(A) > 1; the Perron vector is recorded.

    Raises:
        NotApplicable: n < 2, A has a negative entry or is reducible
    """
    _require_fixed(fp)
    p = np.asarray(p_vec, dtype=float).reshape(-1)
    if p.shape != fp.location.shape or np.any(p < 0) or not np.any(p):
        raise ValueError("p_vec must be a nonnegative nonzero vector of the state dimension")
    A = fp.jacobian
    if A.shape[0] < 2:
        raise NotApplicable("Perron-Frobenius route needs n >= 2")
    if not nonneg_irreducible(A):
        raise NotApplicable("Jacobian is not nonnegative irreducible")

    rho = fp.spectral.spectral_radius
    verdict = CenterVerdict(
        decision=Decision.Center if rho > 1.0 + MARGIN else Decision.Inconclusive,
        criterion=Criterion.PerronFrobenius,
        certificate={'spectral_radius': rho},
        margins={'rho': rho - 1.0},
    )
    for lam, w in fp.spectral.real_eigenpairs:
        if abs(lam - rho) <= 1e-8 * max(1.0, rho):
            verdict.certificate['p_dot_w'] = float(p @ w)
            verdict.add_vector('perron_vector', w)
            break
    return verdict


# === Second order ===

def flatness_criterion(system: MapSystem, fp: FixedPoint, v: Observable) -> CenterVerdict:
    """
    Unstable fixed point where Δv is flat with a definite Hessian

    Raises:
        NotApplicable: Not a fixed point, not unstable, or map not smooth
    """
    _require_fixed(fp)
    if fp.stability is not Stability.Unstable:
        raise NotApplicable(f"fixed point is {fp.stability.value}, not Unstable")
    if not system.smooth:
        raise NotApplicable(f"{system.name} is not asserted C^2")

    scale = 1.0 + float(np.linalg.norm(fp.location))
    grad_norm = float(np.linalg.norm(delta_v_gradient(system, v, fp.location)))
    certificate = {'grad_delta_v_norm': grad_norm}
    margins = {'flatness': FLATNESS_TOL * scale - grad_norm}
    if grad_norm > FLATNESS_TOL * scale:
        return CenterVerdict(Decision.Inconclusive, Criterion.HessianFlatness,
                             certificate=certificate, margins=margins)

    H = hessian_delta_v(system, v, fp.location)
    definite = definiteness(H, DEFINITENESS_TOL)
    certificate['hessian_min_abs_eigenvalue'] = definite.min_abs_eigenvalue
    for i, lam in enumerate(definite.eigenvalues):
        certificate[f"hessian_eigenvalue_{i}"] = lam
    margins['definiteness'] = definite.min_abs_eigenvalue
    verdict = CenterVerdict(
        decision=Decision.Center if definite.is_definite else Decision.Inconclusive,
        criterion=Criterion.HessianFlatness,
        certificate=certificate,
        margins=margins,
    )
    verdict.diagnostics.append(f"Hessian is {definite.kind.value}")
    return verdict


# === Orchestration ===

def _nonnegative_linear(v: Observable) -> bool:
    return v.is_linear and bool(np.all(v.coefficients >= 0)) and bool(np.any(v.coefficients))


def classify(system: MapSystem, fp: FixedPoint, v: Observable, empirical=None,
             use_empirical: bool = True) -> CenterVerdict:
    """
    Run the criteria chain on a candidate point

    Order: StableExclusion, PerronFrobenius (nonnegative linear observables),
    GradientEigvec H2, H1 and LinearMap (linear maps), LinearEigenspace
    (origin of a linear map), HessianFlatness, then the empirical check.
    StableExclusion's NotCenter ends the chain. Every analytic criterion is
    evaluated and kept in `attempts`; the first Center wins. Criteria that
    do not apply or fail numerically are listed in `diagnostics`.

    Args:
        system: The map
        fp: Candidate point, usually from find_fixed_points or fixed_point_at
        v: Observable
        empirical: EmpiricalSettings for the fallback check (defaults apply
            when None)
        use_empirical: Run the empirical check when no analytic criterion
            certifies a center

    Returns:
        CenterVerdict with attempts and diagnostics attached
    """
    from ..search.empirical import CandidateNotInXv, EmpiricalSettings, empirical_center_verdict

    attempts: List[CenterVerdict] = []
    diagnostics: List[str] = []

    def attempt(criterion: Criterion, run: Callable[[], CenterVerdict]) -> Optional[CenterVerdict]:
        try:
            verdict = run()
        except (NotApplicable, ConvergenceFailure, NonFiniteState, CandidateNotInXv) as e:
            diagnostics.append(f"{criterion.value}: {type(e).__name__}: {e}")
            logger.debug("%s skipped: %s", criterion.value, e)
            return None
        attempts.append(verdict)
        return verdict

    def finish(verdict: CenterVerdict) -> CenterVerdict:
        result = CenterVerdict(
            decision=verdict.decision,
            criterion=verdict.criterion,
            certificate=dict(verdict.certificate),
            margins=dict(verdict.margins),
            empirical=verdict.empirical,
            vectors=dict(verdict.vectors),
            diagnostics=diagnostics + list(verdict.diagnostics),
            attempts=attempts,
        )
        result.add_vector('location', fp.location)
        return result

    first = attempt(Criterion.StableExclusion, lambda: stable_exclusion(fp))
    if first is not None and first.decision is Decision.NotCenter:
        return finish(first)

    if _nonnegative_linear(v):
        attempt(Criterion.PerronFrobenius, lambda: perron_frobenius_criterion(fp, v.coefficients))
    attempt(Criterion.GradientEigvecH2, lambda: gradient_eigvec_criterion(system, fp, v, GradientMode.H2))
    attempt(Criterion.GradientEigvecH1, lambda: gradient_eigvec_criterion(system, fp, v, GradientMode.H1))
    if system.is_linear:
        attempt(Criterion.GradientEigvecLinear,
                lambda: gradient_eigvec_criterion(system, fp, v, GradientMode.LinearMap))
        if not np.any(fp.location):
            attempt(Criterion.LinearEigenspace, lambda: linear_eigenspace_criterion(system, v))
    attempt(Criterion.HessianFlatness, lambda: flatness_criterion(system, fp, v))

    for verdict in attempts:
        if verdict.decision is Decision.Center:
            return finish(verdict)

    if use_empirical:
        settings = empirical or EmpiricalSettings()
        verdict = attempt(Criterion.Empirical, lambda: empirical_center_verdict(
            system, v, fp.location, settings.radii, settings.horizon, settings.samples,
            settings.seed))
        if verdict is not None:
            return finish(verdict)

    fallback = attempts[-1] if attempts else CenterVerdict(Decision.Inconclusive, Criterion.Empirical)
    result = finish(fallback)
    result.decision = Decision.Inconclusive
    if not attempts:
        result.diagnostics.append("no criterion applied")
    return result
