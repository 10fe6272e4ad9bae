#!/usr/bin/env python3
"""
Finite-difference derivatives of maps and observables

Central differences with per-coordinate steps h_i = step * max(1, |x_i|).
All probe points of one derivative are evaluated as a single batch.
Analytic derivatives are used whenever the map or observable carries them.
"""
import numpy as np

from ..core.dynamics import DomainEscape, MapSystem, NonFiniteState, Observable

FIRST_ORDER_STEP = 1e-6
HESSIAN_STEP = 1e-4


def _steps(x: np.ndarray, step: float) -> np.ndarray:
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    return step * np.maximum(1.0, np.abs(x))


def _check_probes(system: MapSystem, probes: np.ndarray):
    if not np.all(system.contains(probes)):
        raise DomainEscape(f"{system.name}: finite-difference probe outside the domain box", step=0)


def _check_finite(values: np.ndarray, what: str):
    if not np.all(np.isfinite(values)):
        raise NonFiniteState(f"non-finite value while differentiating {what}", step=0)


def jacobian(system: MapSystem, x, step: float = FIRST_ORDER_STEP,
             analytic: bool = True) -> np.ndarray:
    """
    Jacobian Df(x)

    Args:
        system: Map to differentiate
        x: Evaluation point
        step: Relative central-difference step
        analytic: Use the map's own Jacobian when it has one

    Returns:
        (n, n) matrix

    Raises:
        NonFiniteState: A probe left the domain or produced NaN/inf
    """
    x = np.array(x, dtype=float).reshape(-1)
    if analytic and system.jac is not None:
        J = np.array(system.jac(x), dtype=float).reshape(system.dimension, system.dimension)
        _check_finite(J, system.name)
        return J
    n = system.dimension
    h = _steps(x, step)
    offsets = np.diag(h)
    probes = np.concatenate([x + offsets, x - offsets])
    _check_probes(system, probes)
    values = system.evaluate(probes)
    _check_finite(values, system.name)
    return ((values[:n] - values[n:]) / (2.0 * h)[:, None]).T


def gradient(v: Observable, x, step: float = FIRST_ORDER_STEP,
             analytic: bool = True) -> np.ndarray:
    """Gradient of v at x, analytic when available"""
    x = np.array(x, dtype=float).reshape(-1)
    if analytic and v.grad is not None:
        g = np.array(v.grad(x), dtype=float).reshape(-1)
        _check_finite(g, v.name)
        return g
    h = _steps(x, step)
    offsets = np.diag(h)
    values = v.evaluate(np.concatenate([x + offsets, x - offsets]))
    _check_finite(values, v.name)
    n = len(x)
    return (values[:n] - values[n:]) / (2.0 * h)


def delta_v_field(system: MapSystem, v: Observable, points) -> np.ndarray:
    """Batched Δv = v(f(p)) - v(p)"""
    pts = np.asarray(points, dtype=float)
    return v.evaluate(system.evaluate(pts)) - v.evaluate(pts)


def delta_v_gradient(system: MapSystem, v: Observable, x,
                     step: float = FIRST_ORDER_STEP) -> np.ndarray:
    """
    Gradient of Δv at x

    Uses the chain rule Df(x)^T ∇v(f(x)) - ∇v(x) when both the Jacobian and
    the gradient are analytic, central differences of Δv otherwise.
    """
    x = np.array(x, dtype=float).reshape(-1)
    if system.jac is not None and v.grad is not None:
        fx = system.evaluate(x)
        _check_finite(fx, system.name)
        return jacobian(system, x).T @ gradient(v, fx) - gradient(v, x)
    h = _steps(x, step)
    offsets = np.diag(h)
    probes = np.concatenate([x + offsets, x - offsets])
    _check_probes(system, probes)
    values = delta_v_field(system, v, probes)
    _check_finite(values, f"Δ{v.name}")
    n = len(x)
    return (values[:n] - values[n:]) / (2.0 * h)


def hessian_delta_v(system: MapSystem, v: Observable, x,
                    step: float = HESSIAN_STEP) -> np.ndarray:
    """
    Hessian of the scalar map x -> Δv(x)

    Second-order central differences on the four-point stencil
    x ± h_i e_i ± h_j e_j. Entries (i, j) and (j, i) share their stencil
    values and differ only by rounding, which (H + H^T) / 2 removes.

    Raises:
        NonFiniteState: A probe left the domain or produced NaN/inf
    """
    x = np.array(x, dtype=float).reshape(-1)
    n = len(x)
    h = _steps(x, step)
    offsets = np.diag(h)

    # stencil layout: for each (i, j) the corners (+,+), (+,-), (-,+), (-,-)
    corners = np.empty((n, n, 4, n))
    for i in range(n):
        for j in range(n):
            corners[i, j, 0] = x + offsets[i] + offsets[j]
            corners[i, j, 1] = x + offsets[i] - offsets[j]
            corners[i, j, 2] = x - offsets[i] + offsets[j]
            corners[i, j, 3] = x - offsets[i] - offsets[j]
    probes = corners.reshape(-1, n)
    _check_probes(system, probes)
    values = delta_v_field(system, v, probes).reshape(n, n, 4)
    _check_finite(values, f"Δ{v.name}")

    H = (values[..., 0] - values[..., 1] - values[..., 2] + values[..., 3]) / (4.0 * np.outer(h, h))
    return 0.5 * (H + H.T)
