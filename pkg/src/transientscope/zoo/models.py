#!/usr/bin/env python3
"""
Built-in maps

Vectorized right-hand sides and analytic Jacobians of the zoo models. Each
factory returns a MapSystem; parameter validation happens in the catalog.
"""
import numpy as np

from ..core.dynamics import MapSystem

POPULATION_BOX = 1e6


def _population_box(n: int = 2):
    return (0.0,) * n, (POPULATION_BOX,) * n


# === Example systems ===

def example1(h: float) -> MapSystem:
    """f(x, y) = (x(1 - hy), y + h(x - 1)); the y-axis is invariant"""

    def func(s):
        x = s[..., 0]
        y = s[..., 1]
        return np.stack([x * (1.0 - h * y), y + h * (x - 1.0)], axis=-1)

    def jac(s):
        x, y = s
        return np.array([[1.0 - h * y, -h * x],
                         [h, 1.0]])

    return MapSystem(dimension=2, func=func, jac=jac, name="example1", params={'h': h})


def example2(a: float, b: float) -> MapSystem:
    """f(x, y) = (ay / (1 + x^2), bx / (1 + y^2))"""

    def func(s):
        x = s[..., 0]
        y = s[..., 1]
        return np.stack([a * y / (1.0 + x * x), b * x / (1.0 + y * y)], axis=-1)

    def jac(s):
        x, y = s
        gx = 1.0 + x * x
        hy = 1.0 + y * y
        return np.array([[-2.0 * a * x * y / (gx * gx), a / gx],
                         [b / hy, -2.0 * b * x * y / (hy * hy)]])

    return MapSystem(dimension=2, func=func, jac=jac, name="example2", params={'a': a, 'b': b})


def cubic1d() -> MapSystem:
    """f(x) = 2x + x^3"""

    def func(s):
        x = s[..., 0]
        return (2.0 * x + x * x * x)[..., None]

    def jac(s):
        x = s[0]
        return np.array([[2.0 + 3.0 * x * x]])

    return MapSystem(dimension=1, func=func, jac=jac, name="cubic1d")


def linear_custom(matrix) -> MapSystem:
    return MapSystem.linear(matrix, name="linear_custom")


# === Predator-prey ===

def streipert_pp(r: float, K: float, alpha: float, gamma: float, d: float) -> MapSystem:
    """
    Discrete predator-prey model with logistic prey

        x(t+1) = (1 + r) x / (1 + (r/K) x + alpha y)
        y(t+1) = (1 + gamma x) y / (1 + d)
    """

    def func(s):
        x = s[..., 0]
        y = s[..., 1]
        den = 1.0 + (r / K) * x + alpha * y
        return np.stack([(1.0 + r) * x / den, (1.0 + gamma * x) * y / (1.0 + d)], axis=-1)

    def jac(s):
        x, y = s
        den = 1.0 + (r / K) * x + alpha * y
        den2 = den * den
        return np.array([[(1.0 + r) * (1.0 + alpha * y) / den2, -(1.0 + r) * alpha * x / den2],
                         [gamma * y / (1.0 + d), (1.0 + gamma * x) / (1.0 + d)]])

    low, high = _population_box()
    return MapSystem(dimension=2, func=func, jac=jac, name="streipert_pp",
                     params={'r': r, 'K': K, 'alpha': alpha, 'gamma': gamma, 'd': d},
                     domain_low=low, domain_high=high)


# === Epidemic ===

def epidemic(b: float, p: float, alpha: float) -> MapSystem:
    """
    Reduced SI model with vaccination

        S(t+1) = (1 - p) S - alpha S I + b
        I(t+1) = alpha S I
    """

    def func(s):
        S = s[..., 0]
        I = s[..., 1]
        infections = alpha * S * I
        return np.stack([(1.0 - p) * S - infections + b, infections], axis=-1)

    def jac(s):
        S, I = s
        return np.array([[1.0 - p - alpha * I, -alpha * S],
                         [alpha * I, alpha * S]])

    low, high = _population_box()
    return MapSystem(dimension=2, func=func, jac=jac, name="epidemic",
                     params={'b': b, 'p': p, 'alpha': alpha},
                     domain_low=low, domain_high=high)


def epidemic_full_step(state, b: float, p: float, alpha: float) -> np.ndarray:
    """
    One step of the three-compartment (S, I, R) system

    The removed class does not feed back into S and I; this step exists for
    the population-conservation diagnostic.
    """
    s = np.asarray(state, dtype=float)
    S = s[..., 0]
    I = s[..., 1]
    R = s[..., 2]
    infections = alpha * S * I
    return np.stack([(1.0 - p) * S - infections + b,
                     infections,
                     R + I - b + p * S], axis=-1)
