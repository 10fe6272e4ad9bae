#!/usr/bin/env python3
"""
Tests for finite-difference Jacobians, gradients and Hessians
"""
import numpy as np
import pytest

from transientscope.core import DomainEscape, MapSystem, Observable
from transientscope.linalg import delta_v_gradient, gradient, hessian_delta_v, jacobian
from transientscope.zoo import build, resolve_observable


@pytest.mark.parametrize("model_id, point", [
    ('example1', (0.3, -0.2)),
    ('example2', (0.4, 0.1)),
    ('streipert_pp', (0.6, 0.3)),
])
def test_finite_difference_jacobian_matches_analytic(model_id, point):
    system, entry = build(model_id)
    analytic = jacobian(system, point)
    numeric = jacobian(system, point, analytic=False)
    np.testing.assert_allclose(numeric, analytic, atol=1e-8)


def test_epidemic_jacobian_at_scale(epidemic):
    system, entry = epidemic
    point = (25000.0, 40.0)
    np.testing.assert_allclose(jacobian(system, point, analytic=False), jacobian(system, point),
                               rtol=1e-6, atol=1e-6)


def test_gradient_of_nonlinear_observable():
    v = Observable(func=lambda s: s[..., 0] ** 2 * s[..., 1], name="x2y")
    np.testing.assert_allclose(gradient(v, (1.5, 2.0)), [6.0, 2.25], rtol=1e-8)


def test_delta_v_gradient_chain_rule_agrees_with_differences(predator_prey):
    system, entry = predator_prey
    v = resolve_observable(entry, 'y')
    point = np.array([0.7, 0.2])
    chain = delta_v_gradient(system, v, point)

    plain = MapSystem(dimension=2, func=system.func, name="pp_no_jac",
                      domain_low=system.domain_low, domain_high=system.domain_high)
    numeric = delta_v_gradient(plain, v, point)
    np.testing.assert_allclose(chain, numeric, atol=1e-8)


def test_hessian_of_cubic_square():
    system, entry = build('cubic1d')
    v = resolve_observable(entry, 'x^2')
    H = hessian_delta_v(system, v, (0.0,))
    assert H.shape == (1, 1)
    assert H[0, 0] == pytest.approx(6.0, abs=1e-4)


def test_hessian_is_symmetric(example1):
    system, entry, v = example1
    H = hessian_delta_v(system, v, (0.0, 0.0))
    np.testing.assert_array_equal(H, H.T)
    # Δx = -h x y has the indefinite Hessian [[0, -h], [-h, 0]]
    np.testing.assert_allclose(H, [[0.0, -0.1], [-0.1, 0.0]], atol=1e-8)


def test_hessian_is_exactly_symmetric_off_axis(predator_prey):
    system, entry = predator_prey
    v = resolve_observable(entry, 'x')
    H = hessian_delta_v(system, v, (0.3, 0.2))
    np.testing.assert_array_equal(H, H.T)
    assert H[0, 1] != 0.0


def test_probes_outside_domain_raise(predator_prey):
    system, entry = predator_prey
    plain = MapSystem(dimension=2, func=system.func, name="pp_no_jac",
                      domain_low=system.domain_low, domain_high=system.domain_high)
    with pytest.raises(DomainEscape):
        jacobian(plain, (0.0, 0.0))


def test_step_must_be_positive(example1):
    system, entry, v = example1
    with pytest.raises(ValueError):
        jacobian(system, (0.1, 0.1), step=0.0, analytic=False)
