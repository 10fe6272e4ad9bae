#!/usr/bin/env python3
"""
Tests for fixed-point search and linearization
"""
import numpy as np
import pytest

from transientscope.criteria import Stability, find_fixed_points, fixed_point_at
from transientscope.zoo import build


def sorted_real(fp):
    return sorted(float(lam.real) for lam in fp.spectral.eigenvalues)


def test_predator_prey_spectra(predator_prey):
    system, entry = predator_prey
    e0 = fixed_point_at(system, entry.known_fixed_points['E0'])
    ek = fixed_point_at(system, entry.known_fixed_points['E_K'])

    np.testing.assert_allclose(sorted_real(e0), [0.5, 1.5], atol=1e-9)
    np.testing.assert_allclose(sorted_real(ek), [2.0 / 3.0, 2.5], atol=1e-9)
    assert e0.stability is Stability.Unstable
    assert ek.is_fixed


def test_epidemic_spectra(epidemic):
    system, entry = epidemic
    e0 = fixed_point_at(system, entry.known_fixed_points['E0'])
    r0 = 4e-5 * 115.0 / 0.003

    np.testing.assert_allclose(sorted_real(e0), [0.997, r0], atol=1e-9)
    assert entry.derived['R0'] == pytest.approx(r0)


def test_epidemic_endemic_point_is_stable(epidemic):
    system, entry = epidemic
    np.testing.assert_allclose(entry.known_fixed_points['E_star'], (25000.0, 40.0))
    e_star = fixed_point_at(system, entry.known_fixed_points['E_star'])
    assert e_star.is_fixed
    assert e_star.stability is Stability.Stable


def test_find_predator_prey_fixed_points(predator_prey):
    system, entry = predator_prey
    found = find_fixed_points(system, [[0.0, 2.0], [0.0, 1.0]], [5, 5])
    locations = [tuple(fp.location) for fp in found]

    assert locations == sorted(locations)
    known = [np.array(p) for p in entry.known_fixed_points.values()]
    for fp in found:
        assert fp.is_fixed
        assert any(np.linalg.norm(fp.location - p) < 1e-9 for p in known)
    for name in ('E0', 'E_K'):
        point = np.array(entry.known_fixed_points[name])
        assert any(np.linalg.norm(fp.location - point) < 1e-9 for fp in found)


def test_find_epidemic_fixed_points(epidemic):
    system, entry = epidemic
    found = find_fixed_points(system, [[1e4, 5e4], [0.0, 500.0]], [5, 5])
    for name in ('E0', 'E_star'):
        point = np.array(entry.known_fixed_points[name])
        assert any(np.linalg.norm(fp.location - point) <= 1e-6 * np.linalg.norm(point)
                   for fp in found)


def test_find_fixed_points_of_linear_map():
    system, entry = build('linear_custom', {'matrix': [[0.0, 1.5], [1.3, 0.0]]})
    found = find_fixed_points(system, [[-1.0, 1.0], [-1.0, 1.0]], [3, 3])
    assert len(found) == 1
    np.testing.assert_allclose(found[0].location, [0.0, 0.0], atol=1e-12)


def test_example1_origin_is_not_fixed(example1):
    system, entry, v = example1
    fp = fixed_point_at(system, (0.0, 0.0))
    assert not fp.is_fixed
    assert fp.residual == pytest.approx(0.1)


def test_find_fixed_points_validates_grid(predator_prey):
    system, entry = predator_prey
    with pytest.raises(ValueError):
        find_fixed_points(system, [[0.0, 1.0], [0.0, 1.0]], [1, 5])
    with pytest.raises(ValueError):
        find_fixed_points(system, [[0.0, 1.0], [0.0, 1.0]], [5])
