#!/usr/bin/env python3
"""
Tests for the dense spectral helpers
"""
import math

import numpy as np
import pytest

from transientscope.linalg import (
    ConvergenceFailure, DefinitenessKind, definiteness, eigen, nonneg_irreducible,
    spectral_norm, spectral_radius,
)


def test_eigenvalues_sorted_by_modulus():
    summary = eigen(np.diag([0.5, -3.0, 2.0]))
    np.testing.assert_allclose(summary.moduli, [3.0, 2.0, 0.5])
    assert summary.spectral_radius == pytest.approx(3.0)
    assert summary.spectral_norm == pytest.approx(3.0)


def test_perron_pair_of_positive_matrix():
    summary = eigen([[0.0, 1.5], [1.3, 0.0]])
    rho = math.sqrt(1.95)

    assert summary.spectral_radius == pytest.approx(rho, abs=1e-12)
    lam, w = max(summary.real_eigenpairs, key=lambda pair: pair[0])
    assert lam == pytest.approx(rho, abs=1e-12)
    assert np.all(w > 0)
    assert np.linalg.norm(w) == pytest.approx(1.0)
    np.testing.assert_allclose(w, np.array([math.sqrt(1.5), math.sqrt(1.3)]) / math.sqrt(2.8),
                               atol=1e-12)


def test_rotation_has_no_real_pairs():
    summary = eigen([[0.0, -2.0], [2.0, 0.0]])
    assert summary.real_eigenpairs == ()
    assert summary.spectral_radius == pytest.approx(2.0)
    # the complex pair spans the whole plane
    assert summary.unstable_basis().shape == (2, 2)


def test_unstable_pairs_and_basis():
    summary = eigen(np.diag([1.5, 0.5]))
    pairs = summary.unstable_pairs()
    assert len(pairs) == 1
    assert pairs[0][0] == pytest.approx(1.5)
    basis = summary.unstable_basis()
    assert basis.shape == (2, 1)
    assert abs(basis[0, 0]) == pytest.approx(1.0)


def test_spectral_norm_of_nonnormal_matrix():
    A = np.array([[1.0, 10.0], [0.0, 1.0]])
    assert spectral_norm(A) == pytest.approx(np.linalg.norm(A, 2), rel=1e-12)
    assert spectral_radius(A) == pytest.approx(1.0)
    assert spectral_norm(np.zeros((3, 3))) == 0.0


def test_eigen_rejects_bad_input():
    with pytest.raises(ConvergenceFailure):
        eigen([[np.nan, 0.0], [0.0, 1.0]])
    with pytest.raises(ValueError):
        eigen(np.ones((2, 3)))
    with pytest.raises(ValueError):
        eigen(np.eye(65))


@pytest.mark.parametrize("matrix, kind", [
    ([[2.0, 0.0], [0.0, 1.0]], DefinitenessKind.PositiveDefinite),
    ([[-2.0, 0.0], [0.0, -1.0]], DefinitenessKind.NegativeDefinite),
    ([[1.0, 0.0], [0.0, -1.0]], DefinitenessKind.Indefinite),
    ([[1.0, 0.0], [0.0, 0.0]], DefinitenessKind.Degenerate),
    ([[0.0, 0.0], [0.0, 0.0]], DefinitenessKind.Degenerate),
    ([[6.0]], DefinitenessKind.PositiveDefinite),
])
def test_definiteness(matrix, kind):
    assert definiteness(matrix).kind is kind


def test_nonneg_irreducible():
    assert nonneg_irreducible([[0.0, 1.5], [1.3, 0.0]])
    assert not nonneg_irreducible([[1.0, 1.0], [0.0, 1.0]])
    assert not nonneg_irreducible([[0.0, -1.0], [1.0, 0.0]])
    cycle = np.roll(np.eye(4), 1, axis=1)
    assert nonneg_irreducible(cycle)
