#!/usr/bin/env python3
"""
Tests for zero-set tracing and augmented phase portraits
"""
import numpy as np
import pytest

from transientscope.portrait import (
    NullclineKind, build_portrait, direction_field, export_portrait, next_iterate_field,
    next_iterate_operator, nullcline_kinds, side_function, sign_field, trace_zero_set,
)
from transientscope.formats import read_polylines, read_rows
from transientscope.zoo import build


def prey_nullcline(x):
    return 0.5 * (1.0 - x)


# === Zero sets ===

def test_trace_vertical_line():
    lines = trace_zero_set(lambda s: s[..., 0] - 0.33, [[0.0, 1.0], [0.0, 1.0]], (11, 11), "L")
    assert len(lines) == 1
    assert lines[0].curve_id == "L.0"
    assert len(lines[0].points) == 11
    np.testing.assert_allclose(lines[0].points[:, 0], 0.33, atol=1e-12)


def test_trace_circle_is_closed():
    lines = trace_zero_set(lambda s: s[..., 0] ** 2 + s[..., 1] ** 2 - 0.25,
                           [[-1.0, 1.0], [-1.0, 1.0]], (41, 41), "c")
    assert len(lines) == 1
    assert lines[0].closed
    np.testing.assert_allclose(np.linalg.norm(lines[0].points, axis=1), 0.5, atol=1e-9)


def test_trace_without_sign_change():
    assert trace_zero_set(lambda s: s[..., 0] + 2.0, [[0.0, 1.0], [0.0, 1.0]], (5, 5)) == []


# === Predator-prey operators ===

def test_next_iterate_on_prey_nullcline_midpoint(predator_prey):
    system, entry = predator_prey
    value = next_iterate_operator(system, NullclineKind.PreyN, (0.5, prey_nullcline(0.5)))
    assert value == pytest.approx(0.125, abs=1e-9)


def test_next_iterate_positive_between_d_and_k(predator_prey):
    system, entry = predator_prey
    D = entry.derived['D']
    xs = np.linspace(D, 1.0, 52)[1:-1]
    field = next_iterate_field(system, NullclineKind.PreyN)
    values = field(np.stack([xs, prey_nullcline(xs)], axis=-1))
    assert np.all(values > 0)


def test_predator_nullcline_is_vertical(predator_prey):
    system, entry = predator_prey
    assert nullcline_kinds(system) == (NullclineKind.PreyN, NullclineKind.PredatorD)
    side = side_function(system, NullclineKind.PredatorD)
    assert side(np.array([0.25, 0.7])) == pytest.approx(0.0)


def test_sign_prediction(predator_prey):
    """The operator sign says on which side of the nullcline f(p) lands"""
    system, entry = predator_prey
    rng = np.random.default_rng(11)
    points = rng.uniform([0.0, 0.0], [1.2, 0.8], size=(200, 2))
    for kind in nullcline_kinds(system):
        predicted = np.sign(next_iterate_field(system, kind)(points))
        actual = np.sign(side_function(system, kind)(system.evaluate(points)))
        assert np.mean(predicted == actual) >= 0.995


def test_root_curves_are_zeros_of_the_operator(predator_prey):
    system, entry = predator_prey
    data = build_portrait(system, [[0.0, 1.2], [0.0, 0.8]], grid=(40, 40), arrow_grid=(8, 8))
    assert data.root_curves
    for line in data.root_curves:
        kind = NullclineKind(line.curve_id.split(':')[1].split('.')[0])
        values = next_iterate_field(system, kind)(line.points)
        np.testing.assert_allclose(values, 0.0, atol=1e-6)


def test_nullcline_curves_follow_closed_forms(predator_prey):
    system, entry = predator_prey
    data = build_portrait(system, [[0.0, 1.2], [0.0, 0.8]], grid=(30, 30), arrow_grid=(6, 6))
    for line in data.nullclines:
        if line.curve_id.startswith("PredatorD"):
            np.testing.assert_allclose(line.points[:, 0], 0.25, atol=1e-9)
        else:
            np.testing.assert_allclose(line.points[:, 1], prey_nullcline(line.points[:, 0]),
                                       atol=1e-9)


# === Fields ===

def test_direction_field_signs(predator_prey):
    system, entry = predator_prey
    arrows = direction_field(system, [[0.1, 0.9], [0.1, 0.5]], (4, 3))
    assert arrows.points.shape == (12, 2)
    assert set(np.unique(arrows.sx)) <= {-1, 1}
    step = system.evaluate(arrows.points) - arrows.points
    np.testing.assert_array_equal(arrows.sx, np.where(step[:, 0] >= 0, 1, -1))


def test_sign_field_cells(predator_prey):
    system, entry = predator_prey
    signs = sign_field(system, [[0.0, 1.0], [0.0, 1.0]], (5, 4))
    assert len(signs.centers) == 4 * 3
    assert signs.i.max() == 3 and signs.j.max() == 2


def test_generic_planar_map_uses_increments(example2):
    system, entry = example2
    assert nullcline_kinds(system) == (NullclineKind.IncrementX, NullclineKind.IncrementY)
    data = build_portrait(system, [[-1.0, 1.0], [-1.0, 1.0]], grid=(20, 20), arrow_grid=(5, 5))
    assert data.root_curves == []
    assert data.nullclines


def test_portrait_requires_planar_map():
    system, entry = build('cubic1d')
    with pytest.raises(ValueError):
        nullcline_kinds(system)


def test_epidemic_portrait_has_guard_curve():
    system, entry = build('epidemic', {'b': 1.0, 'p': 0.3, 'alpha': 0.8})
    data = build_portrait(system, [[0.0, 5.0], [0.0, 3.0]], grid=(40, 40), arrow_grid=(6, 6))
    assert data.guard_curves
    assert all(line.curve_id.startswith("guard:S_next") for line in data.guard_curves)
    # guard: S(t+1) = (1 - p) S - alpha S I + b = 0
    for line in data.guard_curves:
        S, I = line.points[:, 0], line.points[:, 1]
        np.testing.assert_allclose(0.7 * S - 0.8 * S * I + 1.0, 0.0, atol=1e-6)


def test_export_writes_four_layers_and_svg(predator_prey, tmp_path):
    system, entry = predator_prey
    data = build_portrait(system, [[0.0, 1.2], [0.0, 0.8]], grid=(20, 20), arrow_grid=(5, 5))
    paths = export_portrait(data, tmp_path / "pp")

    names = sorted(p.name for p in paths)
    assert names == ["pp.arrows.csv", "pp.nullclines.csv", "pp.rootcurves.csv",
                     "pp.signs.csv", "pp.svg"]
    header, rows = read_rows(tmp_path / "pp.signs.csv")
    assert header == ['i', 'j', 'cx', 'cy', 'sign_L', 'sign_J']
    assert len(rows) == 19 * 19
    curves = read_polylines(tmp_path / "pp.nullclines.csv")
    assert [cid for cid, _ in curves] == [line.curve_id for line in data.nullclines]
    svg = (tmp_path / "pp.svg").read_text()
    assert svg.lstrip().startswith("<?xml")
    assert 'viewBox="0 0 800 600"' in svg
