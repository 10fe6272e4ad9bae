#!/usr/bin/env python3
"""
Tests for CSV tables and JSON records
"""
import numpy as np

from transientscope.core import iterate, transient_time
from transientscope.criteria import classify, fixed_point_at
from transientscope.formats import (
    format_real, parse_real, read_json, read_polylines, read_profile, read_rows,
    read_scaling, read_trajectory, read_verdicts, transient_time_record, verdict_record,
    write_json, write_polylines, write_profile, write_rows, write_scaling,
    write_trajectory, write_transient_points,
)
from transientscope.portrait import Polyline
from transientscope.search import (
    ScalingRow, TransientPointHit, escape_profile, honeymoon_scaling,
)
from transientscope.zoo import resolve_observable


def test_real_formatting():
    assert format_real(None) == ""
    assert parse_real("") is None
    for value in (0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.005):
        assert parse_real(format_real(value)) == value


def test_cells(tmp_path):
    path = write_rows(tmp_path / "rows.csv", ['a', 'b', 'c', 'd'],
                      [[True, None, 3, 0.5], [np.bool_(False), "x", np.int64(7), np.float64(2.0)]])
    header, rows = read_rows(path)
    assert header == ['a', 'b', 'c', 'd']
    assert rows == [['true', '', '3', '0.5'], ['false', 'x', '7', '2']]


def test_trajectory_round_trip_is_exact(example1, tmp_path):
    system, entry, v = example1
    traj = iterate(system, (1e-3, 0.0), 120, v)
    path = write_trajectory(tmp_path / "traj.csv", traj)

    header, rows = read_rows(path)
    assert header == ['t', 'x1', 'x2', 'v', 'delta_v']
    assert len(rows) == 121
    assert rows[-1][-1] == ""

    states, values, deltas = read_trajectory(path)
    np.testing.assert_array_equal(states, traj.states)
    np.testing.assert_array_equal(values, traj.observable_values)
    np.testing.assert_array_equal(deltas, traj.deltas)


def test_profile_table(example1, tmp_path):
    system, entry, v = example1
    profile = escape_profile(system, v, (0.0, 0.0), (1e-2, 1e-3), horizon=200, samples=8, seed=0)
    path = write_profile(tmp_path / "profile.csv", profile)
    assert read_rows(path)[0] == ['radius', 'escape_sup']
    assert read_profile(path) == profile.rows()


def test_scaling_table(epidemic, tmp_path):
    system, entry = epidemic
    v = resolve_observable(entry, 'I')
    rows = honeymoon_scaling(system, v, (2.4e4, 0.0), (0.0, 1.0), [1e-2, 1e-3], 50.0, 100_000)
    rows.append(ScalingRow(1e-9, error="orbit failed"))
    path = write_scaling(tmp_path / "scaling.csv", rows)

    back = read_scaling(path)
    assert [e for e, _, _ in back] == [row.epsilon for row in rows]
    assert [t for _, _, t in back] == [row.time for row in rows]
    assert back[-1] == (1e-9, "NonFiniteState", None)


def test_transient_points_table(tmp_path):
    hits = [TransientPointHit((0.5, 0.25), 12), TransientPointHit((0.125, 1.0), 40)]
    path = write_transient_points(tmp_path / "points.csv", hits, 2)
    header, rows = read_rows(path)
    assert header == ['x1', 'x2', 'time']
    assert rows == [['0.5', '0.25', '12'], ['0.125', '1', '40']]


def test_polylines_keep_order(tmp_path):
    lines = [
        Polyline("PreyN.0", np.array([[0.0, 0.5], [1.0, 0.0]])),
        Polyline("PredatorD.0", np.array([[0.25, 0.0], [0.25, 0.8], [0.25, 0.9]])),
    ]
    path = write_polylines(tmp_path / "lines.csv", lines)
    back = read_polylines(path)
    assert [cid for cid, _ in back] == ["PreyN.0", "PredatorD.0"]
    np.testing.assert_array_equal(back[1][1], lines[1].points)


def test_verdict_records(predator_prey, tmp_path):
    system, entry = predator_prey
    v = resolve_observable(entry, 'x')
    fp = fixed_point_at(system, entry.known_fixed_points['E0'])
    verdict = classify(system, fp, v, use_empirical=False)
    path = write_json(tmp_path / "verdicts.json",
                      [verdict_record('streipert_pp', 'x', fp, verdict, label='E0')])

    record = read_json(path)[0]
    assert record['label'] == 'E0'
    assert record['fixed_point']['location'] == [0.0, 0.0]
    assert record['verdict']['decision'] == 'Center'
    again = read_verdicts(path)[0]
    assert again.criterion is verdict.criterion
    assert again.certificate == verdict.certificate


def test_transient_time_record(example1):
    system, entry, v = example1
    result = transient_time(system, v, (1e-3, 0.0), 0.005, 1_000_000)
    record = transient_time_record(result, (1e-3, 0.0), 'IsTransientPoint', T=10)
    assert record['status'] == 'Finite'
    assert record['time'] == result.time
    assert record['initial_state'] == [1e-3, 0.0]
    assert record['classification'] == 'IsTransientPoint'

    plain = transient_time_record(result, (1e-3, 0.0))
    assert 'classification' not in plain
