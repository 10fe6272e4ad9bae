#!/usr/bin/env python3
"""
CSV codecs

Writers and readers for every tabular artifact. Reals are written with 17
significant digits so that every value re-parses to the identical binary64
number; missing values are empty fields.
"""
import csv
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..core.dynamics import Trajectory


def format_real(value: Optional[float]) -> str:
    if value is None:
        return ""
    return format(float(value), '.17g')


def parse_real(text: str) -> Optional[float]:
    return None if text == "" else float(text)


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_real(value)
    return str(value)


def write_rows(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    """Write a header and rows; cells go through format_cell"""
    path = Path(path)
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(c) for c in row])
    return path


def read_rows(path) -> Tuple[List[str], List[List[str]]]:
    with open(path, 'r', newline='') as f:
        reader = csv.reader(f)
        header = next(reader, [])
        return header, [row for row in reader]


# === Trajectories ===

def trajectory_header(dimension: int) -> List[str]:
    return ['t'] + [f"x{i + 1}" for i in range(dimension)] + ['v', 'delta_v']


def write_trajectory(path, trajectory: Trajectory) -> Path:
    """One row per state; delta_v is empty on the final row"""
    states = trajectory.states
    steps = trajectory.steps
    rows = []
    for t in range(steps + 1):
        delta = trajectory.deltas[t] if t < steps else None
        rows.append([t] + [float(c) for c in states[t]] + [float(trajectory.observable_values[t]), delta])
    return write_rows(path, trajectory_header(states.shape[1]), rows)


def read_trajectory(path) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(states, observable_values, deltas) from a trajectory CSV"""
    header, rows = read_rows(path)
    n = len(header) - 3
    states = np.array([[float(c) for c in row[1:1 + n]] for row in rows])
    values = np.array([float(row[1 + n]) for row in rows])
    deltas = np.array([float(row[2 + n]) for row in rows[:-1]])
    return states, values, deltas


# === Empirical search ===

def write_profile(path, profile) -> Path:
    return write_rows(path, ['radius', 'escape_sup'], profile.rows())


def read_profile(path) -> List[Tuple[float, float]]:
    _, rows = read_rows(path)
    return [(float(r), float(s)) for r, s in rows]


def write_scaling(path, rows) -> Path:
    return write_rows(path, ['epsilon', 'status', 'time'],
                      ([row.epsilon, row.status, row.time] for row in rows))


def read_scaling(path) -> List[Tuple[float, str, Optional[int]]]:
    _, rows = read_rows(path)
    return [(float(e), status, None if t == "" else int(t)) for e, status, t in rows]


def write_transient_points(path, hits, dimension: int) -> Path:
    header = [f"x{i + 1}" for i in range(dimension)] + ['time']
    return write_rows(path, header, (list(hit.point) + [hit.time] for hit in hits))


# === Portraits ===

def write_polylines(path, polylines) -> Path:
    rows = []
    for line in polylines:
        for x, y in line.points:
            rows.append([line.curve_id, float(x), float(y)])
    return write_rows(path, ['curve_id', 'x', 'y'], rows)


def read_polylines(path) -> List[Tuple[str, np.ndarray]]:
    _, rows = read_rows(path)
    curves: List[Tuple[str, List[Tuple[float, float]]]] = []
    for curve_id, x, y in rows:
        if not curves or curves[-1][0] != curve_id:
            curves.append((curve_id, []))
        curves[-1][1].append((float(x), float(y)))
    return [(cid, np.array(pts)) for cid, pts in curves]


def write_signs(path, signs) -> Path:
    header = ['i', 'j', 'cx', 'cy', 'sign_L', 'sign_J']
    if signs is None:
        return write_rows(path, header, [])
    rows = ([int(i), int(j), float(c[0]), float(c[1]), int(sl), int(sj)]
            for i, j, c, sl, sj in zip(signs.i, signs.j, signs.centers, signs.sign_L, signs.sign_J))
    return write_rows(path, header, rows)


def write_arrows(path, arrows) -> Path:
    header = ['x', 'y', 'sx', 'sy']
    if arrows is None:
        return write_rows(path, header, [])
    rows = ([float(p[0]), float(p[1]), int(sx), int(sy)]
            for p, sx, sy in zip(arrows.points, arrows.sx, arrows.sy))
    return write_rows(path, header, rows)
