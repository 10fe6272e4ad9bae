#!/usr/bin/env python3
"""
Zero-set tracing on a rectangular grid

Sign changes along grid edges are refined by bisection and linked cell by
cell into polylines (marching squares). Saddle cells are resolved with the
field value at the cell center. Nodes where the field is not finite mask
their edges and cells.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

BISECTION_STEPS = 60

Key = Tuple[str, int, int]


@dataclass(frozen=True, eq=False)
class Polyline:
    curve_id: str
    points: np.ndarray

    @property
    def closed(self) -> bool:
        return len(self.points) > 2 and bool(np.all(self.points[0] == self.points[-1]))


def grid_axes(region, grid) -> Tuple[np.ndarray, np.ndarray]:
    (x0, x1), (y0, y1) = np.asarray(region, dtype=float).reshape(2, 2)
    nx, ny = (int(g) for g in grid)
    if nx < 2 or ny < 2:
        raise ValueError(f"grid needs at least 2 nodes per axis, got {list(grid)}")
    if not (x0 < x1 and y0 < y1):
        raise ValueError(f"degenerate region {region}")
    return np.linspace(x0, x1, nx), np.linspace(y0, y1, ny)


def _bisect(field: Callable[[np.ndarray], np.ndarray], a: np.ndarray, b: np.ndarray,
            a_positive: np.ndarray) -> np.ndarray:
    """Refine crossings between a (sign a_positive) and b, all edges at once"""
    a = a.copy()
    b = b.copy()
    for _ in range(BISECTION_STEPS):
        m = 0.5 * (a + b)
        with np.errstate(all='ignore'):
            fm = np.asarray(field(m), dtype=float)
        same = (fm >= 0) == a_positive
        a = np.where(same[:, None], m, a)
        b = np.where(same[:, None], b, m)
    return 0.5 * (a + b)


def trace_zero_set(field: Callable[[np.ndarray], np.ndarray], region: Sequence[Sequence[float]],
                   grid: Sequence[int], label: str = "curve") -> List[Polyline]:
    """
    Polylines approximating {p in region : field(p) = 0}

    Args:
        field: Vectorized scalar field, (..., 2) -> (...)
        region: ((x_low, x_high), (y_low, y_high))
        grid: (nx, ny) node counts
        label: Prefix of the curve ids

    Returns:
        Polylines with ids "<label>.<k>"; empty when the field never changes
        sign on the grid
    """
    xs, ys = grid_axes(region, grid)
    nx, ny = len(xs), len(ys)
    X, Y = np.meshgrid(xs, ys)
    nodes = np.stack([X, Y], axis=-1)
    with np.errstate(all='ignore'):
        F = np.asarray(field(nodes), dtype=float)
    finite = np.isfinite(F)
    positive = F >= 0

    # horizontal edges (j, i)-(j, i+1) and vertical edges (j, i)-(j+1, i)
    edges: Dict[Key, Tuple[Tuple[int, int], Tuple[int, int]]] = {}
    for j in range(ny):
        for i in range(nx - 1):
            edges[('h', j, i)] = ((j, i), (j, i + 1))
    for j in range(ny - 1):
        for i in range(nx):
            edges[('v', j, i)] = ((j, i), (j + 1, i))

    crossing_keys = []
    segments: List[Tuple[Key, Key]] = []
    for key, (p, q) in edges.items():
        if not (finite[p] and finite[q]):
            continue
        if F[p] == 0 and F[q] == 0:
            segments.append((('n',) + p, ('n',) + q))
        elif positive[p] != positive[q]:
            crossing_keys.append(key)

    points: Dict[Key, np.ndarray] = {}
    if crossing_keys:
        a = np.array([nodes[edges[k][0]] for k in crossing_keys])
        b = np.array([nodes[edges[k][1]] for k in crossing_keys])
        a_pos = np.array([positive[edges[k][0]] for k in crossing_keys])
        refined = _bisect(field, a, b, a_pos)
        for k, pt in zip(crossing_keys, refined):
            points[k] = pt
    for key_a, key_b in segments:
        for key in (key_a, key_b):
            points[key] = nodes[key[1], key[2]]

    crossing = set(crossing_keys)
    for j in range(ny - 1):
        for i in range(nx - 1):
            corners = [(j, i), (j, i + 1), (j + 1, i + 1), (j + 1, i)]
            if not all(finite[c] for c in corners):
                continue
            bottom, right, top, left = ('h', j, i), ('v', j, i + 1), ('h', j + 1, i), ('v', j, i)
            cut = [e for e in (bottom, right, top, left) if e in crossing]
            if len(cut) == 2:
                segments.append((cut[0], cut[1]))
            elif len(cut) == 4:
                center = 0.5 * (nodes[j, i] + nodes[j + 1, i + 1])
                with np.errstate(all='ignore'):
                    fc = float(np.asarray(field(center[None, :]), dtype=float)[0])
                if (fc >= 0) == positive[j, i]:
                    segments.append((bottom, right))
                    segments.append((top, left))
                else:
                    segments.append((bottom, left))
                    segments.append((top, right))

    chains = _link(segments)
    polylines = [Polyline(f"{label}.{k}", np.array([points[key] for key in chain]))
                 for k, chain in enumerate(chains)]
    logger.debug("%s: %d crossings linked into %d polylines", label, len(crossing_keys), len(polylines))
    return polylines


def _link(segments: List[Tuple[Key, Key]]) -> List[List[Key]]:
    """Join segments sharing endpoints; open chains first, then cycles"""
    adjacency: Dict[Key, List[int]] = {}
    for s, (a, b) in enumerate(segments):
        adjacency.setdefault(a, []).append(s)
        adjacency.setdefault(b, []).append(s)
    used = [False] * len(segments)

    def walk(start: Key) -> List[Key]:
        path = [start]
        current = start
        while True:
            nxt = next((s for s in adjacency[current] if not used[s]), None)
            if nxt is None:
                return path
            used[nxt] = True
            a, b = segments[nxt]
            current = b if a == current else a
            path.append(current)

    chains = []
    for key in sorted(adjacency):
        if len(adjacency[key]) % 2 == 1 and any(not used[s] for s in adjacency[key]):
            chains.append(walk(key))
    for s in range(len(segments)):
        if not used[s]:
            chains.append(walk(segments[s][0]))
    return chains
