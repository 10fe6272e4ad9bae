#!/usr/bin/env python3
"""
Augmented phase portraits of planar maps

Nullclines, next-iterate operators and their root curves, cell sign fields
and direction fields. A next-iterate operator evaluates the signed side
function of a nullcline at the next iterate f(p): positive means f(p) lies
above (or right of) the nullcline.

Predator-prey nullclines:  y = N(x) = (r/alpha)(1 - x/K)  and  x = D = d/gamma
Epidemic nullclines:       I = h(S) = (b - pS)/(alpha S)   and  S = 1/alpha
Other planar maps get the zero sets of the raw increments Δx, Δy.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.dynamics import MapSystem, NonFiniteState
from .contours import Polyline, grid_axes, trace_zero_set

logger = logging.getLogger(__name__)

POLE_CLEARANCE = 1e-6


class NullclineKind(Enum):
    PreyN = "PreyN"
    PredatorD = "PredatorD"
    SusceptibleH = "SusceptibleH"
    InfectedLine = "InfectedLine"
    IncrementX = "IncrementX"
    IncrementY = "IncrementY"


_MODEL_KINDS = {
    'streipert_pp': (NullclineKind.PreyN, NullclineKind.PredatorD),
    'epidemic': (NullclineKind.SusceptibleH, NullclineKind.InfectedLine),
}

Field = Callable[[np.ndarray], np.ndarray]


def nullcline_kinds(system: MapSystem) -> Tuple[NullclineKind, NullclineKind]:
    """The (horizontal-component, vertical-component) nullclines of a planar map"""
    if system.dimension != 2:
        raise ValueError(f"{system.name}: phase portraits need a planar map, got n={system.dimension}")
    return _MODEL_KINDS.get(system.name, (NullclineKind.IncrementX, NullclineKind.IncrementY))


def side_function(system: MapSystem, kind: NullclineKind) -> Field:
    """Signed distance-like function whose zero set is the nullcline"""
    p = system.params
    if kind is NullclineKind.PreyN:
        r, K, alpha = p['r'], p['K'], p['alpha']
        return lambda s: s[..., 1] - (r / alpha) * (1.0 - s[..., 0] / K)
    if kind is NullclineKind.PredatorD:
        D = p['d'] / p['gamma']
        return lambda s: s[..., 0] - D
    if kind is NullclineKind.SusceptibleH:
        b, vacc, alpha = p['b'], p['p'], p['alpha']
        return lambda s: s[..., 1] - (b - vacc * s[..., 0]) / (alpha * s[..., 0])
    if kind is NullclineKind.InfectedLine:
        alpha = p['alpha']
        return lambda s: s[..., 0] - 1.0 / alpha
    component = 0 if kind is NullclineKind.IncrementX else 1
    return lambda s: system.evaluate(s)[..., component] - s[..., component]


def _check_kind(system: MapSystem, kind: NullclineKind):
    if kind not in nullcline_kinds(system):
        raise ValueError(f"{system.name} has no {kind.value} nullcline")


def next_iterate_field(system: MapSystem, kind: NullclineKind) -> Field:
    """Vectorized next-iterate operator p -> side(f(p))"""
    _check_kind(system, kind)
    side = side_function(system, kind)
    return lambda s: side(system.evaluate(s))


def next_iterate_operator(system: MapSystem, kind: NullclineKind, point) -> float:
    """
    Signed side of the nullcline on which f(point) lands

    Raises:
        NonFiniteState: f(point) or the side function is not finite
    """
    x = np.asarray(point, dtype=float).reshape(1, 2)
    with np.errstate(all='ignore'):
        value = float(next_iterate_field(system, kind)(x)[0])
    if not np.isfinite(value):
        raise NonFiniteState(f"{system.name}: next-iterate operator {kind.value} is not finite "
                             f"at {list(x[0])}", step=1)
    return value


@dataclass(frozen=True, eq=False)
class DirectionField:
    """Increments at grid nodes; sx, sy are display signs with 0 shown as +1"""
    points: np.ndarray
    dx: np.ndarray
    dy: np.ndarray

    @property
    def sx(self) -> np.ndarray:
        return np.where(self.dx >= 0, 1, -1)

    @property
    def sy(self) -> np.ndarray:
        return np.where(self.dy >= 0, 1, -1)


@dataclass(frozen=True, eq=False)
class SignField:
    """Signs of the two next-iterate operators at cell centers"""
    i: np.ndarray
    j: np.ndarray
    centers: np.ndarray
    sign_L: np.ndarray
    sign_J: np.ndarray


def direction_field(system: MapSystem, region, grid) -> DirectionField:
    """sign(Δx), sign(Δy) at every node of an (nx, ny) grid"""
    xs, ys = grid_axes(region, grid)
    X, Y = np.meshgrid(xs, ys)
    points = np.stack([X.ravel(), Y.ravel()], axis=-1)
    step = system.evaluate(points) - points
    return DirectionField(points=points, dx=step[:, 0], dy=step[:, 1])


def sign_field(system: MapSystem, region, grid) -> SignField:
    xs, ys = grid_axes(region, grid)
    cx = 0.5 * (xs[:-1] + xs[1:])
    cy = 0.5 * (ys[:-1] + ys[1:])
    CX, CY = np.meshgrid(cx, cy)
    J_idx, I_idx = np.meshgrid(np.arange(len(cy)), np.arange(len(cx)), indexing='ij')
    centers = np.stack([CX.ravel(), CY.ravel()], axis=-1)
    first, second = nullcline_kinds(system)
    with np.errstate(all='ignore'):
        L = next_iterate_field(system, first)(centers)
        J = next_iterate_field(system, second)(centers)
    return SignField(i=I_idx.ravel(), j=J_idx.ravel(), centers=centers,
                     sign_L=np.sign(L).astype(int), sign_J=np.sign(J).astype(int))


@dataclass(frozen=True, eq=False)
class PortraitData:
    """All layers of an augmented phase portrait over one region"""
    region: Tuple[Tuple[float, float], Tuple[float, float]]
    grid: Tuple[int, int]
    nullclines: List[Polyline] = field(default_factory=list)
    root_curves: List[Polyline] = field(default_factory=list)
    sign_field: Optional[SignField] = None
    direction_field: Optional[DirectionField] = None
    guard_curves: List[Polyline] = field(default_factory=list)
    title: str = ""


def portrait_region(system: MapSystem, region) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """Region actually traced; the epidemic portrait keeps clear of the S = 0 pole"""
    (x0, x1), (y0, y1) = np.asarray(region, dtype=float).reshape(2, 2)
    if system.name == 'epidemic':
        p = system.params
        scale = p['b'] / p['p'] if p['p'] > 0 else 1.0 / p['alpha']
        x0 = max(x0, POLE_CLEARANCE * scale)
    return (float(x0), float(x1)), (float(y0), float(y1))


def build_portrait(system: MapSystem, region, grid: Sequence[int] = (60, 60),
                   arrow_grid: Sequence[int] = (15, 15)) -> PortraitData:
    """
    Compute every layer of the augmented portrait

    Args:
        system: Planar map
        region: ((x_low, x_high), (y_low, y_high))
        grid: Contour grid (nx, ny)
        arrow_grid: Direction-field grid (nx, ny)
    """
    kinds = nullcline_kinds(system)
    box = portrait_region(system, region)
    grid = (int(grid[0]), int(grid[1]))

    nullclines: List[Polyline] = []
    root_curves: List[Polyline] = []
    for kind in kinds:
        nullclines.extend(trace_zero_set(side_function(system, kind), box, grid, kind.value))
        if kind not in (NullclineKind.IncrementX, NullclineKind.IncrementY):
            root_curves.extend(trace_zero_set(next_iterate_field(system, kind), box, grid,
                                              f"root:{kind.value}"))

    guards: List[Polyline] = []
    if system.name == 'epidemic':
        guards = trace_zero_set(lambda s: system.evaluate(s)[..., 0], box, grid, "guard:S_next")

    data = PortraitData(
        region=box,
        grid=grid,
        nullclines=nullclines,
        root_curves=root_curves,
        sign_field=sign_field(system, box, grid),
        direction_field=direction_field(system, box, arrow_grid),
        guard_curves=guards,
        title=system.name,
    )
    logger.info("%s portrait: %d nullcline, %d root and %d guard polylines", system.name,
                len(nullclines), len(root_curves), len(guards))
    return data
