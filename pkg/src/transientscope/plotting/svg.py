#!/usr/bin/env python3
"""
Static SVG rendering

Time-series and augmented phase-portrait figures drawn with matplotlib's
object API (no pyplot state) and written as SVG. Output is reproducible:
the SVG hash salt is fixed, text stays text and the date stamp is omitted.
"""
import logging
from pathlib import Path
from typing import Optional, Sequence

import matplotlib
from matplotlib.figure import Figure
import numpy as np

logger = logging.getLogger(__name__)

VIEWPORT = (800, 600)
POINTS_PER_INCH = 72.0

SVG_RC = {
    'svg.hashsalt': 'transientscope',
    'svg.fonttype': 'none',
    'path.simplify': False,
}

NULLCLINE_COLORS = ('tab:red', 'tab:blue')
ROOT_COLORS = ('darkred', 'navy')
SIGN_LABELS_PER_AXIS = 16


def _figure() -> Figure:
    # one SVG user unit per viewport pixel
    return Figure(figsize=(VIEWPORT[0] / POINTS_PER_INCH, VIEWPORT[1] / POINTS_PER_INCH),
                  dpi=POINTS_PER_INCH)


def _save(fig: Figure, path) -> Path:
    path = Path(path)
    with matplotlib.rc_context(SVG_RC):
        fig.savefig(path, format='svg', metadata={'Date': None})
    logger.debug("wrote %s", path)
    return path


# === Time series ===

def plot_states(path, trajectories: Sequence, labels: Optional[Sequence[str]] = None,
                crossing: Optional[int] = None, title: str = "") -> Path:
    """
    State components against t, one line per component and trajectory

    Args:
        trajectories: Trajectory objects sharing a dimension
        crossing: Step of the first-crossing marker (dotted vertical line)
    """
    fig = _figure()
    ax = fig.add_axes([0.1, 0.1, 0.85, 0.82])
    for k, traj in enumerate(trajectories):
        t = np.arange(traj.steps + 1)
        for i in range(traj.states.shape[1]):
            name = labels[i] if labels else f"x{i + 1}"
            suffix = f" ({k})" if len(trajectories) > 1 else ""
            ax.plot(t, traj.states[:, i], lw=1.2, label=f"{name}{suffix}")
    if crossing is not None:
        ax.axvline(crossing, color='k', ls=':', lw=1.0, label=f"first crossing t={crossing}")
    ax.set_xlabel("t")
    ax.set_ylabel("state")
    ax.set_title(title)
    ax.legend(loc='best', fontsize='small')
    return _save(fig, path)


def plot_deltas(path, trajectory, threshold: Optional[float] = None,
                transient_time: Optional[int] = None, title: str = "") -> Path:
    """|Δv(x_t)| against t with the threshold line and the transient-time marker"""
    fig = _figure()
    ax = fig.add_axes([0.1, 0.1, 0.85, 0.82])
    t = np.arange(trajectory.steps)
    ax.plot(t, np.abs(trajectory.deltas), color='k', lw=1.2, label="|Δv|")
    if threshold is not None:
        ax.axhline(threshold, color='tab:gray', ls='--', lw=1.0, label=f"s = {threshold:g}")
    if transient_time is not None:
        ax.axvline(transient_time, color='tab:red', ls='-.', lw=1.0,
                   label=f"transient time {transient_time}")
    ax.set_xlabel("t")
    ax.set_ylabel("|Δv|")
    ax.set_title(title)
    ax.legend(loc='best', fontsize='small')
    return _save(fig, path)


# === Phase portraits ===

def plot_portrait(path, data) -> Path:
    """
    Overlay of all portrait layers

    The axes fill the viewport, so region coordinates map linearly onto the
    800x600 SVG user space.
    """
    fig = _figure()
    ax = fig.add_axes([0.0, 0.0, 1.0, 1.0])
    (x0, x1), (y0, y1) = data.region
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.tick_params(direction='in', pad=-14, labelsize='small')

    for k, line in enumerate(data.nullclines):
        family = line.curve_id.split('.')[0]
        color = NULLCLINE_COLORS[_family_index(data.nullclines, family) % 2]
        ax.plot(line.points[:, 0], line.points[:, 1], color=color, ls='--', lw=1.5,
                label=f"nullcline {family}" if _first_of_family(data.nullclines, k) else None)
    for k, line in enumerate(data.root_curves):
        family = line.curve_id.split('.')[0]
        color = ROOT_COLORS[_family_index(data.root_curves, family) % 2]
        ax.plot(line.points[:, 0], line.points[:, 1], color=color, ls='-', lw=1.5,
                label=family if _first_of_family(data.root_curves, k) else None)
    for k, line in enumerate(data.guard_curves):
        ax.plot(line.points[:, 0], line.points[:, 1], color='tab:orange', ls='-.', lw=1.5,
                label="guard S(t+1) = 0" if k == 0 else None)

    if data.sign_field is not None and len(data.sign_field.centers):
        signs = data.sign_field
        stride = max(1, max(data.grid) // SIGN_LABELS_PER_AXIS)
        shown = (signs.i % stride == 0) & (signs.j % stride == 0)
        for c, sl, sj in zip(signs.centers[shown], signs.sign_L[shown], signs.sign_J[shown]):
            ax.text(c[0], c[1], _sign_glyph(sl) + _sign_glyph(sj), fontsize=6,
                    ha='center', va='center', color='0.55')
    if data.direction_field is not None and len(data.direction_field.points):
        arrows = data.direction_field
        ax.quiver(arrows.points[:, 0], arrows.points[:, 1], arrows.sx, arrows.sy,
                  color='k', angles='xy', pivot='mid', width=0.002)

    if ax.get_legend_handles_labels()[0]:
        ax.legend(loc='upper right', fontsize='small')
    if data.title:
        ax.text(0.01, 0.99, data.title, transform=ax.transAxes, ha='left', va='top')
    return _save(fig, path)


def _sign_glyph(sign: int) -> str:
    return '+' if sign >= 0 else '-'


def _family_index(lines, family: str) -> int:
    families = []
    for line in lines:
        name = line.curve_id.split('.')[0]
        if name not in families:
            families.append(name)
    return families.index(family)


def _first_of_family(lines, k: int) -> bool:
    family = lines[k].curve_id.split('.')[0]
    return all(line.curve_id.split('.')[0] != family for line in lines[:k])
