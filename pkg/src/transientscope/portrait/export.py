#!/usr/bin/env python3
"""
Portrait export

Writes the four CSV layers and the SVG overlay of a PortraitData:

    <basename>.nullclines.csv   curve_id,x,y
    <basename>.rootcurves.csv   curve_id,x,y   (guard curves use "guard:" ids)
    <basename>.signs.csv        i,j,cx,cy,sign_L,sign_J
    <basename>.arrows.csv       x,y,sx,sy
    <basename>.svg
"""
from pathlib import Path
from typing import List

from ..formats.tables import write_arrows, write_polylines, write_signs
from ..plotting.svg import plot_portrait
from .augmented import PortraitData


def export_portrait(data: PortraitData, basename) -> List[Path]:
    """Write all portrait artifacts; I/O errors propagate unchanged"""
    base = str(basename)
    return [
        write_polylines(base + ".nullclines.csv", data.nullclines),
        write_polylines(base + ".rootcurves.csv", list(data.root_curves) + list(data.guard_curves)),
        write_signs(base + ".signs.csv", data.sign_field),
        write_arrows(base + ".arrows.csv", data.direction_field),
        plot_portrait(base + ".svg", data),
    ]
