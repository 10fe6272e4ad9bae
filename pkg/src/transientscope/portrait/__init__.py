"""Augmented phase portraits of planar maps"""

from .contours import Polyline, trace_zero_set
from .augmented import (
    NullclineKind, PortraitData, DirectionField, SignField,
    nullcline_kinds, side_function, next_iterate_field, next_iterate_operator,
    direction_field, sign_field, build_portrait,
)
from .export import export_portrait

__all__ = [
    'Polyline', 'trace_zero_set', 'NullclineKind', 'PortraitData', 'DirectionField',
    'SignField', 'nullcline_kinds', 'side_function', 'next_iterate_field',
    'next_iterate_operator', 'direction_field', 'sign_field', 'build_portrait',
    'export_portrait',
]
