"""CSV and JSON codecs for run artifacts"""

from .tables import (
    format_real, parse_real, write_rows, read_rows,
    write_trajectory, read_trajectory, write_profile, read_profile,
    write_scaling, read_scaling, write_transient_points,
    write_polylines, read_polylines, write_signs, write_arrows,
)
from .records import verdict_record, transient_time_record, write_json, read_json, read_verdicts

__all__ = [
    'format_real', 'parse_real', 'write_rows', 'read_rows',
    'write_trajectory', 'read_trajectory', 'write_profile', 'read_profile',
    'write_scaling', 'read_scaling', 'write_transient_points',
    'write_polylines', 'read_polylines', 'write_signs', 'write_arrows',
    'verdict_record', 'transient_time_record', 'write_json', 'read_json', 'read_verdicts',
]
