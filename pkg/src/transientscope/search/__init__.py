"""Empirical verification of transient centers"""

from .empirical import (
    CandidateNotInXv, EmpiricalSettings, EscapeProfile, TransientPointHit, ScalingRow,
    ball_samples, escape_supremum, escape_profile, empirical_center_verdict,
    transient_point_search, honeymoon_scaling, unstable_directions,
    DEFAULT_RADII, DEFAULT_HORIZON, DEFAULT_SAMPLES,
)

__all__ = [
    'CandidateNotInXv', 'EmpiricalSettings', 'EscapeProfile', 'TransientPointHit',
    'ScalingRow', 'ball_samples', 'escape_supremum', 'escape_profile',
    'empirical_center_verdict', 'transient_point_search', 'honeymoon_scaling',
    'unstable_directions', 'DEFAULT_RADII', 'DEFAULT_HORIZON', 'DEFAULT_SAMPLES',
]
