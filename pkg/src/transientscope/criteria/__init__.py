"""Fixed points and transient-center criteria"""

from .verdicts import CenterVerdict, Criterion, Decision, NotApplicable
from .fixed_points import FixedPoint, Stability, find_fixed_points, fixed_point_at, stability_of
from .centers import (
    GradientMode, stable_exclusion, linear_eigenspace_criterion, gradient_eigvec_criterion,
    perron_frobenius_criterion, flatness_criterion, classify,
)

__all__ = [
    'CenterVerdict', 'Criterion', 'Decision', 'NotApplicable',
    'FixedPoint', 'Stability', 'find_fixed_points', 'fixed_point_at', 'stability_of',
    'GradientMode', 'stable_exclusion', 'linear_eigenspace_criterion',
    'gradient_eigvec_criterion', 'perron_frobenius_criterion', 'flatness_criterion',
    'classify',
]
