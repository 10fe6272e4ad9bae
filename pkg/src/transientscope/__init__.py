"""
transientscope - transient centers and long transients of discrete-time maps

Simulate maps x(t+1) = f(x(t)), measure (v, s)-transient times of an
observable v, decide whether a fixed point is a transient center, verify
centers by sampling and draw augmented phase portraits of planar maps.

Example:
    Classify the trivial equilibrium of the predator-prey map::

        from transientscope import build, resolve_observable, fixed_point_at, classify

        system, entry = build('streipert_pp', {'d': 1.0})
        v = resolve_observable(entry, 'x')
        verdict = classify(system, fixed_point_at(system, (0.0, 0.0)), v)
        print(verdict.decision, verdict.criterion)

    Transient time of a single orbit::

        from transientscope import build, resolve_observable, transient_time

        system, entry = build('example1', {'h': 0.1})
        result = transient_time(system, resolve_observable(entry, 'x'),
                                (1e-3, 0.0), s=0.005, horizon=10**6)
        print(result.time)
"""

from .config import RunConfig, DEFAULT_CONFIG
from .core import (
    MapSystem, Observable, Trajectory, TransientStatus, TransientTimeResult,
    TransientPointClass, NonFiniteState, DomainEscape, iterate, delta_v,
    transient_time, classify_transient_point, candidate_residual, in_candidate_set,
)
from .criteria import (
    CenterVerdict, Criterion, Decision, NotApplicable, FixedPoint, Stability,
    find_fixed_points, fixed_point_at, classify,
)
from .errors import TransientScopeError, ConfigError, InvalidParams
from .linalg import ConvergenceFailure, eigen, spectral_norm, spectral_radius
from .portrait import build_portrait, export_portrait
from .search import (
    CandidateNotInXv, EmpiricalSettings, escape_profile, empirical_center_verdict,
    transient_point_search, honeymoon_scaling,
)
from .version import __version__
from .zoo import build, describe, list_models, resolve_observable

__all__ = [
    'RunConfig', 'DEFAULT_CONFIG',
    'MapSystem', 'Observable', 'Trajectory', 'TransientStatus', 'TransientTimeResult',
    'TransientPointClass', 'NonFiniteState', 'DomainEscape', 'iterate', 'delta_v',
    'transient_time', 'classify_transient_point', 'candidate_residual', 'in_candidate_set',
    'CenterVerdict', 'Criterion', 'Decision', 'NotApplicable', 'FixedPoint', 'Stability',
    'find_fixed_points', 'fixed_point_at', 'classify',
    'TransientScopeError', 'ConfigError', 'InvalidParams',
    'ConvergenceFailure', 'eigen', 'spectral_norm', 'spectral_radius',
    'build_portrait', 'export_portrait',
    'CandidateNotInXv', 'EmpiricalSettings', 'escape_profile', 'empirical_center_verdict',
    'transient_point_search', 'honeymoon_scaling',
    'build', 'describe', 'list_models', 'resolve_observable',
    '__version__',
]
