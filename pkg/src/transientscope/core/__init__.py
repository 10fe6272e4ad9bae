"""Core dynamics: maps, observables, trajectories and transient times"""

from .dynamics import (
    MapSystem, Observable, Trajectory, TransientStatus, TransientTimeResult,
    TransientPointClass, NonFiniteState, DomainEscape,
    iterate, delta_v, transient_time, classify_transient_point,
    candidate_residual, in_candidate_set, first_triggers, running_delta_max,
)
from .run_journal import RunJournal

__all__ = [
    'MapSystem', 'Observable', 'Trajectory', 'TransientStatus',
    'TransientTimeResult', 'TransientPointClass', 'NonFiniteState',
    'DomainEscape', 'iterate', 'delta_v', 'transient_time',
    'classify_transient_point', 'candidate_residual', 'in_candidate_set',
    'first_triggers', 'running_delta_max', 'RunJournal',
]
