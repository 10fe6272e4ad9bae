"""Built-in models with closed-form fixed points and certified ground truths"""

from .catalog import (
    MODEL_IDS, ParamSpec, GroundTruth, ZooEntry, PARAM_SPECS,
    build, describe, ground_truth_suite, list_models, resolve_observable,
)
from .presets import PRESETS, get_preset, presets_for

__all__ = [
    'MODEL_IDS', 'ParamSpec', 'GroundTruth', 'ZooEntry', 'PARAM_SPECS',
    'build', 'describe', 'ground_truth_suite', 'list_models', 'resolve_observable',
    'PRESETS', 'get_preset', 'presets_for',
]
