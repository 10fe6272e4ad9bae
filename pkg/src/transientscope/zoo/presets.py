"""
Named run presets

Each preset is a partial RunConfig dictionary reproducing one standard
experiment. Presets sit below config files and CLI flags in precedence.
"""
import copy
import math
from typing import Any, Dict, List

from ..errors import ConfigError

_W = (math.sqrt(1.5) / math.sqrt(2.8), math.sqrt(1.3) / math.sqrt(2.8))

PRESETS: Dict[str, Dict[str, Any]] = {
    # example1: long quiet phase before x overshoots the center level
    'fig2': {
        'model': 'example1',
        'params': {'h': 0.1},
        'observable': 'x',
        'simulate': {
            'initial_state': [1e-3, 0.0],
            'steps': 120,
            'threshold': 0.005,
            'first_crossing': {'component': 0, 'level': 1.0},
        },
        'transient_time': {
            'initial_state': [1e-3, 0.0],
            'threshold': 0.005,
            'horizon': 1_000_000,
            'T': 10,
        },
        'classify': {
            'region': [[0.5, 1.5], [-0.5, 0.5]],
            'grid': [3, 3],
            'empirical': {'horizon': 2000, 'samples': 64},
        },
        'search': {
            'mode': 'scaling',
            'candidate': [0.0, 0.0],
            'direction': [1.0, 0.0],
            'epsilons': [1e-2, 1e-3, 1e-4],
            'threshold': 0.005,
            'horizon': 1_000_000,
        },
        'portrait': {'region': [[-0.5, 2.0], [-1.0, 1.0]]},
    },
    # example2: family eps * w along the unstable eigenvector of the origin
    'fig3': {
        'model': 'example2',
        'params': {'a': 1.5, 'b': 1.3},
        'observable': 'sum',
        'simulate': {
            'direction': list(_W),
            'scales': [1e-2, 1e-3, 1e-4],
            'steps': 60,
        },
        'classify': {
            'region': [[-0.5, 0.5], [-0.5, 0.5]],
            'grid': [5, 5],
        },
        'search': {
            'mode': 'profile',
            'candidate': [0.0, 0.0],
            'horizon': 2000,
            'samples': 64,
        },
    },
    'fig4': {
        'model': 'streipert_pp',
        'params': {'r': 0.5, 'K': 1.0, 'alpha': 1.0, 'gamma': 4.0, 'd': 1.0},
        'observable': 'x',
        'simulate': {
            'initial_state': [1e-3, 1e-4],
            'extra_states': [[1e-2, 1e-4], [1e-1, 1e-4]],
            'steps': 100,
        },
        'classify': {
            'region': [[0.0, 2.0], [0.0, 1.0]],
            'grid': [5, 5],
            'empirical': {'enabled': False},
        },
        'search': {
            'mode': 'profile',
            'observable': 'y',
            'candidate': [0.1, 0.0],
            'horizon': 2000,
            'samples': 64,
        },
        'sweep': {
            'grid': {'d': {'start': 0.5, 'stop': 4.5, 'num': 41}},
            'target': 'classify',
            'fixed_point': 'E_K',
            'observable': 'y',
        },
    },
    'fig4b': {
        'model': 'streipert_pp',
        'params': {'r': 0.5, 'K': 1.0, 'alpha': 1.0, 'gamma': 4.0, 'd': 1.0},
        'observable': 'x',
        'portrait': {
            'region': [[0.0, 1.2], [0.0, 0.8]],
            'grid': [80, 80],
            'arrow_grid': [16, 16],
        },
    },
    # epidemic: honeymoon phase after vaccination drives I near zero
    'fig6': {
        'model': 'epidemic',
        'params': {'b': 115.0, 'p': 0.003, 'alpha': 4e-5},
        'observable': 'I',
        'simulate': {
            'initial_state': [2.4e4, 250.0],
            'steps': 2000,
            'threshold': 50.0,
        },
        'transient_time': {
            'initial_state': [2.4e4, 250.0],
            'threshold': 50.0,
            'horizon': 100_000,
        },
        'classify': {
            'region': [[1e4, 5e4], [0.0, 500.0]],
            'grid': [5, 5],
            'empirical': {'enabled': False},
        },
        'search': {
            'mode': 'scaling',
            'candidate': [2.4e4, 0.0],
            'direction': [0.0, 1.0],
            'epsilons': [1e-2, 1e-3, 1e-4],
            'threshold': 50.0,
            'horizon': 100_000,
        },
        'sweep': {
            'grid': {'p': [0.002, 0.0025, 0.003, 0.0035]},
            'target': 'classify',
            'fixed_point': 'E_star',
        },
    },
    'fig7a': {
        'model': 'epidemic',
        'params': {'b': 1.0, 'p': 0.3, 'alpha': 0.8},
        'observable': 'I',
        'portrait': {
            'region': [[0.0, 5.0], [0.0, 3.0]],
            'grid': [80, 80],
            'arrow_grid': [15, 15],
        },
    },
}


def get_preset(name: str) -> Dict[str, Any]:
    """
    Copy of a preset's configuration dictionary

    Raises:
        ConfigError: Unknown preset name
    """
    if name not in PRESETS:
        raise ConfigError(f"unknown preset '{name}'; available: {', '.join(sorted(PRESETS))}")
    return copy.deepcopy(PRESETS[name])


def presets_for(model_id: str) -> List[str]:
    return sorted(name for name, preset in PRESETS.items() if preset['model'] == model_id)
