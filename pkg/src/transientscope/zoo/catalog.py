#!/usr/bin/env python3
"""
Model catalog

Parameter ranges, named observables, closed-form fixed points, derived
quantities and certified ground truths for every built-in model.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.dynamics import MapSystem, Observable
from ..criteria.verdicts import Decision
from ..errors import ConfigError, InvalidParams
from ..linalg.spectral import eigen, nonneg_irreducible
from . import models

logger = logging.getLogger(__name__)

MODEL_IDS = ('example1', 'example2', 'cubic1d', 'linear_custom', 'streipert_pp', 'epidemic')
DEFAULT_MATRIX = ((0.0, 1.5), (1.3, 0.0))


@dataclass(frozen=True)
class ParamSpec:
    """Validity range of one real parameter"""
    name: str
    default: float
    low: float = -math.inf
    high: float = math.inf
    low_inclusive: bool = False
    high_inclusive: bool = False
    description: str = ""

    @property
    def valid(self) -> str:
        left = '[' if self.low_inclusive else '('
        right = ']' if self.high_inclusive else ')'
        return f"{left}{self.low:g}, {self.high:g}{right}"

    def check(self, model_id: str, value) -> float:
        try:
            x = float(value)
        except (TypeError, ValueError):
            raise InvalidParams(model_id, self.name, value, self.valid) from None
        above = x >= self.low if self.low_inclusive else x > self.low
        below = x <= self.high if self.high_inclusive else x < self.high
        if not (math.isfinite(x) and above and below):
            raise InvalidParams(model_id, self.name, value, self.valid)
        return x

    def to_dict(self) -> Dict[str, Any]:
        return {'default': self.default, 'range': self.valid, 'description': self.description}


@dataclass(frozen=True)
class GroundTruth:
    """
    Known verdict for a point and observable

    Attributes:
        label: Name of the point (E0, E_K, chi, ...)
        point: Location
        observable: Observable name in the entry
        expected: Expected decision
        route: Criterion expected to certify it
        fixed_point: Whether the point is a fixed point of the map
    """
    label: str
    point: Tuple[float, ...]
    observable: str
    expected: Decision
    route: str
    fixed_point: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            'label': self.label,
            'point': list(self.point),
            'observable': self.observable,
            'expected': self.expected.value,
            'route': self.route,
            'fixed_point': self.fixed_point,
        }


@dataclass(frozen=True, eq=False)
class ZooEntry:
    """Catalog record of one parameterized model"""
    model_id: str
    description: str
    dimension: int
    params: Mapping[str, Any]
    param_specs: Tuple[ParamSpec, ...]
    observables: Mapping[str, Observable]
    known_fixed_points: Mapping[str, Tuple[float, ...]]
    ground_truths: Tuple[GroundTruth, ...]
    derived: Mapping[str, float] = field(default_factory=dict)

    def observable(self, name: str) -> Observable:
        return resolve_observable(self, name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'model_id': self.model_id,
            'description': self.description,
            'dimension': self.dimension,
            'params': {k: (np.asarray(v).tolist() if k == 'matrix' else v)
                       for k, v in self.params.items()},
            'param_specs': {s.name: s.to_dict() for s in self.param_specs},
            'observables': sorted(self.observables),
            'known_fixed_points': {k: list(v) for k, v in self.known_fixed_points.items()},
            'derived': dict(self.derived),
            'ground_truths': [g.to_dict() for g in self.ground_truths],
        }


# === Parameter tables ===

PARAM_SPECS: Dict[str, Tuple[ParamSpec, ...]] = {
    'example1': (
        ParamSpec('h', 0.1, 0.0, 1.0, description="step size"),
    ),
    'example2': (
        ParamSpec('a', 1.5, 0.0, description="gain of x(t+1) on y"),
        ParamSpec('b', 1.3, 0.0, description="gain of y(t+1) on x"),
    ),
    'cubic1d': (),
    'linear_custom': (),
    'streipert_pp': (
        ParamSpec('r', 0.5, 0.0, description="intrinsic growth rate of the prey"),
        ParamSpec('K', 1.0, 0.0, description="prey carrying capacity"),
        ParamSpec('alpha', 1.0, 0.0, description="predation rate"),
        ParamSpec('gamma', 4.0, 0.0, description="consumption-energy rate"),
        ParamSpec('d', 1.0, 0.0, description="predator death rate"),
    ),
    'epidemic': (
        ParamSpec('b', 115.0, 0.0, description="births and deaths per week"),
        ParamSpec('p', 0.003, 0.0, 1.0, low_inclusive=True,
                  description="fraction of susceptibles vaccinated per week"),
        ParamSpec('alpha', 4e-5, 0.0, 1.0, description="transmission rate"),
    ),
}

DESCRIPTIONS = {
    'example1': "planar map with an invariant y-axis; origin in the candidate set for v = x",
    'example2': "rational planar map with a nonnegative irreducible Jacobian at the origin",
    'cubic1d': "f(x) = 2x + x^3 with the observable v = x^2",
    'linear_custom': "linear map x -> A x for a user matrix A",
    'streipert_pp': "discrete predator-prey model with logistic prey growth",
    'epidemic': "reduced measles SI model with vaccination",
}


def _validate(model_id: str, params: Optional[Mapping[str, Any]]) -> Dict[str, Any]:
    params = dict(params or {})
    if model_id == 'linear_custom':
        unknown = set(params) - {'matrix'}
        if unknown:
            name = sorted(unknown)[0]
            raise InvalidParams(model_id, name, params[name], "{matrix}")
        matrix = np.array(params.get('matrix', DEFAULT_MATRIX), dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.size == 0:
            raise InvalidParams(model_id, 'matrix', params.get('matrix'), "square real matrices")
        if not np.all(np.isfinite(matrix)):
            raise InvalidParams(model_id, 'matrix', params.get('matrix'), "finite entries")
        return {'matrix': matrix}

    specs = {s.name: s for s in PARAM_SPECS[model_id]}
    unknown = set(params) - set(specs)
    if unknown:
        name = sorted(unknown)[0]
        raise InvalidParams(model_id, name, params[name],
                            "{" + ", ".join(specs) + "}" if specs else "{} (no parameters)")
    return {name: spec.check(model_id, params.get(name, spec.default))
            for name, spec in specs.items()}


# === Observables ===

def _square_observable() -> Observable:
    def func(s):
        x = s[..., 0]
        return x * x

    def grad(s):
        return np.array([2.0 * s[0]])

    return Observable(func=func, name="x^2", grad=grad)


def _observables(model_id: str, dimension: int) -> Dict[str, Observable]:
    if model_id == 'cubic1d':
        return {'x': Observable.coordinate(0, 1, name='x'), 'x^2': _square_observable()}
    if model_id == 'linear_custom':
        obs = {f"x{i + 1}": Observable.coordinate(i, dimension) for i in range(dimension)}
        obs['sum'] = Observable.linear(np.ones(dimension), name='sum')
        return obs
    if model_id == 'epidemic':
        return {'S': Observable.coordinate(0, 2, name='S'), 'I': Observable.coordinate(1, 2, name='I')}
    obs = {'x': Observable.coordinate(0, 2, name='x'), 'y': Observable.coordinate(1, 2, name='y')}
    if model_id == 'example2':
        obs['sum'] = Observable.linear([1.0, 1.0], name='sum')
    return obs


OBSERVABLE_ALIASES = {
    'streipert_pp': {'v1': 'x', 'v2': 'y', 'prey': 'x', 'predator': 'y'},
    'example2': {'x+y': 'sum'},
    'linear_custom': {},
    'cubic1d': {'x2': 'x^2'},
    'epidemic': {'v': 'I'},
    'example1': {'v': 'x'},
}


def resolve_observable(entry: ZooEntry, spec: Union[str, Sequence[float]]) -> Observable:
    """
    Observable by name (or alias) or by linear coefficients

    Raises:
        ConfigError: Unknown name or wrong number of coefficients
    """
    if isinstance(spec, str):
        name = OBSERVABLE_ALIASES.get(entry.model_id, {}).get(spec, spec)
        if name not in entry.observables:
            raise ConfigError(f"{entry.model_id}: unknown observable '{spec}' "
                              f"(known: {', '.join(sorted(entry.observables))})")
        return entry.observables[name]
    coeffs = np.asarray(spec, dtype=float).reshape(-1)
    dimension = entry.dimension
    if len(coeffs) != dimension or not np.all(np.isfinite(coeffs)):
        raise ConfigError(f"{entry.model_id}: observable coefficients must be {dimension} finite reals")
    if not np.any(coeffs):
        raise ConfigError(f"{entry.model_id}: observable coefficients are all zero")
    return Observable.linear(coeffs)


# === Fixed points, derived quantities and ground truths ===

def _example1(p):
    fixed = {'E1': (1.0, 0.0)}
    derived = {'S_star': 0.5 * p['h'] ** 2}
    truths = [GroundTruth('origin', (0.0, 0.0), 'x', Decision.Center, 'Empirical',
                          fixed_point=False)]
    return fixed, derived, truths


def _example2(p):
    a, b = p['a'], p['b']
    fixed = {'origin': (0.0, 0.0)}
    derived = {'rho_origin': math.sqrt(a * b), 'ab': a * b}
    truths = []
    if a * b > 1.0:
        truths.append(GroundTruth('origin', (0.0, 0.0), 'sum', Decision.Center, 'PerronFrobenius'))
    return fixed, derived, truths


def _cubic1d(p):
    fixed = {'origin': (0.0,)}
    truths = [GroundTruth('origin', (0.0,), 'x^2', Decision.Center, 'HessianFlatness')]
    return fixed, {}, truths


def _linear_custom(p):
    A = p['matrix']
    n = A.shape[0]
    origin = (0.0,) * n
    summary = eigen(A)
    derived = {'spectral_radius': summary.spectral_radius, 'spectral_norm': summary.spectral_norm}
    truths = []
    if nonneg_irreducible(A) and n >= 2 and summary.spectral_radius > 1.0 + 1e-6:
        truths.append(GroundTruth('origin', origin, 'sum', Decision.Center, 'PerronFrobenius'))
    elif summary.spectral_radius < 1.0 - 1e-6:
        truths.append(GroundTruth('origin', origin, 'sum', Decision.NotCenter, 'StableExclusion'))
    return {'origin': origin}, derived, truths


def _streipert_pp(p):
    r, K, alpha, gamma, d = p['r'], p['K'], p['alpha'], p['gamma'], p['d']
    D = d / gamma
    fixed = {'E0': (0.0, 0.0), 'E_K': (K, 0.0)}
    derived = {
        'D': D,
        'N0': r / alpha,
        'lambda_E0': 1.0 + r,
        'lambda_EK': (1.0 + gamma * K) / (1.0 + d),
    }
    if D < K:
        fixed['E_D'] = (D, (r / alpha) * (1.0 - D / K))
        derived['S_bound'] = r * gamma * (K - D) ** 2 / (4.0 * alpha * K * (1.0 + gamma * D))

    truths = [GroundTruth('E0', (0.0, 0.0), 'x', Decision.Center, 'GradientEigvecH2')]
    if d < gamma * K:
        truths.append(GroundTruth('E_K', (K, 0.0), 'y', Decision.Center, 'GradientEigvecH2'))
        truths.append(GroundTruth('E_K', (K, 0.0), 'x', Decision.Center, 'GradientEigvecH2'))
    truths.append(GroundTruth('E0', (0.0, 0.0), 'y', Decision.Center, 'Empirical'))
    if D < K:
        truths.append(GroundTruth('chi_D', (0.4 * D, 0.0), 'y', Decision.Center, 'Empirical',
                                  fixed_point=False))
    truths.append(GroundTruth('chi', (0.5 * (D + K) if D < K else 0.5 * K, 0.0), 'y',
                              Decision.Center, 'Empirical', fixed_point=False))
    return fixed, derived, truths


def _epidemic(p):
    b, vacc, alpha = p['b'], p['p'], p['alpha']
    fixed = {}
    derived = {}
    truths = []
    if vacc == 0.0:
        fixed['E_star'] = (1.0 / alpha, b)
        truths.append(GroundTruth('E_star', fixed['E_star'], 'I', Decision.NotCenter,
                                  'StableExclusion'))
        return fixed, derived, truths

    R0 = alpha * b / vacc
    derived['R0'] = R0
    derived['lambda_E0'] = R0
    fixed['E0'] = (b / vacc, 0.0)
    if R0 > 1.0:
        fixed['E_star'] = (1.0 / alpha, b - vacc / alpha)
        derived['k_bound'] = (b / R0) * (math.sqrt(R0) - 1.0) ** 2
        truths.append(GroundTruth('E0', fixed['E0'], 'I', Decision.Center, 'GradientEigvecH2'))
        if R0 < 2.0 / vacc and alpha * b < 2.0:
            truths.append(GroundTruth('E_star', fixed['E_star'], 'I', Decision.NotCenter,
                                      'StableExclusion'))
        # the member of Gamma at S = b/p is E0 itself
        truths.append(GroundTruth('Gamma', (b / vacc, 0.0), 'I', Decision.Center, 'GradientEigvecH2'))
        truths.append(GroundTruth('Gamma', (0.5 * b / vacc, 0.0), 'I', Decision.Center,
                                  'Empirical', fixed_point=False))
    return fixed, derived, truths


_FACTORIES: Dict[str, Callable[[Dict[str, Any]], MapSystem]] = {
    'example1': lambda p: models.example1(p['h']),
    'example2': lambda p: models.example2(p['a'], p['b']),
    'cubic1d': lambda p: models.cubic1d(),
    'linear_custom': lambda p: models.linear_custom(p['matrix']),
    'streipert_pp': lambda p: models.streipert_pp(p['r'], p['K'], p['alpha'], p['gamma'], p['d']),
    'epidemic': lambda p: models.epidemic(p['b'], p['p'], p['alpha']),
}

_CATALOG = {
    'example1': _example1,
    'example2': _example2,
    'cubic1d': _cubic1d,
    'linear_custom': _linear_custom,
    'streipert_pp': _streipert_pp,
    'epidemic': _epidemic,
}


# === Public API ===

def build(model_id: str, params: Optional[Mapping[str, Any]] = None) -> Tuple[MapSystem, ZooEntry]:
    """
    Construct a zoo model

    Args:
        model_id: One of MODEL_IDS
        params: Parameter overrides; missing parameters take their defaults

    Returns:
        (map, catalog entry)

    Raises:
        ConfigError: Unknown model id
        InvalidParams: A parameter outside its validity range
    """
    if model_id not in _FACTORIES:
        raise ConfigError(f"unknown model '{model_id}' (known: {', '.join(MODEL_IDS)})")
    values = _validate(model_id, params)
    system = _FACTORIES[model_id](values)
    fixed, derived, truths = _CATALOG[model_id](values)
    entry = ZooEntry(
        model_id=model_id,
        description=DESCRIPTIONS[model_id],
        dimension=system.dimension,
        params=values,
        param_specs=PARAM_SPECS[model_id],
        observables=_observables(model_id, system.dimension),
        known_fixed_points=fixed,
        ground_truths=tuple(truths),
        derived=derived,
    )
    logger.debug("built %s with %s", model_id, values)
    return system, entry


def ground_truth_suite(entry: ZooEntry) -> List[Tuple[np.ndarray, Observable, Decision, str]]:
    """(point, observable, expected decision, criterion route) for every ground truth"""
    return [(np.array(g.point), resolve_observable(entry, g.observable), g.expected, g.route)
            for g in entry.ground_truths]


def list_models() -> List[str]:
    return list(MODEL_IDS)


def describe(model_id: str) -> Dict[str, Any]:
    """Catalog record at default parameters, as a JSON-ready dictionary"""
    from .presets import presets_for
    _, entry = build(model_id)
    info = entry.to_dict()
    info['presets'] = presets_for(model_id)
    return info
