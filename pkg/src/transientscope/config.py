"""
Run Configuration

A tree of dataclasses, one per CLI command block, loaded from JSON.
Unknown keys at any level are rejected with their dotted path, and every
value is type- and range-checked before a run starts.

Example:
    >>> config = RunConfig.from_dict({
    ...     'model': 'streipert_pp',
    ...     'params': {'d': 2.0},
    ...     'observable': 'y',
    ...     'classify': {'region': [[0, 2], [0, 1]]},
    ... })
    >>> config.classify.grid
    [5, 5]
"""

from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional, Union
import copy
import json
import math

from .errors import ConfigError

Vector = List[float]
Box = List[List[float]]
ObservableSpec = Union[str, List[float]]

SEARCH_MODES = ('profile', 'points', 'scaling')
SWEEP_TARGETS = ('classify', 'transient_time')
SEED_LIMIT = 2 ** 64


def _section(cls):
    """Nested dataclass field with its own strict schema"""
    return field(default_factory=cls, metadata={'section': cls})


# === Field checks ===

def _fail(path: str, message: str):
    raise ConfigError(f"{path}: {message}")


def _int(value, path: str, minimum: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        else:
            _fail(path, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        _fail(path, f"must be >= {minimum}, got {value}")
    return value


def _real(value, path: str, positive: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        _fail(path, f"must be finite, got {value}")
    if positive and value <= 0:
        _fail(path, f"must be positive, got {value}")
    return value


def _vector(value, path: str, length: Optional[int] = None) -> Vector:
    if not isinstance(value, list) or not value:
        _fail(path, f"expected a nonempty list of reals, got {value!r}")
    out = [_real(v, f"{path}[{i}]") for i, v in enumerate(value)]
    if length is not None and len(out) != length:
        _fail(path, f"expected {length} components, got {len(out)}")
    return out


def _box(value, path: str, dimension: Optional[int] = None) -> Box:
    if not isinstance(value, list) or not value:
        _fail(path, f"expected a list of [low, high] pairs, got {value!r}")
    box = [_vector(pair, f"{path}[{i}]", 2) for i, pair in enumerate(value)]
    for i, (lo, hi) in enumerate(box):
        if not lo < hi:
            _fail(f"{path}[{i}]", f"low must be below high, got [{lo}, {hi}]")
    if dimension is not None and len(box) != dimension:
        _fail(path, f"expected {dimension} axes, got {len(box)}")
    return box


def _counts(value, path: str, minimum: int = 2) -> List[int]:
    if not isinstance(value, list) or not value:
        _fail(path, f"expected a list of integers, got {value!r}")
    return [_int(v, f"{path}[{i}]", minimum) for i, v in enumerate(value)]


def _observable(value, path: str) -> ObservableSpec:
    if isinstance(value, str):
        return value
    return _vector(value, path)


# === Sections ===

@dataclass
class FirstCrossingConfig:
    """Marker at the first t with x_t[component] >= level"""
    component: int = 0
    level: float = 1.0

    def validate(self, path: str):
        self.component = _int(self.component, f"{path}.component", 0)
        self.level = _real(self.level, f"{path}.level")


@dataclass
class SimulateConfig:
    """Trajectory simulation

    The simulated states are initial_state, then extra_states, then
    scale * direction for every scale.
    """
    initial_state: Optional[Vector] = None
    steps: int = 100
    extra_states: List[Vector] = field(default_factory=list)
    direction: Optional[Vector] = None
    scales: Vector = field(default_factory=list)
    threshold: Optional[float] = None
    first_crossing: Optional[FirstCrossingConfig] = field(
        default=None, metadata={'section': FirstCrossingConfig})
    plot: bool = True

    def validate(self, path: str):
        if self.initial_state is not None:
            self.initial_state = _vector(self.initial_state, f"{path}.initial_state")
        self.steps = _int(self.steps, f"{path}.steps", 1)
        if not isinstance(self.extra_states, list):
            _fail(f"{path}.extra_states", "expected a list of states")
        self.extra_states = [_vector(s, f"{path}.extra_states[{i}]")
                             for i, s in enumerate(self.extra_states)]
        if self.direction is not None:
            self.direction = _vector(self.direction, f"{path}.direction")
        if not isinstance(self.scales, list):
            _fail(f"{path}.scales", "expected a list of reals")
        self.scales = [_real(s, f"{path}.scales[{i}]") for i, s in enumerate(self.scales)]
        if self.scales and self.direction is None:
            _fail(f"{path}.direction", "required when scales are given")
        if self.threshold is not None:
            self.threshold = _real(self.threshold, f"{path}.threshold", positive=True)
        if self.first_crossing is not None:
            self.first_crossing.validate(f"{path}.first_crossing")
        if not isinstance(self.plot, bool):
            _fail(f"{path}.plot", "expected true or false")
        if self.initial_state is None and not self.extra_states and not self.scales:
            _fail(f"{path}.initial_state", "no initial state configured")

    def states(self) -> List[Vector]:
        out = [self.initial_state] if self.initial_state is not None else []
        out.extend(self.extra_states)
        out.extend([s * c for c in self.direction] for s in self.scales)
        return out


@dataclass
class TransientTimeConfig:
    """Transient time of one initial state; T enables point classification"""
    initial_state: Optional[Vector] = None
    threshold: float = 0.005
    horizon: int = 100_000
    T: Optional[int] = None

    def validate(self, path: str):
        if self.initial_state is None:
            _fail(f"{path}.initial_state", "required")
        self.initial_state = _vector(self.initial_state, f"{path}.initial_state")
        self.threshold = _real(self.threshold, f"{path}.threshold", positive=True)
        self.horizon = _int(self.horizon, f"{path}.horizon", 1)
        if self.T is not None:
            self.T = _int(self.T, f"{path}.T", 1)
            if self.horizon <= self.T:
                _fail(f"{path}.horizon", f"must exceed T={self.T}")


@dataclass
class EmpiricalConfig:
    """Budget of the empirical center check"""
    enabled: bool = True
    radii: Vector = field(default_factory=lambda: [1e-2, 1e-3, 1e-4, 1e-5, 1e-6])
    horizon: int = 10_000
    samples: int = 256

    def validate(self, path: str):
        if not isinstance(self.enabled, bool):
            _fail(f"{path}.enabled", "expected true or false")
        self.radii = [_real(r, f"{path}.radii[{i}]", positive=True)
                      for i, r in enumerate(_vector(self.radii, f"{path}.radii"))]
        self.horizon = _int(self.horizon, f"{path}.horizon", 1)
        self.samples = _int(self.samples, f"{path}.samples", 1)


@dataclass
class ClassifyConfig:
    """Fixed-point search region and classification settings"""
    region: Optional[Box] = None
    grid: Optional[List[int]] = None
    tol: float = 1e-12
    empirical: EmpiricalConfig = _section(EmpiricalConfig)

    def validate(self, path: str):
        if self.region is not None:
            self.region = _box(self.region, f"{path}.region")
        if self.grid is not None:
            self.grid = _counts(self.grid, f"{path}.grid")
        self.tol = _real(self.tol, f"{path}.tol", positive=True)
        self.empirical.validate(f"{path}.empirical")


@dataclass
class SearchConfig:
    """Empirical search: escape profile, transient-point search or scaling table"""
    mode: str = "profile"
    observable: Optional[ObservableSpec] = None
    candidate: Optional[Vector] = None
    radii: Vector = field(default_factory=lambda: [1e-2, 1e-3, 1e-4, 1e-5, 1e-6])
    horizon: int = 10_000
    samples: int = 256
    region: Optional[Box] = None
    threshold: float = 0.005
    T: int = 50
    budget: int = 256
    direction: Optional[Vector] = None
    epsilons: Vector = field(default_factory=lambda: [1e-2, 1e-3, 1e-4])

    def validate(self, path: str):
        if self.mode not in SEARCH_MODES:
            _fail(f"{path}.mode", f"expected one of {', '.join(SEARCH_MODES)}, got {self.mode!r}")
        if self.observable is not None:
            self.observable = _observable(self.observable, f"{path}.observable")
        self.radii = [_real(r, f"{path}.radii[{i}]", positive=True)
                      for i, r in enumerate(_vector(self.radii, f"{path}.radii"))]
        self.horizon = _int(self.horizon, f"{path}.horizon", 1)
        self.samples = _int(self.samples, f"{path}.samples", 1)
        self.threshold = _real(self.threshold, f"{path}.threshold", positive=True)
        self.T = _int(self.T, f"{path}.T", 1)
        self.budget = _int(self.budget, f"{path}.budget", 1)
        self.epsilons = [_real(e, f"{path}.epsilons[{i}]", positive=True)
                         for i, e in enumerate(_vector(self.epsilons, f"{path}.epsilons"))]
        if self.mode in ('profile', 'scaling'):
            if self.candidate is None:
                _fail(f"{path}.candidate", f"required for mode '{self.mode}'")
            self.candidate = _vector(self.candidate, f"{path}.candidate")
        if self.mode == 'scaling':
            if self.direction is None:
                _fail(f"{path}.direction", "required for mode 'scaling'")
            self.direction = _vector(self.direction, f"{path}.direction")
        if self.mode == 'points':
            if self.region is None:
                _fail(f"{path}.region", "required for mode 'points'")
            self.region = _box(self.region, f"{path}.region")
            if self.horizon <= self.T:
                _fail(f"{path}.horizon", f"must exceed T={self.T}")


@dataclass
class PortraitConfig:
    """Augmented phase portrait of a planar model"""
    region: Optional[Box] = None
    grid: List[int] = field(default_factory=lambda: [60, 60])
    arrow_grid: List[int] = field(default_factory=lambda: [15, 15])
    basename: str = "portrait"

    def validate(self, path: str):
        if self.region is None:
            _fail(f"{path}.region", "required")
        self.region = _box(self.region, f"{path}.region", 2)
        self.grid = _counts(self.grid, f"{path}.grid")
        self.arrow_grid = _counts(self.arrow_grid, f"{path}.arrow_grid")
        if len(self.grid) != 2 or len(self.arrow_grid) != 2:
            _fail(path, "grid and arrow_grid need two counts")
        if not isinstance(self.basename, str) or not self.basename:
            _fail(f"{path}.basename", "expected a nonempty string")


@dataclass
class SweepConfig:
    """
    Parameter grid sweep

    grid maps parameter names to a list of values or to
    {"start": a, "stop": b, "num": k} (inclusive linear spacing).
    """
    grid: Dict[str, Any] = field(default_factory=dict)
    target: str = "classify"
    fixed_point: Optional[str] = None
    observable: Optional[ObservableSpec] = None
    empirical: bool = False
    initial_state: Optional[Vector] = None
    threshold: float = 0.005
    horizon: int = 100_000

    def validate(self, path: str):
        if not isinstance(self.grid, dict):
            _fail(f"{path}.grid", "expected an object of parameter axes")
        for name, axis in self.grid.items():
            self.axis_values(name, f"{path}.grid.{name}")
        if self.target not in SWEEP_TARGETS:
            _fail(f"{path}.target", f"expected one of {', '.join(SWEEP_TARGETS)}, got {self.target!r}")
        if self.observable is not None:
            self.observable = _observable(self.observable, f"{path}.observable")
        if not isinstance(self.empirical, bool):
            _fail(f"{path}.empirical", "expected true or false")
        if self.target == 'classify' and not isinstance(self.fixed_point, str):
            _fail(f"{path}.fixed_point", "expected the name of a known fixed point")
        self.threshold = _real(self.threshold, f"{path}.threshold", positive=True)
        self.horizon = _int(self.horizon, f"{path}.horizon", 1)
        if self.target == 'transient_time':
            if self.initial_state is None:
                _fail(f"{path}.initial_state", "required for target 'transient_time'")
            self.initial_state = _vector(self.initial_state, f"{path}.initial_state")

    def axis_values(self, name: str, path: str = "sweep.grid") -> List[float]:
        axis = self.grid[name]
        if isinstance(axis, list):
            return [_real(v, f"{path}[{i}]") for i, v in enumerate(axis)]
        if isinstance(axis, dict):
            unknown = set(axis) - {'start', 'stop', 'num'}
            if unknown:
                _fail(f"{path}.{sorted(unknown)[0]}", "unknown key")
            for key in ('start', 'stop', 'num'):
                if key not in axis:
                    _fail(f"{path}.{key}", "required")
            start = _real(axis['start'], f"{path}.start")
            stop = _real(axis['stop'], f"{path}.stop")
            num = _int(axis['num'], f"{path}.num", 0)
            if num == 1:
                return [start]
            return [start + (stop - start) * k / (num - 1) for k in range(num)]
        _fail(path, f"expected a list or {{start, stop, num}}, got {axis!r}")


@dataclass
class RunConfig:
    """
    Complete run configuration

    Example:
        >>> config = RunConfig()
        >>> config.model = 'epidemic'
        >>> config.observable = 'I'
        >>> config.search.mode = 'scaling'
    """
    model: str = "example1"
    params: Dict[str, Any] = field(default_factory=dict)
    observable: ObservableSpec = "x"
    seed: int = 0
    output_dir: str = "out"
    jobs: Optional[int] = None
    simulate: SimulateConfig = _section(SimulateConfig)
    transient_time: TransientTimeConfig = _section(TransientTimeConfig)
    classify: ClassifyConfig = _section(ClassifyConfig)
    search: SearchConfig = _section(SearchConfig)
    portrait: PortraitConfig = _section(PortraitConfig)
    sweep: SweepConfig = _section(SweepConfig)

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> 'RunConfig':
        """
        Create configuration from dictionary

        Args:
            config_dict: Nested dictionary; omitted keys keep their defaults

        Returns:
            RunConfig instance

        Raises:
            ConfigError: Unknown key or malformed section
        """
        return _build(cls, config_dict, "")

    @classmethod
    def from_json_file(cls, filepath: str) -> 'RunConfig':
        """
        Load configuration from JSON file

        Raises:
            ConfigError: Unreadable file, invalid JSON or schema violation
        """
        return cls.from_dict(load_json(filepath))

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json_file(self, filepath: str):
        with open(filepath, 'w') as f:
            json.dump(self.to_dict(), f, indent=2)

    def validate(self) -> 'RunConfig':
        """Check top-level values; command blocks are checked by validate_command"""
        if not isinstance(self.model, str):
            _fail("model", f"expected a model id, got {self.model!r}")
        if not isinstance(self.params, dict):
            _fail("params", "expected an object")
        self.observable = _observable(self.observable, "observable")
        self.seed = _int(self.seed, "seed", 0)
        if self.seed >= SEED_LIMIT:
            _fail("seed", "must fit in 64 bits")
        if not isinstance(self.output_dir, str) or not self.output_dir:
            _fail("output_dir", "expected a directory path")
        if self.jobs is not None:
            self.jobs = _int(self.jobs, "jobs", 1)
        return self

    def validate_command(self, command: str) -> 'RunConfig':
        """Validate the top level and the block a command reads"""
        self.validate()
        section = getattr(self, command)
        section.validate(command)
        return self


def _build(cls, data, path: str):
    if not isinstance(data, dict):
        _fail(path or "config", f"expected an object, got {type(data).__name__}")
    known = {f.name: f for f in fields(cls)}
    kwargs = {}
    for key, value in data.items():
        dotted = f"{path}.{key}" if path else key
        if key not in known:
            raise ConfigError(f"{dotted}: unknown key")
        section = known[key].metadata.get('section')
        if section is not None and value is not None:
            kwargs[key] = _build(section, value, dotted)
        else:
            kwargs[key] = copy.deepcopy(value)
    return cls(**kwargs)


def load_json(filepath: str) -> Dict[str, Any]:
    try:
        with open(filepath, 'r') as f:
            data = json.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config {filepath}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"{filepath}: invalid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{filepath}: top level must be an object")
    return data


def merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Recursive dictionary merge; values in override win"""
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict) and key not in ('params', 'grid'):
            out[key] = merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


DEFAULT_CONFIG = RunConfig()
