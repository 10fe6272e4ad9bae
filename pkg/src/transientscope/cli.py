#!/usr/bin/env python3
"""
transientscope command line

    transientscope [--config PATH] [--preset NAME] [--seed U64] [--out DIR] [--jobs N] COMMAND

Commands: simulate, transient-time, classify, search, portrait, sweep, zoo.

Exit codes:
    0  success
    2  invalid configuration or parameters
    3  non-finite state, domain escape or eigensolver failure
    4  search candidate outside the candidate set X^v
"""
import argparse
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
import itertools
import json
import logging
import os
from pathlib import Path
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import RunConfig, load_json, merge
from .core.dynamics import (
    NonFiniteState, TransientPointClass, iterate, transient_time,
)
from .core.run_journal import RunJournal
from .criteria.centers import classify
from .criteria.fixed_points import find_fixed_points, fixed_point_at
from .errors import ConfigError, TransientScopeError
from .formats.records import transient_time_record, verdict_record, write_json
from .formats.tables import (
    format_cell, write_profile, write_rows, write_scaling, write_trajectory,
    write_transient_points,
)
from .linalg.spectral import ConvergenceFailure
from .plotting.svg import plot_deltas, plot_states
from .portrait.export import export_portrait
from .portrait.augmented import build_portrait
from .search.empirical import (
    CandidateNotInXv, EmpiricalSettings, escape_profile, honeymoon_scaling,
    transient_point_search,
)
from .version import __version__
from .zoo.catalog import build, describe, list_models, resolve_observable
from .zoo.presets import get_preset

logger = logging.getLogger(__name__)

LOG_ENV = "TRANSIENT_SCOPE_LOG"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_PRECONDITION = 4

DEFAULT_REGION_PAD = 1.0
DEFAULT_SEEDS_PER_AXIS = 5


def exit_code_for(error: BaseException) -> int:
    """Map an exception onto the exit-code contract"""
    if isinstance(error, CandidateNotInXv):
        return EXIT_PRECONDITION
    if isinstance(error, (NonFiniteState, ConvergenceFailure)):
        return EXIT_NUMERIC
    if isinstance(error, (ConfigError, ValueError)):
        return EXIT_CONFIG
    return EXIT_ERROR


def configure_logging():
    """Level from TRANSIENT_SCOPE_LOG (default WARNING), written to stderr"""
    name = os.environ.get(LOG_ENV, "WARNING").upper()
    level = getattr(logging, name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    root = logging.getLogger("transientscope")
    root.setLevel(level)
    if not root.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        root.addHandler(handler)


# === Configuration ===

def resolve_config(args: argparse.Namespace) -> RunConfig:
    """
    Merge preset, config file and CLI flags into one RunConfig

    Precedence: CLI flag > config file > preset > dataclass default.
    """
    data: Dict[str, Any] = {}
    if args.preset:
        data = merge(data, get_preset(args.preset))
    if args.config:
        data = merge(data, load_json(args.config))
    if args.seed is not None:
        data['seed'] = args.seed
    if args.out is not None:
        data['output_dir'] = args.out
    if args.jobs is not None:
        data['jobs'] = args.jobs
    return RunConfig.from_dict(data)


def observable_label(spec) -> str:
    if isinstance(spec, str):
        return spec
    return "linear:" + ",".join(format_cell(c) for c in spec)


def _model(config: RunConfig, observable=None):
    system, entry = build(config.model, config.params)
    spec = config.observable if observable is None else observable
    return system, entry, resolve_observable(entry, spec), observable_label(spec)


def _check_state(system, state: Sequence[float], path: str):
    if len(state) != system.dimension:
        raise ConfigError(f"{path}: {system.name} needs {system.dimension} coordinates, "
                          f"got {len(state)}")


def _check_box(system, box, path: str):
    if len(box) != system.dimension:
        raise ConfigError(f"{path}: {system.name} needs {system.dimension} axes, got {len(box)}")


def _output_dir(config: RunConfig) -> Path:
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


# === Commands ===

def cmd_simulate(config: RunConfig, journal: RunJournal) -> int:
    """Iterate every configured initial state; traj.csv plus traj_<k>.csv and SVGs"""
    config.validate_command('simulate')
    block = config.simulate
    system, entry, v, label = _model(config)
    states = block.states()
    for k, state in enumerate(states):
        _check_state(system, state, f"simulate.states[{k}]")
    out = _output_dir(config)

    trajectories = []
    for k, state in enumerate(states):
        path = out / ("traj.csv" if k == 0 else f"traj_{k}.csv")
        try:
            traj = iterate(system, state, block.steps, v)
        except NonFiniteState as e:
            if e.trajectory is not None:
                journal.artifact(write_trajectory(path, e.trajectory), 'csv')
            raise
        journal.artifact(write_trajectory(path, traj), 'csv')
        trajectories.append(traj)

    if block.plot:
        first = trajectories[0]
        crossing = None
        if block.first_crossing is not None:
            rule = block.first_crossing
            if rule.component >= system.dimension:
                raise ConfigError(f"simulate.first_crossing.component: {system.name} has "
                                  f"{system.dimension} components")
            hits = np.flatnonzero(first.states[:, rule.component] >= rule.level)
            crossing = int(hits[0]) if len(hits) else None
        marker = None
        if block.threshold is not None:
            hits = np.flatnonzero(np.abs(first.deltas) > block.threshold)
            marker = int(hits[0]) if len(hits) else None
        names = [f"x{i + 1}" for i in range(system.dimension)]
        title = f"{system.name}, v = {label}"
        journal.artifact(plot_states(out / "traj.states.svg", trajectories, names, crossing,
                                     title), 'svg')
        journal.artifact(plot_deltas(out / "traj.delta.svg", first, block.threshold, marker,
                                     title), 'svg')
    logger.info("simulated %d trajectories of %d steps", len(trajectories), block.steps)
    return EXIT_OK


def cmd_transient_time(config: RunConfig, journal: RunJournal) -> int:
    """Transient time of one initial state; transient_time.json"""
    config.validate_command('transient_time')
    block = config.transient_time
    system, entry, v, label = _model(config)
    _check_state(system, block.initial_state, "transient_time.initial_state")
    out = _output_dir(config)

    result = transient_time(system, v, block.initial_state, block.threshold, block.horizon)
    classification = None
    if block.T is not None:
        if not result.is_finite:
            classification = TransientPointClass.NotObservedFinite.value
        elif result.time > block.T:
            classification = TransientPointClass.IsTransientPoint.value
        else:
            classification = TransientPointClass.TooFast.value
    record = transient_time_record(result, block.initial_state, classification, block.T)
    record['model'] = config.model
    record['observable'] = label
    journal.verdict(record)
    journal.artifact(write_json(out / "transient_time.json", record), 'json')
    return EXIT_OK


def _empirical_settings(block, seed: int) -> EmpiricalSettings:
    return EmpiricalSettings(radii=tuple(block.radii), horizon=block.horizon,
                             samples=block.samples, seed=seed)


def _default_region(system, entry) -> List[List[float]]:
    """Box around the known fixed points, clipped to the domain"""
    points = np.array(list(entry.known_fixed_points.values()), dtype=float).reshape(
        -1, system.dimension)
    if len(points) == 0:
        points = np.zeros((1, system.dimension))
    low = np.maximum(points.min(axis=0) - DEFAULT_REGION_PAD, system.low)
    high = np.minimum(points.max(axis=0) + DEFAULT_REGION_PAD, system.high)
    return [[float(a), float(b)] for a, b in zip(low, high)]


def _label_for(entry, location: np.ndarray) -> Optional[str]:
    for name, point in entry.known_fixed_points.items():
        point = np.asarray(point, dtype=float)
        if np.linalg.norm(point - location) <= 1e-6 * (1.0 + np.linalg.norm(point)):
            return name
    return None


def cmd_classify(config: RunConfig, journal: RunJournal) -> int:
    """Find fixed points in a box and classify each; verdicts.json"""
    config.validate_command('classify')
    block = config.classify
    system, entry, v, label = _model(config)
    region = block.region if block.region is not None else _default_region(system, entry)
    _check_box(system, region, "classify.region")
    grid = block.grid if block.grid is not None else [DEFAULT_SEEDS_PER_AXIS] * system.dimension
    if len(grid) != system.dimension:
        raise ConfigError(f"classify.grid: {system.name} needs {system.dimension} counts")
    out = _output_dir(config)

    settings = _empirical_settings(block.empirical, config.seed)
    records = []
    for fp in find_fixed_points(system, region, grid, block.tol):
        verdict = classify(system, fp, v, settings, use_empirical=block.empirical.enabled)
        record = verdict_record(config.model, label, fp, verdict, _label_for(entry, fp.location))
        journal.verdict(record)
        records.append(record)
        logger.info("%s at %s: %s (%s)", record['label'] or "fixed point",
                    list(fp.location), verdict.decision.value, verdict.criterion.value)
    journal.artifact(write_json(out / "verdicts.json", records), 'json')
    return EXIT_OK


def cmd_search(config: RunConfig, journal: RunJournal) -> int:
    """Escape profile, transient-point search or honeymoon scaling table"""
    config.validate_command('search')
    block = config.search
    system, entry, v, label = _model(config, block.observable)
    out = _output_dir(config)

    if block.mode == 'profile':
        _check_state(system, block.candidate, "search.candidate")
        profile = escape_profile(system, v, block.candidate, block.radii, block.horizon,
                                 block.samples, config.seed)
        path = write_profile(out / "profile.csv", profile)
    elif block.mode == 'points':
        _check_box(system, block.region, "search.region")
        hits = transient_point_search(system, v, block.region, block.threshold, block.T,
                                      block.horizon, block.budget, config.seed)
        path = write_transient_points(out / "transient_points.csv", hits, system.dimension)
    else:
        _check_state(system, block.candidate, "search.candidate")
        _check_state(system, block.direction, "search.direction")
        rows = honeymoon_scaling(system, v, block.candidate, block.direction, block.epsilons,
                                 block.threshold, block.horizon)
        path = write_scaling(out / "scaling.csv", rows)
    journal.artifact(path, 'csv')
    return EXIT_OK


def cmd_portrait(config: RunConfig, journal: RunJournal) -> int:
    """Augmented phase portrait CSV layers and SVG"""
    config.validate_command('portrait')
    block = config.portrait
    system, entry, v, label = _model(config)
    if system.dimension != 2:
        raise ConfigError(f"portrait: {system.name} is {system.dimension}-dimensional, "
                          f"portraits need a planar map")
    out = _output_dir(config)
    data = build_portrait(system, block.region, block.grid, block.arrow_grid)
    for path in export_portrait(data, out / block.basename):
        journal.artifact(path, path.suffix.lstrip('.'))
    return EXIT_OK


# === Sweep ===

def sweep_cell(task: Tuple[str, Dict[str, Any], Any, Dict[str, Any], Dict[str, Any], int]
               ) -> Dict[str, Any]:
    """
    Evaluate one grid cell

    Module-level so worker processes can unpickle it. Failures are returned
    in the row instead of raised.

    Returns:
        Flat dictionary of result columns
    """
    model_id, params, observable, sweep, empirical, seed = task
    row: Dict[str, Any] = {}
    try:
        system, entry = build(model_id, params)
        v = resolve_observable(entry, observable)
        row.update({f"derived:{k}": val for k, val in entry.derived.items()})
        if sweep['target'] == 'transient_time':
            result = transient_time(system, v, sweep['initial_state'], sweep['threshold'],
                                    sweep['horizon'])
            row.update({'status': result.status.value, 'time': result.time,
                        'trigger_delta': result.trigger_delta})
        else:
            name = sweep['fixed_point']
            if name not in entry.known_fixed_points:
                raise ValueError(f"fixed point '{name}' does not exist at these parameters")
            fp = fixed_point_at(system, entry.known_fixed_points[name])
            settings = EmpiricalSettings(radii=tuple(empirical['radii']),
                                         horizon=empirical['horizon'],
                                         samples=empirical['samples'], seed=seed)
            verdict = classify(system, fp, v, settings, use_empirical=sweep['empirical'])
            row.update({
                'status': 'ok',
                'decision': verdict.decision.value,
                'criterion': verdict.criterion.value,
                'empirical': verdict.empirical,
                'stability': fp.stability.value,
                'spectral_radius': fp.spectral.spectral_radius,
            })
    except (TransientScopeError, ValueError) as e:
        row['status'] = 'error'
        row['error'] = f"{type(e).__name__}: {e}"
    return row


def sweep_columns(target: str) -> List[str]:
    if target == 'transient_time':
        return ['status', 'time', 'trigger_delta']
    return ['status', 'decision', 'criterion', 'empirical', 'stability', 'spectral_radius']


def cmd_sweep(config: RunConfig, journal: RunJournal) -> int:
    """Cartesian parameter grid; sweep.csv in grid order"""
    config.validate_command('sweep')
    block = config.sweep
    # model id, base params and observable are checked once up front
    _, entry, _, _ = _model(config, block.observable)
    observable = block.observable if block.observable is not None else config.observable
    out = _output_dir(config)

    names = list(block.grid)
    axes = [block.axis_values(name, f"sweep.grid.{name}") for name in names]
    cells = list(itertools.product(*axes)) if names else []
    sweep = {
        'target': block.target,
        'fixed_point': block.fixed_point,
        'empirical': block.empirical,
        'initial_state': block.initial_state,
        'threshold': block.threshold,
        'horizon': block.horizon,
    }
    if block.empirical:
        config.classify.empirical.validate("classify.empirical")
    empirical = asdict(config.classify.empirical)
    tasks = [(config.model, merge(config.params, dict(zip(names, cell))), observable,
              sweep, empirical, config.seed) for cell in cells]

    jobs = config.jobs or os.cpu_count() or 1
    if jobs == 1 or len(tasks) <= 1:
        results = [sweep_cell(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(sweep_cell, tasks))

    derived = sorted({key for row in results for key in row if key.startswith('derived:')})
    header = names + sweep_columns(block.target) + derived + ['error']
    rows = [list(cell) + [row.get(col) for col in header[len(names):]]
            for cell, row in zip(cells, results)]
    failed = sum(1 for row in results if row.get('status') == 'error')
    if failed:
        logger.warning("%d of %d sweep cells failed", failed, len(results))
    journal.artifact(write_rows(out / "sweep.csv", header, rows), 'csv')
    return EXIT_OK


# === Zoo ===

def cmd_zoo(args: argparse.Namespace) -> int:
    if args.zoo_command == 'list':
        print(json.dumps(list_models()))
    else:
        print(json.dumps(describe(args.model_id), indent=2))
    return EXIT_OK


COMMANDS = {
    'simulate': cmd_simulate,
    'transient-time': cmd_transient_time,
    'classify': cmd_classify,
    'search': cmd_search,
    'portrait': cmd_portrait,
    'sweep': cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transientscope",
        description="Transient centers and long transients of discrete-time maps",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="JSON run configuration")
    parser.add_argument("--preset", help="named preset (fig2, fig3, fig4, fig4b, fig6, fig7a)")
    parser.add_argument("--seed", type=int, help="64-bit sampling seed (CLI > config > preset)")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--jobs", type=int, help="sweep worker processes (default: all cores)")

    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("simulate", help="iterate the map and write trajectories")
    commands.add_parser("transient-time", help="transient time of one initial state")
    commands.add_parser("classify", help="find fixed points and decide transient centers")
    commands.add_parser("search", help="escape profiles, transient points, scaling tables")
    commands.add_parser("portrait", help="augmented phase portrait of a planar map")
    commands.add_parser("sweep", help="parameter grid sweep")
    zoo = commands.add_parser("zoo", help="built-in models")
    zoo_commands = zoo.add_subparsers(dest="zoo_command", required=True)
    zoo_commands.add_parser("list", help="model ids")
    show = zoo_commands.add_parser("show", help="catalog entry of a model")
    show.add_argument("model_id")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging()

    if args.command == 'zoo':
        try:
            return cmd_zoo(args)
        except ConfigError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_CONFIG

    try:
        config = resolve_config(args)
        config.validate()
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    with RunJournal(config.output_dir) as journal:
        journal.run_start(args.command, config.to_dict())
        try:
            code = COMMANDS[args.command](config, journal)
        except (TransientScopeError, ValueError) as e:
            code = exit_code_for(e)
            journal.failure(e, code)
            print(f"error: {e}", file=sys.stderr)
        except OSError as e:
            code = EXIT_ERROR
            journal.failure(e, code)
            print(f"error: {e}", file=sys.stderr)
        journal.run_end(code)
    return code


if __name__ == "__main__":
    sys.exit(main())
