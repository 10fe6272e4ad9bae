#!/usr/bin/env python3
"""
Core dynamics for discrete-time maps

State-space representation of maps x(t+1) = f(x(t)) and scalar observables,
trajectory iteration, the one-step difference operator
Δv(x) = v(f(x)) - v(x), transient times and transient-point classification.

Maps and observables evaluate on arrays whose last axis is the state
dimension, so a whole batch of initial states can be iterated at once. All
arithmetic is elementwise, which keeps batched and single-state results
bit-identical.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..errors import TransientScopeError

logger = logging.getLogger(__name__)

DOMAIN_BOUND = 1e6
XV_TOLERANCE = 1e-12


class NonFiniteState(TransientScopeError):
    """An iterate became NaN/inf; carries the step reached and the partial trajectory"""

    def __init__(self, message: str, step: int, trajectory: Optional['Trajectory'] = None):
        super().__init__(message)
        self.step = step
        self.trajectory = trajectory


class DomainEscape(NonFiniteState):
    """An iterate left the map's declared domain box"""
    pass


@dataclass(frozen=True, eq=False)
class MapSystem:
    """
    Discrete-time map f: R^n -> R^n

    Attributes:
        dimension: State dimension n
        func: Vectorized map, (..., n) array -> (..., n) array
        name: Model name (zoo id for built-in models)
        jac: Optional analytic Jacobian, (n,) state -> (n, n) matrix
        params: Named real parameters
        domain_low, domain_high: Domain box corners (default [-1e6, 1e6]^n)
        linear_matrix: Set for maps declared linear, f(x) = A x
        smooth: Caller's assertion that f is C^2 (needed by second-order criteria)
    """
    dimension: int
    func: Callable[[np.ndarray], np.ndarray]
    name: str = "map"
    jac: Optional[Callable[[np.ndarray], np.ndarray]] = None
    params: Mapping[str, float] = field(default_factory=dict)
    domain_low: Optional[Tuple[float, ...]] = None
    domain_high: Optional[Tuple[float, ...]] = None
    linear_matrix: Optional[np.ndarray] = None
    smooth: bool = True

    def __post_init__(self):
        if int(self.dimension) < 1:
            raise ValueError(f"dimension must be positive, got {self.dimension}")
        n = int(self.dimension)
        low = self.domain_low if self.domain_low is not None else (-DOMAIN_BOUND,) * n
        high = self.domain_high if self.domain_high is not None else (DOMAIN_BOUND,) * n
        if len(low) != n or len(high) != n:
            raise ValueError("domain box must have one bound per coordinate")
        object.__setattr__(self, 'domain_low', tuple(float(b) for b in low))
        object.__setattr__(self, 'domain_high', tuple(float(b) for b in high))
        object.__setattr__(self, 'params', dict(self.params))
        if self.linear_matrix is not None:
            matrix = np.array(self.linear_matrix, dtype=float)
            if matrix.shape != (n, n):
                raise ValueError(f"linear_matrix must be {n}x{n}, got {matrix.shape}")
            matrix.setflags(write=False)
            object.__setattr__(self, 'linear_matrix', matrix)

    @classmethod
    def linear(cls, matrix, name: str = "linear_custom", **kwargs) -> 'MapSystem':
        """Build the linear map x -> A x with its exact Jacobian"""
        A = np.array(matrix, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"linear map needs a square matrix, got shape {A.shape}")
        n = A.shape[0]

        def func(x):
            return matvec(A, x)

        def jac(x):
            return A.copy()

        return cls(dimension=n, func=func, name=name, jac=jac,
                   linear_matrix=A, **kwargs)

    @property
    def is_linear(self) -> bool:
        return self.linear_matrix is not None

    @property
    def low(self) -> np.ndarray:
        return np.asarray(self.domain_low)

    @property
    def high(self) -> np.ndarray:
        return np.asarray(self.domain_high)

    def evaluate(self, x) -> np.ndarray:
        """Apply f to a state or a batch of states"""
        arr = np.asarray(x, dtype=float)
        if arr.shape[-1:] != (self.dimension,):
            raise ValueError(f"{self.name}: expected states with last axis {self.dimension}, "
                             f"got shape {arr.shape}")
        with np.errstate(all='ignore'):
            return np.asarray(self.func(arr), dtype=float)

    def contains(self, x) -> np.ndarray:
        """Boolean mask of states inside the domain box (NaN is never inside)"""
        arr = np.asarray(x, dtype=float)
        return np.all((arr >= self.low) & (arr <= self.high), axis=-1)


@dataclass(frozen=True, eq=False)
class Observable:
    """
    Scalar observable v: R^n -> R

    Linear observables v(x) = c.x + offset keep their coefficients so that
    the Perron-Frobenius criterion can recognise them.
    """
    func: Callable[[np.ndarray], np.ndarray]
    name: str = "v"
    grad: Optional[Callable[[np.ndarray], np.ndarray]] = None
    coefficients: Optional[np.ndarray] = None
    offset: float = 0.0

    @classmethod
    def linear(cls, coefficients: Sequence[float], offset: float = 0.0,
               name: Optional[str] = None) -> 'Observable':
        c = np.array(coefficients, dtype=float).reshape(-1)
        c.setflags(write=False)
        b = float(offset)

        def func(x):
            arr = np.asarray(x, dtype=float)
            total = np.full(arr.shape[:-1], b)
            # explicit per-coordinate sum keeps batched and single results identical
            for i, ci in enumerate(c):
                if ci != 0.0:
                    total = total + ci * arr[..., i]
            return total

        def grad(x):
            return c.copy()

        if name is None:
            name = "linear(" + ",".join(format(ci, 'g') for ci in c) + ")"
        return cls(func=func, name=name, grad=grad, coefficients=c, offset=b)

    @classmethod
    def coordinate(cls, index: int, dimension: int, name: Optional[str] = None) -> 'Observable':
        """v(x) = x_index"""
        c = np.zeros(dimension)
        c[index] = 1.0
        return cls.linear(c, name=name or f"x{index + 1}")

    @property
    def is_linear(self) -> bool:
        return self.coefficients is not None

    def evaluate(self, x) -> np.ndarray:
        with np.errstate(all='ignore'):
            return np.asarray(self.func(np.asarray(x, dtype=float)), dtype=float)

    def affine(self, alpha: float, beta: float = 0.0) -> 'Observable':
        """The observable alpha * v + beta"""
        alpha = float(alpha)
        beta = float(beta)
        if alpha == 0.0:
            raise ValueError("affine rescaling needs alpha != 0")
        if self.is_linear:
            return Observable.linear(alpha * self.coefficients, alpha * self.offset + beta,
                                     name=f"{alpha:g}*{self.name}+{beta:g}")
        base = self

        def func(x):
            return alpha * base.func(x) + beta

        grad = None
        if base.grad is not None:
            def grad(x):
                return alpha * np.asarray(base.grad(x), dtype=float)

        return Observable(func=func, name=f"{alpha:g}*{self.name}+{beta:g}", grad=grad)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """States x_0..x_T with v(x_t) and Δv(x_t) for t < T"""
    states: np.ndarray
    observable_values: np.ndarray
    deltas: np.ndarray

    def __post_init__(self):
        for arr in (self.states, self.observable_values, self.deltas):
            arr.setflags(write=False)

    @property
    def steps(self) -> int:
        return len(self.states) - 1


class TransientStatus(Enum):
    Finite = "Finite"
    ExceededHorizon = "ExceededHorizon"


@dataclass(frozen=True)
class TransientTimeResult:
    """(v, s)-transient time, or a marker that none was observed up to the horizon"""
    status: TransientStatus
    threshold: float
    horizon: int
    time: Optional[int] = None
    trigger_delta: Optional[float] = None

    @property
    def is_finite(self) -> bool:
        return self.status is TransientStatus.Finite

    def to_dict(self) -> Dict[str, object]:
        return {
            'status': self.status.value,
            'time': self.time,
            'threshold': self.threshold,
            'horizon': self.horizon,
            'trigger_delta': self.trigger_delta,
        }


class TransientPointClass(Enum):
    IsTransientPoint = "IsTransientPoint"
    TooFast = "TooFast"
    NotObservedFinite = "NotObservedFinite"


# === Helpers ===

def matvec(A: np.ndarray, x) -> np.ndarray:
    """Batched A @ x with a fixed per-row summation order"""
    arr = np.asarray(x, dtype=float)
    out = np.zeros(arr.shape[:-1] + (A.shape[0],))
    for j in range(A.shape[1]):
        out = out + arr[..., j, None] * A[:, j]
    return out


def as_state(system: MapSystem, xi) -> np.ndarray:
    """Validate one initial state against the map's dimension and domain"""
    x = np.array(xi, dtype=float).reshape(-1)
    if x.shape != (system.dimension,):
        raise ValueError(f"{system.name}: state must have {system.dimension} coordinates, "
                         f"got {x.size}")
    if not np.all(np.isfinite(x)):
        raise NonFiniteState(f"{system.name}: initial state {x} is not finite", step=0)
    if not system.contains(x):
        raise DomainEscape(f"{system.name}: initial state {x} outside the domain box", step=0)
    return x


def _failure(system: MapSystem, state: np.ndarray, step: int,
             trajectory: Optional[Trajectory] = None) -> NonFiniteState:
    if not np.all(np.isfinite(state)):
        return NonFiniteState(f"{system.name}: non-finite iterate at step {step}",
                              step=step, trajectory=trajectory)
    return DomainEscape(f"{system.name}: iterate left the domain box at step {step}",
                        step=step, trajectory=trajectory)


def _orbit_failure(system: MapSystem, x0: np.ndarray, step: int, message: str) -> NonFiniteState:
    """Replay a single orbit to the step a batched scan flagged and type the failure"""
    state = x0
    for _ in range(step):
        state = system.evaluate(state)
    escaped = bool(np.all(np.isfinite(state))) and not system.contains(state)
    kind = DomainEscape if escaped else NonFiniteState
    return kind(message, step=step)


# === Operations ===

def iterate(system: MapSystem, xi, steps: int, observable: Observable) -> Trajectory:
    """
    Iterate the map from xi

    Args:
        system: Map to iterate
        xi: Initial state
        steps: Number of map evaluations (>= 1)
        observable: Observable recorded along the orbit

    Returns:
        Trajectory with steps + 1 states

    Raises:
        NonFiniteState: An iterate blew up; the partial trajectory is attached
    """
    if int(steps) < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    steps = int(steps)
    x0 = as_state(system, xi)
    states = np.empty((steps + 1, system.dimension))
    states[0] = x0
    for t in range(steps):
        nxt = system.evaluate(states[t])
        if not system.contains(nxt):
            partial = _trajectory_from_states(states[:t + 1].copy(), observable)
            raise _failure(system, nxt, t + 1, partial)
        states[t + 1] = nxt
    return _trajectory_from_states(states, observable)


def _trajectory_from_states(states: np.ndarray, observable: Observable) -> Trajectory:
    values = observable.evaluate(states)
    deltas = values[1:] - values[:-1]
    return Trajectory(states=states, observable_values=values, deltas=deltas)


def delta_v(system: MapSystem, v: Observable, x) -> float:
    """Δv(x) = v(f(x)) - v(x) with a single evaluation of f"""
    state = as_state(system, x)
    fx = system.evaluate(state)
    if not system.contains(fx):
        raise _failure(system, fx, 1)
    return float(v.evaluate(fx) - v.evaluate(state))


def first_triggers(system: MapSystem, v: Observable, states, s: float,
                   horizon: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Batched (v, s)-transient times

    Args:
        states: (m, n) initial states
        s: Threshold (strict comparison |Δv| > s)
        horizon: Last step index examined

    Returns:
        (times, trigger_deltas, failed_at): times[k] = -1 when no trigger was
        observed; failed_at[k] is the index of the first non-finite or
        out-of-domain iterate, -1 when the orbit stayed valid
    """
    x = np.array(states, dtype=float).reshape(-1, system.dimension)
    m = len(x)
    vx = v.evaluate(x)
    times = np.full(m, -1, dtype=np.int64)
    trigger = np.full(m, np.nan)
    failed = np.full(m, -1, dtype=np.int64)
    active = np.arange(m)
    for t in range(int(horizon) + 1):
        if active.size == 0:
            break
        fx = system.evaluate(x[active])
        vf = v.evaluate(fx)
        d = vf - vx[active]
        ok = system.contains(fx) & np.isfinite(d)
        hit = ok & (np.abs(d) > s)
        times[active[hit]] = t
        trigger[active[hit]] = np.abs(d[hit])
        failed[active[~ok]] = t + 1
        keep = ok & ~hit
        idx = active[keep]
        x[idx] = fx[keep]
        vx[idx] = vf[keep]
        active = idx
    return times, trigger, failed


def running_delta_max(system: MapSystem, v: Observable, states,
                      horizon: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Batched max over t in 0..horizon of |Δv(f^t(x))|

    Orbits that blow up or leave the domain keep the maximum reached before
    the failing step.

    Returns:
        (maxima, failed_at) with failed_at = -1 for orbits that stayed valid
    """
    x = np.array(states, dtype=float).reshape(-1, system.dimension)
    m = len(x)
    vx = v.evaluate(x)
    best = np.zeros(m)
    failed = np.full(m, -1, dtype=np.int64)
    active = np.arange(m)
    for t in range(int(horizon) + 1):
        if active.size == 0:
            break
        whole = active.size == m
        fx = system.evaluate(x if whole else x[active])
        vf = v.evaluate(fx)
        d = np.abs(vf - (vx if whole else vx[active]))
        ok = system.contains(fx) & np.isfinite(d)
        if whole and ok.all():
            np.maximum(best, d, out=best)
            x = fx
            vx = vf
            continue
        failed[active[~ok]] = t + 1
        idx = active[ok]
        best[idx] = np.maximum(best[idx], d[ok])
        x[idx] = fx[ok]
        vx[idx] = vf[ok]
        active = idx
    return best, failed


def transient_time(system: MapSystem, v: Observable, xi, s: float,
                   horizon: int) -> TransientTimeResult:
    """
    (v, s)-transient time of xi: the first t <= horizon with |Δv(f^t(xi))| > s

    Raises:
        NonFiniteState: The orbit blew up before triggering (step index attached);
            DomainEscape when it left the domain box instead
    """
    if not s > 0:
        raise ValueError(f"threshold s must be positive, got {s}")
    if int(horizon) < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    x0 = as_state(system, xi)
    times, trigger, failed = first_triggers(system, v, x0[None, :], s, horizon)
    if failed[0] >= 0:
        raise _orbit_failure(system, x0, int(failed[0]),
                             f"{system.name}: orbit of {x0} failed at step {failed[0]} "
                             f"before |Δv| exceeded {s}")
    if times[0] >= 0:
        return TransientTimeResult(TransientStatus.Finite, float(s), int(horizon),
                                   time=int(times[0]), trigger_delta=float(trigger[0]))
    return TransientTimeResult(TransientStatus.ExceededHorizon, float(s), int(horizon))


def classify_transient_point(system: MapSystem, v: Observable, xi, s: float, T: int,
                             horizon: int) -> TransientPointClass:
    """
    Decide whether xi is a (v, s, T)-transient point, i.e. T < T_s(xi) < inf

    An orbit that never triggers within the horizon is reported as
    NotObservedFinite: an infinite transient time cannot be certified by
    simulation.
    """
    if int(horizon) <= int(T):
        raise ValueError(f"horizon ({horizon}) must exceed T ({T})")
    result = transient_time(system, v, xi, s, horizon)
    if not result.is_finite:
        return TransientPointClass.NotObservedFinite
    if result.time > T:
        return TransientPointClass.IsTransientPoint
    return TransientPointClass.TooFast


def candidate_residual(system: MapSystem, v: Observable, xi, horizon: int) -> float:
    """
    max over t in 0..horizon of |Δv(f^t(xi))|

    A value within 1e-12 of zero is the numeric stand-in for membership of
    the candidate set X^v.
    """
    if int(horizon) < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    x0 = as_state(system, xi)
    best, failed = running_delta_max(system, v, x0[None, :], horizon)
    if failed[0] >= 0:
        raise _orbit_failure(system, x0, int(failed[0]),
                             f"{system.name}: orbit of {x0} failed at step {failed[0]}")
    return float(best[0])


def in_candidate_set(system: MapSystem, v: Observable, xi, horizon: int,
                     tol: float = XV_TOLERANCE) -> bool:
    return candidate_residual(system, v, xi, horizon) <= tol
