"""Low-storage third-order Runge-Kutta time integration with scheduled filtering."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .filters import FilterMatrices

# Williamson-style 3-stage low-storage coefficients; third order is verified
# empirically by the order-of-accuracy tests.
RK3_A = (0.0, -5.0 / 9.0, -153.0 / 128.0)
RK3_B = (1.0 / 3.0, 15.0 / 16.0, 8.0 / 15.0)
RK3_C = (0.0, 1.0 / 3.0, 3.0 / 4.0)

FILTER_MODES = ("none", "every_step", "every_stage", "at_times")


@dataclass(frozen=True)
class FilterSchedule:
    """When to apply the nodal filter during a run."""

    mode: str = "none"
    matrices: Optional[FilterMatrices] = None
    times: tuple[float, ...] = ()

    def __post_init__(self):
        if self.mode not in FILTER_MODES:
            raise ValueError(f"unknown filter mode {self.mode!r}")
        if self.mode != "none" and self.matrices is None:
            raise ValueError("filter matrices required unless mode is 'none'")
        if self.mode == "at_times":
            ts = np.asarray(self.times, dtype=float)
            if ts.size == 0 or np.any(np.diff(ts) <= 0) or ts[0] <= 0:
                raise ValueError("filter times must be strictly increasing and positive")


@dataclass(frozen=True)
class RunConfig:
    """Horizon and step-size policy; exactly one of dt / cfl must be set."""

    t_final: float
    dt: Optional[float] = None
    cfl: Optional[float] = None
    record_every: int = 1

    def __post_init__(self):
        if self.t_final <= 0:
            raise ValueError("final time must be positive")
        if (self.dt is None) == (self.cfl is None):
            raise ValueError("set exactly one of dt and cfl")
        if self.dt is not None and self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.cfl is not None and self.cfl <= 0:
            raise ValueError("cfl must be positive")
        if self.record_every < 1:
            raise ValueError("record_every must be >= 1")


@dataclass
class Trajectory:
    """Recorded series, filter events and final state of one run."""

    times: np.ndarray
    series: dict[str, np.ndarray]
    filter_events: list[tuple[float, float, float]]  # (t, norm before, norm after)
    u_final: np.ndarray
    t_final: float
    n_steps: int
    crashed: bool = False
    crash_time: Optional[float] = None


def rk3_step(u, t: float, dt: float, rhs, stage_hook=None):
    """One low-storage three-stage step of u' = rhs(u, t).

    ``stage_hook``, when given, transforms the solution after every stage
    (used for per-stage filtering).
    """
    du = 0.0
    for a, b, c in zip(RK3_A, RK3_B, RK3_C):
        du = a * du + dt * rhs(u, t + c * dt)
        u = u + b * du
        if stage_hook is not None:
            u = stage_hook(u)
    return u


def _default_crash_check(u) -> bool:
    return not np.all(np.isfinite(u))


def integrate(
    u0: np.ndarray,
    rhs: Callable[[np.ndarray, float], np.ndarray],
    config: RunConfig,
    schedule: Optional[FilterSchedule] = None,
    observers: Optional[dict[str, Callable[[float, np.ndarray], float]]] = None,
    norm_fn: Optional[Callable[[np.ndarray], float]] = None,
    crash_check: Optional[Callable[[np.ndarray], bool]] = None,
    dt_fn: Optional[Callable[[np.ndarray], float]] = None,
    t0: float = 0.0,
) -> Trajectory:
    """Advance ``u0`` to ``config.t_final``, filtering per ``schedule``.

    Steps land exactly on the final time (the last step is truncated). With
    ``config.cfl`` set, ``dt_fn`` must map the current state to a step size.
    Scheduled filter times snap to the first step boundary at or beyond
    them; ``norm_fn`` (when given) is evaluated before and after every
    filter application and recorded as a filter event. A crash detected by
    ``crash_check`` (default: any non-finite entry) truncates the run and
    records the crash time.
    """
    schedule = schedule or FilterSchedule()
    observers = observers or {}
    if crash_check is None:
        crash_check = _default_crash_check
    if config.cfl is not None and dt_fn is None:
        raise ValueError("cfl stepping needs dt_fn")
    if schedule.mode == "at_times" and schedule.times[-1] > t0 + config.t_final + 1e-12:
        raise ValueError("scheduled filter times must lie within the horizon")

    fmat = schedule.matrices.F if schedule.matrices is not None else None
    stage_hook = (lambda u: fmat @ u) if schedule.mode == "every_stage" else None

    u = np.array(u0, dtype=float, copy=True)
    t = t0
    t_end = t0 + config.t_final
    times: list[float] = []
    series: dict[str, list[float]] = {name: [] for name in observers}
    events: list[tuple[float, float, float]] = []
    next_time_idx = 0

    def record(now, state):
        times.append(now)
        for name, fn in observers.items():
            series[name].append(float(fn(now, state)))

    def apply_filter(now, state):
        before = norm_fn(state) if norm_fn is not None else np.nan
        state = fmat @ state
        after = norm_fn(state) if norm_fn is not None else np.nan
        events.append((now, before, after))
        return state

    record(t, u)
    step = 0
    crashed = False
    crash_time = None
    eps = 1e-12 * max(1.0, abs(t_end))

    while t < t_end - eps:
        dt = config.dt if config.dt is not None else float(dt_fn(u))
        dt = min(dt, t_end - t)
        u = rk3_step(u, t, dt, rhs, stage_hook=stage_hook)
        t += dt
        step += 1

        if crash_check(u):
            crashed = True
            crash_time = t
            record(t, u)
            break

        if schedule.mode == "every_step":
            u = apply_filter(t, u)
        elif schedule.mode == "at_times":
            while (next_time_idx < len(schedule.times)
                   and t >= schedule.times[next_time_idx] - eps):
                u = apply_filter(t, u)
                next_time_idx += 1

        if step % config.record_every == 0 or t >= t_end - eps:
            record(t, u)

    return Trajectory(
        times=np.asarray(times),
        series={name: np.asarray(vals) for name, vals in series.items()},
        filter_events=events,
        u_final=u,
        t_final=t,
        n_steps=step,
        crashed=crashed,
        crash_time=crash_time,
    )
