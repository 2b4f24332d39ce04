"""Experiment drivers: convergence, variable-speed filtering, Burgers energy study.

Each driver returns a result object holding the raw arrays plus an
:class:`ExperimentRecord` whose rows serialize to CSV with the fixed schema
``experiment,variant,N,dt,t_or_N,value,extra``. Rows carry their full
parameter tuple so the files are self-describing, and nothing
time-of-day-dependent is written, so identical invocations produce
byte-identical output.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .equations import ProblemSpec, energy, initial_state, make_rhs
from .filters import FilterSpec, build_filter
from .fv import FvConfig, solve_fv_burgers
from .operators import OperatorSet, build_operators, interpolation_matrix
from .timestepping import FilterSchedule, RunConfig, Trajectory, integrate

CSV_HEADER = "experiment,variant,N,dt,t_or_N,value,extra"

BURGERS_VARIANTS = ("cons_unfiltered", "cons_filtered", "skew_unfiltered", "skew_filtered")

# energy blow-up factor treated as a crash
BLOWUP_FACTOR = 1e6


# ---------------------------------------------------------------------------
# problem data
# ---------------------------------------------------------------------------

PULSE_ZETA = np.log(2.0) / 0.2**2


def gaussian_pulse(x, t: float):
    """Right-moving Gaussian pulse used by the convergence study."""
    return np.exp(-PULSE_ZETA * (x - 0.25 - t) ** 2)


def varspeed_wave_speed(x):
    """sin(pi x - 1) / pi: positive at both endpoints, sign change inside."""
    return np.sin(np.pi * x - 1.0) / np.pi


def varspeed_exact(x, t: float):
    """Closed-form solution of the variable-speed problem for u(x,0) = sin(pi x)."""
    return np.sin(2.0 * np.arctan(np.exp(-t) * np.tan(0.5 * (np.pi * x - 1.0))) + 1.0)


def burgers_initial(x):
    """(1 + cos(pi x)) / 5 on [0, 2]; steepens into a shock."""
    return 0.2 * (1.0 + np.cos(np.pi * x))


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------

def error_linf(u: np.ndarray, exact_fn, nodes_physical: np.ndarray) -> float:
    """Max-abs nodal mismatch against a reference function of x."""
    return float(np.max(np.abs(u - exact_fn(nodes_physical))))


def total_variation(u: np.ndarray) -> float:
    """Sum of absolute differences of adjacent nodal values."""
    return float(np.sum(np.abs(np.diff(u))))


def shock_position(x: np.ndarray, u: np.ndarray) -> float:
    """Midpoint of the steepest descent between adjacent samples.

    Descents only: compressive shocks always drop, which keeps spurious
    ascending wiggles from being mistaken for the shock.
    """
    i = int(np.argmin(np.diff(u)))
    return 0.5 * (x[i] + x[i + 1])


def min_node_spacing(ops: OperatorSet, problem: ProblemSpec) -> float:
    """Smallest physical node distance; sets the CFL scale."""
    return 0.5 * problem.dx * float(np.min(np.diff(ops.nodes)))


def filter_tag(spec: Optional[FilterSpec]) -> str:
    """Compact colon-separated parameter tag (CSV cells must stay comma-free)."""
    if spec is None:
        return "unfiltered"
    clip = "clip" if spec.clip_highest else "noclip"
    return f"filtered:a{spec.alpha:g}:s{spec.s}:nc{spec.nc}:{clip}"


# ---------------------------------------------------------------------------
# records and CSV
# ---------------------------------------------------------------------------

@dataclass
class ExperimentRecord:
    """One experiment's series plus the parameters that produced it.

    Rows are (N, dt, t_or_N, value, extra); for CFL-adaptive runs the dt
    slot carries the CFL number instead of a fixed step size.
    """

    experiment: str
    variant: str
    rows: list = field(default_factory=list)
    crash_time: Optional[float] = None
    wall_time: float = 0.0

    def add(self, n: int, dt: float, t_or_n: float, value: float, extra: str = ""):
        self.rows.append((n, dt, t_or_n, value, extra))


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def write_csv(path, records: Sequence[ExperimentRecord]) -> None:
    """Write records with the fixed schema; UTF-8, LF, 17 significant digits."""
    lines = [CSV_HEADER]
    for rec in records:
        for n, dt, t_or_n, value, extra in rec.rows:
            lines.append(
                f"{rec.experiment},{rec.variant},{int(n)},{_fmt(dt)},"
                f"{_fmt(t_or_n)},{_fmt(value)},{extra}"
            )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# drivers
# ---------------------------------------------------------------------------

@dataclass
class ConvergenceResult:
    ns: list
    errors: list
    record: ExperimentRecord


def run_convergence(n_list: Sequence[int], dt: float,
                    filter_spec: Optional[FilterSpec] = FilterSpec(),
                    t_final: float = 0.5) -> ConvergenceResult:
    """Advection of the Gaussian pulse on [0, 1] with per-step filtering.

    Records the final-time max-norm error for each polynomial degree.
    Boundary data is the exact pulse trace at the inflow.
    """
    if not all(7 <= n <= 64 for n in n_list):
        raise ValueError("convergence sweep degrees must lie in [7, 64]")
    t_start = time.perf_counter()
    record = ExperimentRecord("convergence", filter_tag(filter_spec))
    ns, errors = [], []
    for n in n_list:
        problem = ProblemSpec(
            pde="advection_constant", domain=(0.0, 1.0), bc="inflow_dirichlet",
            wave_speed=1.0, inflow=lambda t: float(gaussian_pulse(0.0, t)),
        )
        ops = build_operators(n)
        schedule = FilterSchedule()
        if filter_spec is not None:
            schedule = FilterSchedule(mode="every_step",
                                      matrices=build_filter(ops, filter_spec))
        x = problem.physical_nodes(ops.nodes)
        traj = integrate(
            np.asarray(gaussian_pulse(x, 0.0), dtype=float),
            make_rhs(problem, ops),
            RunConfig(t_final=t_final, dt=dt, record_every=10**9),
            schedule=schedule,
        )
        err = error_linf(traj.u_final, lambda xx: gaussian_pulse(xx, t_final), x)
        ns.append(n)
        errors.append(err)
        record.add(n, dt, n, err, "linf_error")
    record.wall_time = time.perf_counter() - t_start
    return ConvergenceResult(ns=ns, errors=errors, record=record)


@dataclass
class VarspeedResult:
    x: np.ndarray
    u_final: np.ndarray
    linf_error: float
    tv: float
    trajectory: Trajectory
    record: ExperimentRecord


def run_varspeed(n: int = 256, dt: float = 1.0 / 2000.0, filtered: bool = True,
                 filter_spec: FilterSpec = FilterSpec(),
                 t_final: float = 4.0) -> VarspeedResult:
    """Variable-speed advection on [-1, 1] with steep-gradient formation.

    Runs to t_final with or without per-step filtering; records the final
    nodal profile, the max-norm error against the closed-form solution and
    the total variation of the nodal values.
    """
    t_start = time.perf_counter()
    problem = ProblemSpec(
        pde="advection_variable", domain=(-1.0, 1.0), bc="inflow_dirichlet",
        wave_speed_fn=varspeed_wave_speed,
        inflow=lambda t: float(varspeed_exact(-1.0, t)),
    )
    ops = build_operators(n)
    spec = filter_spec if filtered else None
    schedule = FilterSchedule()
    if filtered:
        schedule = FilterSchedule(mode="every_step",
                                  matrices=build_filter(ops, filter_spec))
    x = problem.physical_nodes(ops.nodes)
    traj = integrate(
        np.sin(np.pi * x),
        make_rhs(problem, ops),
        RunConfig(t_final=t_final, dt=dt, record_every=10**9),
        schedule=schedule,
    )
    err = error_linf(traj.u_final, lambda xx: varspeed_exact(xx, t_final), x)
    tv = total_variation(traj.u_final)

    record = ExperimentRecord("varspeed", filter_tag(spec))
    for xi, ui in zip(x, traj.u_final):
        record.add(n, dt, xi, ui, "solution")
    record.add(n, dt, t_final, err, "linf_error")
    record.add(n, dt, t_final, tv, "total_variation")
    record.wall_time = time.perf_counter() - t_start
    return VarspeedResult(x=x, u_final=traj.u_final, linf_error=err, tv=tv,
                          trajectory=traj, record=record)


@dataclass
class BurgersResult:
    x: np.ndarray
    ops: OperatorSet
    trajectory: Trajectory
    energy0: float
    record: ExperimentRecord


def run_burgers(variant: str, n: int = 128, filter_count: int = 16,
                cfl: float = 0.4, t_final: float = 2.25,
                filter_spec: FilterSpec = FilterSpec(),
                record_every: int = 1) -> BurgersResult:
    """One Burgers variant on [0, 2], periodic, CFL-adaptive stepping.

    Filtered variants apply the filter at ``filter_count`` equally spaced
    times (snapped to step boundaries). The normalized energy history is
    recorded; a crash (non-finite state or energy blow-up) ends the run and
    is recorded as data, not an error.
    """
    if variant not in BURGERS_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    t_start = time.perf_counter()
    pde = "burgers_conservative" if variant.startswith("cons") else "burgers_skew"
    filtered = variant.endswith("_filtered")
    problem = ProblemSpec(pde=pde, domain=(0.0, 2.0), bc="periodic")
    ops = build_operators(n)
    x = problem.physical_nodes(ops.nodes)
    state0 = initial_state(problem, ops, burgers_initial)
    e0 = energy(state0, ops)

    schedule = FilterSchedule()
    if filtered:
        times = tuple(t_final * (k + 1) / filter_count for k in range(filter_count))
        schedule = FilterSchedule(mode="at_times",
                                  matrices=build_filter(ops, filter_spec),
                                  times=times)

    h_min = min_node_spacing(ops, problem)

    def dt_fn(u):
        umax = float(np.max(np.abs(u)))
        return cfl * h_min / max(umax, 1e-12)

    def phys_energy(u):
        return 0.5 * (problem.dx / 2.0) * float(np.sum(ops.weights * u * u))

    def crash_check(u):
        if not np.all(np.isfinite(u)):
            return True
        return phys_energy(u) > BLOWUP_FACTOR * e0

    traj = integrate(
        state0.U,
        make_rhs(problem, ops),
        RunConfig(t_final=t_final, cfl=cfl, record_every=record_every),
        schedule=schedule,
        observers={"energy": lambda t, u: phys_energy(u) / e0},
        norm_fn=phys_energy,
        crash_check=crash_check,
        dt_fn=dt_fn,
    )

    tag = variant if not filtered else f"{variant}:{filter_tag(filter_spec).split(':', 1)[1]}"
    record = ExperimentRecord("burgers", tag, crash_time=traj.crash_time)
    for t, e in zip(traj.times, traj.series["energy"]):
        record.add(n, cfl, t, e, "energy")
    if traj.crashed:
        record.add(n, cfl, traj.crash_time, traj.crash_time, "crash")
    record.wall_time = time.perf_counter() - t_start
    return BurgersResult(x=x, ops=ops, trajectory=traj, energy0=e0, record=record)


@dataclass
class FvResult:
    x: np.ndarray
    u_final: np.ndarray
    steps: int
    record: ExperimentRecord


def run_fv_reference(config: FvConfig = FvConfig()) -> FvResult:
    """Finite-volume reference profile for the Burgers study."""
    t_start = time.perf_counter()
    x, u, steps = solve_fv_burgers(config, burgers_initial)
    record = ExperimentRecord("fv_reference", "llf_euler")
    for xi, ui in zip(x, u):
        record.add(config.cells, config.cfl, xi, ui, "solution")
    record.wall_time = time.perf_counter() - t_start
    return FvResult(x=x, u_final=u, steps=steps, record=record)


def sample_nodal_on(ops: OperatorSet, problem: ProblemSpec, u: np.ndarray,
                    x_targets: np.ndarray) -> np.ndarray:
    """Evaluate a nodal DG solution at arbitrary physical points."""
    x_l, x_r = problem.domain
    xi = 2.0 * (x_targets - x_l) / (x_r - x_l) - 1.0
    return interpolation_matrix(ops.nodes, xi) @ u
