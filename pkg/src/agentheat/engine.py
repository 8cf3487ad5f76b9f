"""Synchronous time loop over the agent lattice.

Each step reads only the current temperature buffer and writes the next
one, then swaps.  Parallel workers own contiguous row bands of the next
buffer, so the result is bit-identical for any worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Protocol, Sequence

import numpy as np

from . import kernels
from .lattice import Lattice, enthalpy_of, new_lattice, region_mask, set_material_region
from .physics import (
    Convective,
    Dirichlet,
    FluxMode,
    FluxSchedule,
    VolumetricConstant,
    VolumetricLinear,
    schedule_value,
)
from .scenario import Scenario, ScenarioError, validate

__all__ = [
    "SimState",
    "Diagnostics",
    "Sink",
    "SinkError",
    "init_state",
    "step",
    "run",
    "diagnostics",
    "contact_conductivities",
]


class Sink(Protocol):
    def snapshot(self, step_index: int, t: float, field: np.ndarray) -> None: ...

    def probe(self, t: float, values: Sequence[float]) -> None: ...


class SinkError(RuntimeError):
    pass


@dataclass(frozen=True)
class Diagnostics:
    t: float
    t_min: float
    t_max: float
    t_mean: float
    enthalpy: float

    def summary(self) -> str:
        return (f"t={self.t!r} min={self.t_min!r} max={self.t_max!r} "
                f"mean={self.t_mean!r} enthalpy={self.enthalpy!r}")

    @property
    def finite(self) -> bool:
        return all(math.isfinite(v) for v in (self.t_min, self.t_max, self.t_mean, self.enthalpy))


def _harmonic(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # Same expression and special cases as physics.interface_conductivity.
    denom = a + b
    with np.errstate(invalid="ignore", divide="ignore"):
        mean = 2.0 * a * b / denom
    mean = np.where(denom == 0.0, 0.0, mean)
    return np.where(a == b, a, mean)


def contact_conductivities(lam: np.ndarray, mode: FluxMode):
    """Per-agent contact conductivities toward N, S, E, W.

    Entries facing the outside of the grid are unused and set to 0.
    """
    mode = FluxMode(mode)
    kn = np.zeros_like(lam)
    ks = np.zeros_like(lam)
    ke = np.zeros_like(lam)
    kw = np.zeros_like(lam)
    if mode is FluxMode.RECEIVER:
        kn[1:] = lam[1:]
        ks[:-1] = lam[:-1]
        ke[:, :-1] = lam[:, :-1]
        kw[:, 1:] = lam[:, 1:]
    else:
        kn[1:] = _harmonic(lam[1:], lam[:-1])
        ks[:-1] = _harmonic(lam[:-1], lam[1:])
        ke[:, :-1] = _harmonic(lam[:, :-1], lam[:, 1:])
        kw[:, 1:] = _harmonic(lam[:, 1:], lam[:, :-1])
    return kn, ks, ke, kw


class SimState:
    """Double-buffered simulation state for one scenario."""

    def __init__(self, scenario: Scenario, lattice: Lattice, workers: int = 1, backend=None):
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        self.scenario = scenario
        self.lattice = lattice
        self.workers = workers
        self.step_index = 0
        self._step_field = backend or kernels.step_field

        g = scenario.grid
        self.crho = lattice.heat_capacity * lattice.density
        self.kn, self.ks, self.ke, self.kw = contact_conductivities(
            lattice.conductivity, scenario.flux_mode)

        # Overlapping volumetric regions add up in declaration order.
        self.klin = np.zeros((g.ny, g.nx))
        self.gamma0 = np.zeros((g.ny, g.nx))
        self.flux_sources: list[tuple[np.ndarray, tuple]] = []
        self.dirichlet: list[tuple[np.ndarray, tuple]] = []
        for src in scenario.sources:
            mask = region_mask(src.region, g)
            if isinstance(src.law, VolumetricLinear):
                self.klin[mask] += src.law.k
            elif isinstance(src.law, VolumetricConstant):
                self.gamma0[mask] += src.law.gamma0
            elif isinstance(src.law, FluxSchedule):
                self.flux_sources.append((mask, src.law.schedule))
            elif isinstance(src.law, Dirichlet):
                self.dirichlet.append((mask, src.law.schedule))
        self.dirichlet_mask = np.zeros((g.ny, g.nx), dtype=bool)
        for mask, _ in self.dirichlet:
            self.dirichlet_mask |= mask

        b = scenario.boundary
        self._convective = isinstance(b, Convective)
        self._alpha = b.alpha if self._convective else 0.0
        self._t_env = b.t_env if self._convective else 0.0
        self.scratch = np.empty_like(lattice.temperature)

    @property
    def temperature(self) -> np.ndarray:
        return self.lattice.temperature

    @property
    def t(self) -> float:
        return self.step_index * self.scenario.dt

    def time_at(self, k: int) -> float:
        return k * self.scenario.dt

    def source_term(self, t_k: float) -> np.ndarray:
        """Temperature-independent heat input per agent at time ``t_k``."""
        if not self.flux_sources:
            return self.gamma0
        src = self.gamma0.copy()
        for mask, table in self.flux_sources:
            src[mask] += schedule_value(table, t_k)
        return src

    def clamp(self, field: np.ndarray, t_k: float) -> None:
        for mask, table in self.dirichlet:
            field[mask] = schedule_value(table, t_k)

    def copy(self) -> "SimState":
        other = SimState.__new__(SimState)
        other.__dict__.update(self.__dict__)
        other.lattice = Lattice.__new__(Lattice)
        other.lattice.__dict__.update(self.lattice.__dict__)
        other.lattice.temperature = self.lattice.temperature.copy()
        other.scratch = np.empty_like(self.scratch)
        return other


def init_state(s: Scenario, workers: int = 1, backend=None) -> SimState:
    errors = [d for d in validate(s) if d.level == "error"]
    if errors:
        raise ScenarioError(errors)
    lattice = new_lattice(s.grid, s.initial_temperature, s.material)
    for region, material in s.material_regions:
        lattice = set_material_region(lattice, region, material)
    for region, temp in s.initial_overrides:
        lattice.temperature[region_mask(region, s.grid)] = temp
    state = SimState(s, lattice, workers=workers, backend=backend)
    state.clamp(lattice.temperature, 0.0)
    return state


def step(state: SimState) -> SimState:
    """Advance ``state`` one synchronous step in place and return it."""
    s = state.scenario
    cur = state.lattice.temperature
    nxt = state.scratch
    t_k = state.t
    state._step_field(
        cur, nxt, state.kn, state.ks, state.ke, state.kw, state.crho, state.klin,
        state.source_term(t_k), s.grid.h, s.dt, state._convective, state._alpha,
        state._t_env, state.workers,
    )
    state.clamp(nxt, state.time_at(state.step_index + 1))
    state.lattice.temperature, state.scratch = nxt, cur
    state.step_index += 1
    return state


def _probe_values(state: SimState) -> list[float]:
    T = state.lattice.temperature
    return [float(T[p.at.j, p.at.i]) for p in state.scenario.output.probes]


def run(state: SimState, n: int, sinks: Iterable[Sink] = ()) -> SimState:
    """Apply :func:`step` ``n`` times, emitting snapshots and probe rows.

    A snapshot goes out whenever the step index is a multiple of the
    scenario's snapshot interval (the starting state included); probe rows
    go out for the starting state and after every step.
    """
    if n < 0:
        raise ValueError(f"step count must be >= 0, got {n}")
    sinks = list(sinks)
    every = state.scenario.output.snapshot_every
    probes = bool(state.scenario.output.probes)

    def emit(snapshot: bool) -> None:
        try:
            for sink in sinks:
                if snapshot:
                    sink.snapshot(state.step_index, state.t, state.lattice.temperature)
                if probes:
                    sink.probe(state.t, _probe_values(state))
        except OSError as exc:
            raise SinkError(
                f"output failed at step {state.step_index} ({exc}); output written so far is partial"
            ) from exc

    if sinks:
        emit(state.step_index % every == 0)
    for _ in range(n):
        step(state)
        if sinks:
            emit(state.step_index % every == 0)
    return state


def diagnostics(state: SimState) -> Diagnostics:
    T = state.lattice.temperature
    flat = T.ravel()
    with np.errstate(invalid="ignore", over="ignore"):
        total = float(np.cumsum(flat)[-1])
        enthalpy = enthalpy_of(T, state.crho, state.scenario.grid.h)
    return Diagnostics(
        t=state.t,
        t_min=float(np.min(flat)),
        t_max=float(np.max(flat)),
        t_mean=total / flat.size,
        enthalpy=enthalpy,
    )
