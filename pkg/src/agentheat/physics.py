"""Scalar heat-conduction kernels for a single agent and its contacts.

Every function here is pure. The vectorised and compiled stencils in
``agentheat._kernels`` / ``agentheat._ckernel`` evaluate exactly the same
floating point expressions in the same order, so a double loop over these
helpers reproduces an engine step bit for bit.

Sign convention: a flux is positive when it heats the receiving agent.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Tuple, Union

from .lattice import Lattice, Material

__all__ = [
    "FluxMode",
    "Dirichlet",
    "FluxSchedule",
    "VolumetricConstant",
    "VolumetricLinear",
    "SourceLaw",
    "Insulated",
    "Convective",
    "BoundaryLaw",
    "interface_conductivity",
    "pair_flux",
    "neighbor_flux_sum",
    "convective_flux",
    "volumetric_power",
    "schedule_value",
    "apply_update",
    "stability_limit",
    "check_schedule",
]

Schedule = Tuple[Tuple[float, float], ...]


class FluxMode(str, Enum):
    """How the conductivity of a contact between two agents is chosen."""

    RECEIVER = "receiver"
    HARMONIC = "harmonic"


# --- source laws -----------------------------------------------------------


@dataclass(frozen=True)
class Dirichlet:
    """Agent temperature imposed by a piecewise-linear schedule of (t, T)."""

    schedule: Schedule


@dataclass(frozen=True)
class FluxSchedule:
    """Imposed heat input, W/m^3, following a piecewise-linear schedule."""

    schedule: Schedule


@dataclass(frozen=True)
class VolumetricConstant:
    gamma0: float


@dataclass(frozen=True)
class VolumetricLinear:
    """Self-heating source whose power is ``k * T``."""

    k: float


SourceLaw = Union[Dirichlet, FluxSchedule, VolumetricConstant, VolumetricLinear]


# --- boundary laws ---------------------------------------------------------


@dataclass(frozen=True)
class Insulated:
    pass


@dataclass(frozen=True)
class Convective:
    """Newton cooling to an environment at ``t_env`` through missing contacts."""

    alpha: float
    t_env: float

    def __post_init__(self) -> None:
        if not self.alpha >= 0:
            raise ValueError(f"convective alpha must be >= 0, got {self.alpha!r}")


BoundaryLaw = Union[Insulated, Convective]


# --- kernels ---------------------------------------------------------------


def interface_conductivity(lambda_self: float, lambda_nbr: float, mode: FluxMode) -> float:
    """Effective conductivity of the contact feeding the agent with ``lambda_self``."""
    if lambda_self < 0 or lambda_nbr < 0:
        raise ValueError(
            f"conductivities must be >= 0, got {lambda_self!r} and {lambda_nbr!r}"
        )
    mode = FluxMode(mode)
    if mode is FluxMode.RECEIVER:
        return float(lambda_self)
    if lambda_self == lambda_nbr:
        return float(lambda_self)
    denom = lambda_self + lambda_nbr
    if denom == 0.0:
        return 0.0
    return 2.0 * lambda_self * lambda_nbr / denom


def pair_flux(lambda_eff: float, t_self: float, t_nbr: float, h: float) -> float:
    """Volumetric heat flow into an agent from one neighbour, W/m^3."""
    if not h > 0:
        raise ValueError(f"h must be > 0, got {h!r}")
    return lambda_eff * (t_nbr - t_self) / (h * h)


def neighbor_flux_sum(
    lattice: Lattice, i: int, j: int, mode: FluxMode, boundary: BoundaryLaw
) -> float:
    """Total conductive (and boundary) heat flow into agent ``(i, j)``.

    Contacts are north ``(i, j-1)``, south ``(i, j+1)``, east ``(i+1, j)``
    and west ``(i-1, j)``, summed as ``(N + S) + (E + W)``.  A missing
    neighbour contributes 0 on an insulated edge and one convective term
    otherwise.
    """
    spec = lattice.spec
    if not (0 <= i < spec.nx and 0 <= j < spec.ny):
        raise IndexError(f"agent ({i}, {j}) outside the {spec.nx}x{spec.ny} grid")
    T = lattice.temperature
    lam = lattice.conductivity
    t_self = float(T[j, i])

    def term(ni: int, nj: int) -> float:
        if 0 <= ni < spec.nx and 0 <= nj < spec.ny:
            lam_eff = interface_conductivity(float(lam[j, i]), float(lam[nj, ni]), mode)
            return pair_flux(lam_eff, t_self, float(T[nj, ni]), spec.h)
        if isinstance(boundary, Convective):
            return convective_flux(boundary.alpha, boundary.t_env, t_self, spec.h)
        return 0.0

    q_n = term(i, j - 1)
    q_s = term(i, j + 1)
    q_e = term(i + 1, j)
    q_w = term(i - 1, j)
    return (q_n + q_s) + (q_e + q_w)


def convective_flux(alpha: float, t_env: float, t_self: float, h: float) -> float:
    if not alpha >= 0:
        raise ValueError(f"alpha must be >= 0, got {alpha!r}")
    if not h > 0:
        raise ValueError(f"h must be > 0, got {h!r}")
    return alpha * (t_env - t_self) / h


def volumetric_power(law: SourceLaw, t_current: float, t_k: float = 0.0) -> float:
    """Power density of a distributed source at the agent's current temperature.

    ``t_k`` is accepted for symmetry with the scheduled laws; neither
    volumetric variant depends on time.
    """
    if isinstance(law, VolumetricConstant):
        return float(law.gamma0)
    if isinstance(law, VolumetricLinear):
        return law.k * t_current
    raise TypeError(f"volumetric_power needs a volumetric law, got {type(law).__name__}")


def check_schedule(table: Sequence[Tuple[float, float]]) -> list[str]:
    """Return human-readable problems with a schedule table (empty if fine)."""
    problems = []
    if len(table) == 0:
        problems.append("schedule must have at least one (t, value) knot")
        return problems
    for n, knot in enumerate(table):
        if len(knot) != 2:
            problems.append(f"knot {n} must be a (t, value) pair")
            continue
        if not all(math.isfinite(v) for v in knot):
            problems.append(f"knot {n} has a non-finite entry")
    times = [k[0] for k in table if len(k) == 2]
    for n in range(1, len(times)):
        if not times[n] > times[n - 1]:
            problems.append(f"knot times must be strictly increasing (knot {n})")
            break
    return problems


def schedule_value(table: Sequence[Tuple[float, float]], t: float) -> float:
    """Piecewise-linear interpolation, clamped to the end values."""
    if t <= table[0][0]:
        return float(table[0][1])
    if t >= table[-1][0]:
        return float(table[-1][1])
    times = [k[0] for k in table]
    n = bisect.bisect_right(times, t)
    t0, v0 = table[n - 1]
    t1, v1 = table[n]
    if t == t0:
        return float(v0)
    return v0 + (v1 - v0) * ((t - t0) / (t1 - t0))


def apply_update(t_old: float, q_sum: float, gamma: float, dt: float, mat: Material) -> float:
    """Advance one agent by one explicit step."""
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt!r}")
    return t_old + dt * (q_sum + gamma) / (mat.c * mat.rho)


def stability_limit(mat: Material, h: float) -> float:
    """Largest stable explicit step for a 4-neighbour agent of this material."""
    if not h > 0:
        raise ValueError(f"h must be > 0, got {h!r}")
    if mat.lambda_ == 0:
        return math.inf
    return mat.c * mat.rho * h * h / (4.0 * mat.lambda_)
