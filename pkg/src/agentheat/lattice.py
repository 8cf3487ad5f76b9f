"""Agent grid: geometry, per-agent state and material, regions.

Agents are addressed as ``(i, j)`` with ``i`` the column (x) and ``j`` the
row (y), origin at a corner.  Fields are stored row-major as numpy arrays of
shape ``(ny, nx)``, so agent ``(i, j)`` lives at ``field[j, i]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple, Union

import numpy as np

__all__ = [
    "GridSpec",
    "Material",
    "Lattice",
    "AgentKind",
    "Point",
    "Rect",
    "Row",
    "Column",
    "All",
    "Region",
    "RegionError",
    "new_lattice",
    "set_material_region",
    "classify",
    "total_enthalpy",
    "region_cells",
    "region_bounds_error",
]


class RegionError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    nx: int
    ny: int
    h: float

    def __post_init__(self) -> None:
        for name in ("nx", "ny"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise ValueError(f"GridSpec.{name} must be an integer >= 1, got {value!r}")
        if not (isinstance(self.h, (int, float)) and math.isfinite(self.h) and self.h > 0):
            raise ValueError(f"GridSpec.h must be a finite number > 0, got {self.h!r}")

    @property
    def size(self) -> int:
        return self.nx * self.ny


@dataclass(frozen=True)
class Material:
    """Thermal conductivity, specific heat and density of one agent."""

    lambda_: float
    c: float
    rho: float

    def __post_init__(self) -> None:
        if not self.lambda_ >= 0 or not math.isfinite(self.lambda_):
            raise ValueError(f"Material.lambda must be finite and >= 0, got {self.lambda_!r}")
        if not self.c > 0 or not math.isfinite(self.c):
            raise ValueError(f"Material.c must be finite and > 0, got {self.c!r}")
        if not self.rho > 0 or not math.isfinite(self.rho):
            raise ValueError(f"Material.rho must be finite and > 0, got {self.rho!r}")


class AgentKind(str, Enum):
    INTERIOR = "interior"
    EDGE = "edge"
    CORNER = "corner"


# --- regions ---------------------------------------------------------------


@dataclass(frozen=True)
class Point:
    i: int
    j: int

    def __str__(self) -> str:
        return f"point({self.i},{self.j})"


@dataclass(frozen=True)
class Rect:
    """Inclusive rectangle of agents ``i0..i1`` by ``j0..j1``."""

    i0: int
    j0: int
    i1: int
    j1: int

    def __str__(self) -> str:
        return f"rect({self.i0},{self.j0},{self.i1},{self.j1})"


@dataclass(frozen=True)
class Row:
    j: int

    def __str__(self) -> str:
        return f"row({self.j})"


@dataclass(frozen=True)
class Column:
    i: int

    def __str__(self) -> str:
        return f"column({self.i})"


@dataclass(frozen=True)
class All:
    def __str__(self) -> str:
        return "all"


Region = Union[Point, Rect, Row, Column, All]


def region_bounds_error(r: Region, g: GridSpec) -> str | None:
    """Describe why ``r`` does not fit in ``g``; ``None`` when it does."""
    def bad_i(i: int) -> bool:
        return not 0 <= i < g.nx

    def bad_j(j: int) -> bool:
        return not 0 <= j < g.ny

    if isinstance(r, Point):
        bad = bad_i(r.i) or bad_j(r.j)
    elif isinstance(r, Rect):
        if r.i0 > r.i1 or r.j0 > r.j1:
            return f"{r} has inverted extents (need i0 <= i1 and j0 <= j1)"
        bad = bad_i(r.i0) or bad_i(r.i1) or bad_j(r.j0) or bad_j(r.j1)
    elif isinstance(r, Row):
        bad = bad_j(r.j)
    elif isinstance(r, Column):
        bad = bad_i(r.i)
    elif isinstance(r, All):
        bad = False
    else:
        return f"unknown region type {type(r).__name__}"
    if bad:
        return f"{r} exceeds the {g.nx}x{g.ny} grid (valid i 0..{g.nx - 1}, j 0..{g.ny - 1})"
    return None


def region_cells(r: Region, g: GridSpec) -> List[Tuple[int, int]]:
    """Agents covered by ``r`` as ``(i, j)`` pairs in row-major order."""
    err = region_bounds_error(r, g)
    if err is not None:
        raise RegionError(err)
    if isinstance(r, Point):
        return [(r.i, r.j)]
    if isinstance(r, Rect):
        i0, j0, i1, j1 = r.i0, r.j0, r.i1, r.j1
    elif isinstance(r, Row):
        i0, j0, i1, j1 = 0, r.j, g.nx - 1, r.j
    elif isinstance(r, Column):
        i0, j0, i1, j1 = r.i, 0, r.i, g.ny - 1
    else:
        i0, j0, i1, j1 = 0, 0, g.nx - 1, g.ny - 1
    return [(i, j) for j in range(j0, j1 + 1) for i in range(i0, i1 + 1)]


def region_mask(r: Region, g: GridSpec) -> np.ndarray:
    mask = np.zeros((g.ny, g.nx), dtype=bool)
    cells = region_cells(r, g)
    if cells:
        ii, jj = zip(*cells)
        mask[list(jj), list(ii)] = True
    return mask


# --- lattice ---------------------------------------------------------------


@dataclass
class Lattice:
    spec: GridSpec
    temperature: np.ndarray
    conductivity: np.ndarray
    heat_capacity: np.ndarray
    density: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        shape = (self.spec.ny, self.spec.nx)
        for name in ("temperature", "conductivity", "heat_capacity", "density"):
            arr = getattr(self, name)
            if arr.shape != shape:
                raise ValueError(f"Lattice.{name} has shape {arr.shape}, expected {shape}")
        if not np.all(np.isfinite(self.temperature)):
            raise ValueError("Lattice temperatures must be finite")

    def material_at(self, i: int, j: int) -> Material:
        return Material(
            float(self.conductivity[j, i]),
            float(self.heat_capacity[j, i]),
            float(self.density[j, i]),
        )

    def copy(self) -> "Lattice":
        return Lattice(
            self.spec,
            self.temperature.copy(),
            self.conductivity.copy(),
            self.heat_capacity.copy(),
            self.density.copy(),
        )


def new_lattice(spec: GridSpec, initial_temperature: float, default_material: Material) -> Lattice:
    shape = (spec.ny, spec.nx)
    return Lattice(
        spec,
        np.full(shape, float(initial_temperature)),
        np.full(shape, float(default_material.lambda_)),
        np.full(shape, float(default_material.c)),
        np.full(shape, float(default_material.rho)),
    )


def set_material_region(lattice: Lattice, region: Region, material: Material) -> Lattice:
    """Return a copy of ``lattice`` with ``material`` assigned inside ``region``."""
    mask = region_mask(region, lattice.spec)
    out = lattice.copy()
    out.conductivity[mask] = material.lambda_
    out.heat_capacity[mask] = material.c
    out.density[mask] = material.rho
    return out


def classify(spec: GridSpec, i: int, j: int) -> AgentKind:
    if not (0 <= i < spec.nx and 0 <= j < spec.ny):
        raise IndexError(f"agent ({i}, {j}) outside the {spec.nx}x{spec.ny} grid")
    x_extreme = i == 0 or i == spec.nx - 1
    y_extreme = j == 0 or j == spec.ny - 1
    if x_extreme and y_extreme:
        return AgentKind.CORNER
    if x_extreme or y_extreme:
        return AgentKind.EDGE
    return AgentKind.INTERIOR


def enthalpy_of(temperature: np.ndarray, crho: np.ndarray, h: float) -> float:
    # cumsum is a strictly sequential reduction, which pins row-major order.
    terms = (crho * temperature).ravel() * (h * h)
    if terms.size == 0:
        return 0.0
    return float(np.cumsum(terms)[-1])


def total_enthalpy(lattice: Lattice) -> float:
    """Sum of ``C * rho * T * h^2`` over all agents, J per metre of depth."""
    crho = lattice.heat_capacity * lattice.density
    return enthalpy_of(lattice.temperature, crho, lattice.spec.h)
