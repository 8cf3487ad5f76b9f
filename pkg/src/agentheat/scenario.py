"""Experiment descriptions: model, JSON format, validation and built-ins.

A scenario file is a UTF-8 JSON object with these top-level keys::

    name              optional, string; used to name output files
    notes             optional, string; free text
    grid              {"nx": int, "ny": int, "h": metres}
    material          {"lambda": W/(m K), "c": J/(kg K), "rho": kg/m^3}
    material_regions  [{"region": REGION, "material": MATERIAL}, ...]
    initial           {"temperature": deg, "overrides": [{"region": REGION, "temperature": deg}]}
    sources           [{"region": REGION, "law": LAW}, ...]
    boundary          {"type": "insulated"} | {"type": "convective", "alpha": W/(m^2 K), "t_env": deg}
    flux_mode         "harmonic" | "receiver"
    time              {"dt": seconds, "steps": int}
    output            {"snapshot_every": int, "probes": [{"name": str, "region": POINT}],
                       "csv": bool, "pgm": null | [lo, hi]}

    REGION  {"type": "point", "i", "j"} | {"type": "rect", "i0", "j0", "i1", "j1"}
            | {"type": "row", "j"} | {"type": "column", "i"} | {"type": "all"}
    LAW     {"type": "dirichlet", "schedule": [[t, T], ...]}
            | {"type": "flux", "schedule": [[t, q], ...]}
            | {"type": "volumetric_constant", "gamma0": W/m^3}
            | {"type": "volumetric_linear", "k": W/(m^3 K)}

Only ``grid``, ``material`` and ``time`` are required.  Unknown keys are
rejected.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Optional, Tuple

import numpy as np

from .lattice import (
    All,
    Column,
    GridSpec,
    Material,
    Point,
    Rect,
    Region,
    Row,
    region_bounds_error,
    region_cells,
    region_mask,
)
from .physics import (
    BoundaryLaw,
    Convective,
    Dirichlet,
    FluxMode,
    FluxSchedule,
    Insulated,
    SourceLaw,
    VolumetricConstant,
    VolumetricLinear,
    check_schedule,
    stability_limit,
)

__all__ = [
    "SourceSpec",
    "Probe",
    "OutputPlan",
    "Scenario",
    "Diagnostic",
    "ScenarioError",
    "parse_scenario",
    "load_scenario",
    "serialize",
    "scenario_to_dict",
    "validate",
    "errors_of",
    "region_cells",
    "builtin",
    "BUILTINS",
    "builtin_names",
]


@dataclass(frozen=True)
class SourceSpec:
    region: Region
    law: SourceLaw


@dataclass(frozen=True)
class Probe:
    name: str
    at: Point


@dataclass(frozen=True)
class OutputPlan:
    snapshot_every: int = 100
    probes: Tuple[Probe, ...] = ()
    csv: bool = True
    pgm: Optional[Tuple[float, float]] = None


@dataclass(frozen=True)
class Scenario:
    grid: GridSpec
    material: Material
    dt: float
    steps: int
    material_regions: Tuple[Tuple[Region, Material], ...] = ()
    initial_temperature: float = 0.0
    initial_overrides: Tuple[Tuple[Region, float], ...] = ()
    sources: Tuple[SourceSpec, ...] = ()
    boundary: BoundaryLaw = field(default_factory=Insulated)
    flux_mode: FluxMode = FluxMode.HARMONIC
    output: OutputPlan = field(default_factory=OutputPlan)
    name: str = "scenario"
    notes: str = ""

    def materials(self) -> list[Material]:
        return [self.material] + [m for _, m in self.material_regions]


@dataclass(frozen=True)
class Diagnostic:
    level: str  # "error" | "warning"
    path: str
    message: str

    def __str__(self) -> str:
        where = f"{self.path}: " if self.path else ""
        return f"{self.level}: {where}{self.message}"


class ScenarioError(ValueError):
    """Raised with every problem found, not just the first."""

    def __init__(self, diagnostics: Iterable[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


# --- parsing ---------------------------------------------------------------


class _Reader:
    def __init__(self) -> None:
        self.errors: list[Diagnostic] = []

    def fail(self, path: str, message: str) -> None:
        self.errors.append(Diagnostic("error", path, message))

    def obj(self, value: Any, path: str, required: Iterable[str], optional: Iterable[str] = ()):
        if not isinstance(value, dict):
            self.fail(path, f"expected an object, got {type(value).__name__}")
            return None
        required = list(required)
        allowed = set(required) | set(optional)
        for key in value:
            if key not in allowed:
                self.fail(_join(path, key), f"unknown field {key!r}")
        ok = True
        for key in required:
            if key not in value:
                self.fail(_join(path, key), "missing required field")
                ok = False
        return value if ok else None

    def num(self, value: Any, path: str) -> Optional[float]:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.fail(path, f"expected a number, got {json.dumps(value)}")
            return None
        if not math.isfinite(value):
            self.fail(path, "must be finite")
            return None
        return float(value)

    def int(self, value: Any, path: str) -> Optional[int]:
        if isinstance(value, bool) or not isinstance(value, int):
            self.fail(path, f"expected an integer, got {json.dumps(value)}")
            return None
        return value

    def list(self, value: Any, path: str) -> list:
        if not isinstance(value, list):
            self.fail(path, f"expected a list, got {type(value).__name__}")
            return []
        return value

    def region(self, value: Any, path: str) -> Optional[Region]:
        if not isinstance(value, dict) or "type" not in value:
            self.fail(path, "region must be an object with a 'type'")
            return None
        kind = value["type"]
        fields = {"point": ("i", "j"), "rect": ("i0", "j0", "i1", "j1"),
                  "row": ("j",), "column": ("i",), "all": ()}
        if kind not in fields:
            self.fail(_join(path, "type"), f"unknown region type {kind!r} (expected one of {', '.join(fields)})")
            return None
        data = self.obj(value, path, ("type",) + fields[kind])
        if data is None:
            return None
        args = [self.int(data[k], _join(path, k)) for k in fields[kind]]
        if any(a is None for a in args):
            return None
        return {"point": Point, "rect": Rect, "row": Row, "column": Column, "all": All}[kind](*args)

    def material(self, value: Any, path: str) -> Optional[Material]:
        data = self.obj(value, path, ("lambda", "c", "rho"))
        if data is None:
            return None
        vals = [self.num(data[k], _join(path, k)) for k in ("lambda", "c", "rho")]
        if any(v is None for v in vals):
            return None
        try:
            return Material(*vals)
        except ValueError as exc:
            self.fail(path, str(exc))
            return None

    def schedule(self, value: Any, path: str):
        table = []
        for n, knot in enumerate(self.list(value, path)):
            if not isinstance(knot, list) or len(knot) != 2:
                self.fail(f"{path}[{n}]", "knot must be a [t, value] pair")
                return None
            t = self.num(knot[0], f"{path}[{n}][0]")
            v = self.num(knot[1], f"{path}[{n}][1]")
            if t is None or v is None:
                return None
            table.append((t, v))
        for problem in check_schedule(table):
            self.fail(path, problem)
        return tuple(table)

    def law(self, value: Any, path: str) -> Optional[SourceLaw]:
        kinds = {"dirichlet": ("schedule",), "flux": ("schedule",),
                 "volumetric_constant": ("gamma0",), "volumetric_linear": ("k",)}
        if not isinstance(value, dict) or value.get("type") not in kinds:
            got = value.get("type") if isinstance(value, dict) else value
            self.fail(path, f"law type must be one of {', '.join(kinds)}, got {got!r}")
            return None
        kind = value["type"]
        data = self.obj(value, path, ("type",) + kinds[kind])
        if data is None:
            return None
        if kind in ("dirichlet", "flux"):
            table = self.schedule(data["schedule"], _join(path, "schedule"))
            if table is None or not table:
                return None
            return Dirichlet(table) if kind == "dirichlet" else FluxSchedule(table)
        key = kinds[kind][0]
        x = self.num(data[key], _join(path, key))
        if x is None:
            return None
        return VolumetricConstant(x) if kind == "volumetric_constant" else VolumetricLinear(x)


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _parse_grid(r: _Reader, value: Any) -> Optional[GridSpec]:
    data = r.obj(value, "grid", ("nx", "ny", "h"))
    if data is None:
        return None
    nx = r.int(data["nx"], "grid.nx")
    ny = r.int(data["ny"], "grid.ny")
    h = r.num(data["h"], "grid.h")
    ok = nx is not None and ny is not None and h is not None
    if nx is not None and nx < 1:
        r.fail("grid.nx", f"must be >= 1, got {nx}")
        ok = False
    if ny is not None and ny < 1:
        r.fail("grid.ny", f"must be >= 1, got {ny}")
        ok = False
    if h is not None and not h > 0:
        r.fail("grid.h", f"must be > 0, got {h}")
        ok = False
    return GridSpec(nx, ny, h) if ok else None


def _from_dict(doc: Any) -> Scenario:
    r = _Reader()
    top = ("grid", "material", "time")
    optional = ("name", "notes", "material_regions", "initial", "sources",
                "boundary", "flux_mode", "output")
    if not isinstance(doc, dict):
        raise ScenarioError([Diagnostic("error", "", "scenario must be a JSON object")])
    for key in doc:
        if key not in top + optional:
            r.fail(key, f"unknown field {key!r}")
    for key in top:
        if key not in doc:
            r.fail(key, "missing required field")

    grid = _parse_grid(r, doc["grid"]) if "grid" in doc else None
    material = r.material(doc["material"], "material") if "material" in doc else None

    dt = steps = None
    if "time" in doc:
        tdoc = r.obj(doc["time"], "time", ("dt", "steps"))
        if tdoc is not None:
            dt = r.num(tdoc["dt"], "time.dt")
            steps = r.int(tdoc["steps"], "time.steps")

    name = doc.get("name", "scenario")
    if not isinstance(name, str) or not name:
        r.fail("name", "must be a non-empty string")
    notes = doc.get("notes", "")
    if not isinstance(notes, str):
        r.fail("notes", "must be a string")

    material_regions = []
    for n, item in enumerate(r.list(doc.get("material_regions", []), "material_regions")):
        p = f"material_regions[{n}]"
        data = r.obj(item, p, ("region", "material"))
        if data is None:
            continue
        reg = r.region(data["region"], f"{p}.region")
        mat = r.material(data["material"], f"{p}.material")
        if reg is not None and mat is not None:
            material_regions.append((reg, mat))

    initial_temperature = 0.0
    overrides = []
    if "initial" in doc:
        idoc = r.obj(doc["initial"], "initial", (), ("temperature", "overrides"))
        if idoc is not None:
            if "temperature" in idoc:
                t0 = r.num(idoc["temperature"], "initial.temperature")
                initial_temperature = t0 if t0 is not None else 0.0
            for n, item in enumerate(r.list(idoc.get("overrides", []), "initial.overrides")):
                p = f"initial.overrides[{n}]"
                data = r.obj(item, p, ("region", "temperature"))
                if data is None:
                    continue
                reg = r.region(data["region"], f"{p}.region")
                temp = r.num(data["temperature"], f"{p}.temperature")
                if reg is not None and temp is not None:
                    overrides.append((reg, temp))

    sources = []
    for n, item in enumerate(r.list(doc.get("sources", []), "sources")):
        p = f"sources[{n}]"
        data = r.obj(item, p, ("region", "law"))
        if data is None:
            continue
        reg = r.region(data["region"], f"{p}.region")
        law = r.law(data["law"], f"{p}.law")
        if reg is not None and law is not None:
            sources.append(SourceSpec(reg, law))

    boundary: BoundaryLaw = Insulated()
    if "boundary" in doc:
        b = doc["boundary"]
        kind = b.get("type") if isinstance(b, dict) else None
        if kind == "insulated":
            r.obj(b, "boundary", ("type",))
        elif kind == "convective":
            data = r.obj(b, "boundary", ("type", "alpha", "t_env"))
            if data is not None:
                alpha = r.num(data["alpha"], "boundary.alpha")
                t_env = r.num(data["t_env"], "boundary.t_env")
                if alpha is not None and alpha < 0:
                    r.fail("boundary.alpha", f"must be >= 0, got {alpha}")
                elif alpha is not None and t_env is not None:
                    boundary = Convective(alpha, t_env)
        else:
            r.fail("boundary.type", f"must be 'insulated' or 'convective', got {kind!r}")

    flux_mode = FluxMode.HARMONIC
    if "flux_mode" in doc:
        try:
            flux_mode = FluxMode(doc["flux_mode"])
        except ValueError:
            r.fail("flux_mode", f"must be 'harmonic' or 'receiver', got {doc['flux_mode']!r}")

    output = OutputPlan()
    if "output" in doc:
        odoc = r.obj(doc["output"], "output", (), ("snapshot_every", "probes", "csv", "pgm"))
        if odoc is not None:
            every = output.snapshot_every
            if "snapshot_every" in odoc:
                parsed = r.int(odoc["snapshot_every"], "output.snapshot_every")
                every = every if parsed is None else parsed
            probes = []
            for n, item in enumerate(r.list(odoc.get("probes", []), "output.probes")):
                p = f"output.probes[{n}]"
                data = r.obj(item, p, ("name", "region"))
                if data is None:
                    continue
                if not isinstance(data["name"], str) or not data["name"]:
                    r.fail(f"{p}.name", "must be a non-empty string")
                    continue
                reg = r.region(data["region"], f"{p}.region")
                if reg is None:
                    continue
                if not isinstance(reg, Point):
                    r.fail(f"{p}.region", f"probe region must be a point, got {reg}")
                    continue
                probes.append(Probe(data["name"], reg))
            csv = odoc.get("csv", True)
            if not isinstance(csv, bool):
                r.fail("output.csv", "must be true or false")
                csv = True
            pgm = odoc.get("pgm")
            if pgm is not None:
                if isinstance(pgm, list) and len(pgm) == 2:
                    lo = r.num(pgm[0], "output.pgm[0]")
                    hi = r.num(pgm[1], "output.pgm[1]")
                    pgm = (lo, hi) if lo is not None and hi is not None else None
                else:
                    r.fail("output.pgm", "must be null or a [lo, hi] pair")
                    pgm = None
            output = OutputPlan(every, tuple(probes), csv, pgm)

    if r.errors or grid is None or material is None or dt is None or steps is None:
        raise ScenarioError(r.errors)

    scenario = Scenario(
        grid=grid,
        material=material,
        dt=dt,
        steps=steps,
        material_regions=tuple(material_regions),
        initial_temperature=initial_temperature,
        initial_overrides=tuple(overrides),
        sources=tuple(sources),
        boundary=boundary,
        flux_mode=flux_mode,
        output=output,
        name=name,
        notes=notes,
    )
    errors = errors_of(scenario)
    if errors:
        raise ScenarioError(errors)
    return scenario


def parse_scenario(text: str) -> Scenario:
    """Parse scenario JSON; raises :class:`ScenarioError` listing every problem."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            [Diagnostic("error", "", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")]
        ) from None
    return _from_dict(doc)


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_scenario(text)


# --- serialisation ---------------------------------------------------------


def _region_dict(r: Region) -> dict:
    if isinstance(r, Point):
        return {"type": "point", "i": r.i, "j": r.j}
    if isinstance(r, Rect):
        return {"type": "rect", "i0": r.i0, "j0": r.j0, "i1": r.i1, "j1": r.j1}
    if isinstance(r, Row):
        return {"type": "row", "j": r.j}
    if isinstance(r, Column):
        return {"type": "column", "i": r.i}
    return {"type": "all"}


def _material_dict(m: Material) -> dict:
    return {"lambda": m.lambda_, "c": m.c, "rho": m.rho}


def _law_dict(law: SourceLaw) -> dict:
    if isinstance(law, Dirichlet):
        return {"type": "dirichlet", "schedule": [list(k) for k in law.schedule]}
    if isinstance(law, FluxSchedule):
        return {"type": "flux", "schedule": [list(k) for k in law.schedule]}
    if isinstance(law, VolumetricConstant):
        return {"type": "volumetric_constant", "gamma0": law.gamma0}
    return {"type": "volumetric_linear", "k": law.k}


def scenario_to_dict(s: Scenario) -> dict:
    if isinstance(s.boundary, Convective):
        boundary = {"type": "convective", "alpha": s.boundary.alpha, "t_env": s.boundary.t_env}
    else:
        boundary = {"type": "insulated"}
    return {
        "name": s.name,
        "notes": s.notes,
        "grid": {"nx": s.grid.nx, "ny": s.grid.ny, "h": s.grid.h},
        "material": _material_dict(s.material),
        "material_regions": [
            {"region": _region_dict(r), "material": _material_dict(m)} for r, m in s.material_regions
        ],
        "initial": {
            "temperature": s.initial_temperature,
            "overrides": [
                {"region": _region_dict(r), "temperature": t} for r, t in s.initial_overrides
            ],
        },
        "sources": [{"region": _region_dict(src.region), "law": _law_dict(src.law)} for src in s.sources],
        "boundary": boundary,
        "flux_mode": FluxMode(s.flux_mode).value,
        "time": {"dt": s.dt, "steps": s.steps},
        "output": {
            "snapshot_every": s.output.snapshot_every,
            "probes": [{"name": p.name, "region": _region_dict(p.at)} for p in s.output.probes],
            "csv": s.output.csv,
            "pgm": list(s.output.pgm) if s.output.pgm is not None else None,
        },
    }


def serialize(s: Scenario) -> str:
    return json.dumps(scenario_to_dict(s), indent=2) + "\n"


# --- validation ------------------------------------------------------------


def _regions(s: Scenario):
    for n, (r, _) in enumerate(s.material_regions):
        yield f"material_regions[{n}].region", r
    for n, (r, _) in enumerate(s.initial_overrides):
        yield f"initial.overrides[{n}].region", r
    for n, src in enumerate(s.sources):
        yield f"sources[{n}].region", src.region
    for n, p in enumerate(s.output.probes):
        yield f"output.probes[{n}].region", p.at


def errors_of(s: Scenario) -> list[Diagnostic]:
    """Hard errors: anything that makes the scenario impossible to run."""
    errs = []
    if not (math.isfinite(s.dt) and s.dt > 0):
        errs.append(Diagnostic("error", "time.dt", f"must be > 0, got {s.dt}"))
    if s.steps < 0:
        errs.append(Diagnostic("error", "time.steps", f"must be >= 0, got {s.steps}"))
    if s.output.snapshot_every < 1:
        errs.append(Diagnostic("error", "output.snapshot_every",
                               f"must be >= 1, got {s.output.snapshot_every}"))
    if s.output.pgm is not None and not s.output.pgm[0] < s.output.pgm[1]:
        errs.append(Diagnostic("error", "output.pgm", f"need lo < hi, got {list(s.output.pgm)}"))
    if not math.isfinite(s.initial_temperature):
        errs.append(Diagnostic("error", "initial.temperature", "must be finite"))

    in_bounds = {}
    for path, r in _regions(s):
        msg = region_bounds_error(r, s.grid)
        if msg is not None:
            errs.append(Diagnostic("error", path, msg))
        in_bounds[path] = msg is None

    for n, src in enumerate(s.sources):
        if isinstance(src.law, (Dirichlet, FluxSchedule)):
            for problem in check_schedule(src.law.schedule):
                errs.append(Diagnostic("error", f"sources[{n}].law.schedule", problem))

    owner = np.full((s.grid.ny, s.grid.nx), -1)
    for n, src in enumerate(s.sources):
        if not isinstance(src.law, Dirichlet) or not in_bounds[f"sources[{n}].region"]:
            continue
        mask = region_mask(src.region, s.grid)
        clash = sorted(set(owner[mask][owner[mask] >= 0].tolist()))
        for m in clash:
            errs.append(Diagnostic(
                "error", f"sources[{n}].region",
                f"Dirichlet region {src.region} overlaps Dirichlet region {s.sources[m].region} (sources[{m}])",
            ))
        owner[mask & (owner < 0)] = n
    return errs


def validate(s: Scenario) -> list[Diagnostic]:
    """All diagnostics for ``s``: errors first, then warnings.  Empty means clean."""
    diags = errors_of(s)
    if any(region_bounds_error(r, s.grid) for _, r in _regions(s)):
        return diags

    limit = min(stability_limit(m, s.grid.h) for m in s.materials())
    if s.dt > limit:
        diags.append(Diagnostic(
            "warning", "time.dt",
            f"dt={s.dt!r} s exceeds the explicit stability limit {limit!r} s; the run may diverge",
        ))

    dirichlet = np.zeros((s.grid.ny, s.grid.nx), dtype=bool)
    for src in s.sources:
        if isinstance(src.law, Dirichlet):
            dirichlet |= region_mask(src.region, s.grid)
    for n, src in enumerate(s.sources):
        if isinstance(src.law, (VolumetricConstant, VolumetricLinear)):
            if (region_mask(src.region, s.grid) & dirichlet).any():
                diags.append(Diagnostic(
                    "warning", f"sources[{n}].region",
                    f"volumetric region {src.region} overlaps a Dirichlet region; "
                    "the clamp overrides the volumetric term there",
                ))
    return diags


# --- built-in experiments --------------------------------------------------

PLATE = GridSpec(41, 41, 0.001)
BULK = Material(1.5, 1000.0, 1500.0)
INSULATOR = Material(0.015, 1000.0, 1500.0)
DT = 0.005
CENTER = Point(20, 20)

FIG4_K = 6.0e5
FIG4_PULSE = 50.0
FIG5_ZONE = Rect(8, 14, 27, 33)
FIG6_STRIP = Column(20)


def _plate(name: str, steps: int, every: int, probes, **kw) -> Scenario:
    return Scenario(
        grid=PLATE, material=BULK, dt=DT, steps=steps, initial_temperature=0.0,
        output=OutputPlan(snapshot_every=every, probes=tuple(probes)), name=name, **kw,
    )


def _fig2() -> Scenario:
    return _plate(
        "fig2_linear_source", 200_000, 20_000,
        [Probe("center", CENTER), Probe("far_edge", Point(20, 40))],
        sources=(SourceSpec(Row(0), Dirichlet(((0.0, 20.0),))),),
        notes="Plate heated by a boundary row held at 20 degrees.",
    )


def _fig3() -> Scenario:
    return _plate(
        "fig3_point_source", 20_000, 2_000,
        [Probe("center", CENTER), Probe("corner", Point(0, 0))],
        sources=(SourceSpec(CENTER, Dirichlet(((0.0, 50.0),))),),
        notes="Plate heated by a central agent held at 50 degrees.",
    )


def _fig4() -> Scenario:
    return _plate(
        "fig4_combustion", 2_000, 200,
        [Probe("center", CENTER), Probe("corner", Point(0, 0))],
        sources=(SourceSpec(All(), VolumetricLinear(FIG4_K)),),
        initial_overrides=((CENTER, FIG4_PULSE),),
        notes=(
            f"Self-heating gamma = k*T everywhere, ignited by a pulse at the centre. "
            f"k={FIG4_K:g} W/(m^3 K) and pulse {FIG4_PULSE:g} degrees are chosen here, "
            "not taken from the source experiment."
        ),
    )


def _fig5() -> Scenario:
    return _plate(
        "fig5_rect_anomaly", 100_000, 10_000,
        [Probe("zone_center", Point(17, 23)), Probe("bulk", Point(34, 23))],
        sources=(SourceSpec(Row(0), Dirichlet(((0.0, 20.0),))),),
        material_regions=((FIG5_ZONE, INSULATOR),),
        notes=(
            "Boundary row at 20 degrees heating a plate with a low-conductivity "
            f"rectangle {FIG5_ZONE} (extent chosen here)."
        ),
    )


def _fig6() -> Scenario:
    return _plate(
        "fig6_insulating_strip", 100_000, 10_000,
        [Probe("near_half", Point(10, 20)), Probe("far_half", Point(30, 20))],
        sources=(SourceSpec(Column(0), Dirichlet(((0.0, 20.0),))),),
        material_regions=((FIG6_STRIP, INSULATOR),),
        notes=(
            "Boundary column at 20 degrees; a one-agent-wide low-conductivity strip "
            f"at {FIG6_STRIP} splits the plate into two halves."
        ),
    )


BUILTINS = {
    "fig2_linear_source": (_fig2, "Figure 2: plate heated by a linear source on one boundary (20 degrees)"),
    "fig3_point_source": (_fig3, "Figure 3: plate heated by a point source at the centre (50 degrees)"),
    "fig4_combustion": (_fig4, "Figure 4: quasilinear self-heating gamma = k*T ignited by a central pulse"),
    "fig5_rect_anomaly": (_fig5, "Figure 5: plate with a rectangular low-conductivity anomalous zone"),
    "fig6_insulating_strip": (_fig6, "Figure 6: plate divided by a heat-insulating strip"),
}


def builtin_names() -> list[str]:
    return list(BUILTINS)


def builtin(name: str) -> Scenario:
    """Return a built-in experiment; ``"fig3"`` is accepted for ``"fig3_point_source"``."""
    matches = [n for n in BUILTINS if n == name or n.split("_", 1)[0] == name]
    if len(matches) != 1:
        raise KeyError(f"unknown builtin scenario {name!r}; valid names: {', '.join(BUILTINS)}")
    return BUILTINS[matches[0]][0]()


def with_overrides(s: Scenario, *, steps=None, dt=None, snapshot_every=None, csv=None, pgm=None) -> Scenario:
    out = s.output
    if snapshot_every is not None:
        out = replace(out, snapshot_every=snapshot_every)
    if csv is not None:
        out = replace(out, csv=csv)
    if pgm is not None:
        out = replace(out, pgm=tuple(pgm))
    return replace(
        s,
        steps=s.steps if steps is None else steps,
        dt=s.dt if dt is None else dt,
        output=out,
    )
