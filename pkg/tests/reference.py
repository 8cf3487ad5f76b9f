"""Deliberately naive single-threaded reference stepper.

A plain double loop over agents built only from the scalar helpers in
``agentheat.physics``.  Tests compare the engine against it bit for bit.
"""

import numpy as np

from agentheat.lattice import Lattice, region_cells
from agentheat.physics import (
    Dirichlet,
    FluxSchedule,
    VolumetricConstant,
    VolumetricLinear,
    apply_update,
    neighbor_flux_sum,
    schedule_value,
    volumetric_power,
)


def reference_run(scenario, lattice: Lattice, n_steps: int) -> np.ndarray:
    g = scenario.grid
    linear_k = {}
    constant = {}
    flux = {}
    dirichlet = {}
    for src in scenario.sources:
        for cell in region_cells(src.region, g):
            if isinstance(src.law, VolumetricLinear):
                linear_k[cell] = linear_k.get(cell, 0.0) + src.law.k
            elif isinstance(src.law, VolumetricConstant):
                constant[cell] = constant.get(cell, 0.0) + src.law.gamma0
            elif isinstance(src.law, FluxSchedule):
                flux.setdefault(cell, []).append(src.law.schedule)
            elif isinstance(src.law, Dirichlet):
                dirichlet[cell] = src.law.schedule

    lat = lattice.copy()
    for cell, table in dirichlet.items():
        lat.temperature[cell[1], cell[0]] = schedule_value(table, 0.0)

    for k in range(n_steps):
        t_k = k * scenario.dt
        new = np.empty_like(lat.temperature)
        for j in range(g.ny):
            for i in range(g.nx):
                T = float(lat.temperature[j, i])
                q = neighbor_flux_sum(lat, i, j, scenario.flux_mode, scenario.boundary)
                extra = constant.get((i, j), 0.0)
                for table in flux.get((i, j), []):
                    extra = extra + schedule_value(table, t_k)
                gamma = volumetric_power(VolumetricLinear(linear_k.get((i, j), 0.0)), T) + extra
                new[j, i] = apply_update(T, q, gamma, scenario.dt, lat.material_at(i, j))
        t_next = (k + 1) * scenario.dt
        for (i, j), table in dirichlet.items():
            new[j, i] = schedule_value(table, t_next)
        lat.temperature = new
    return lat.temperature
