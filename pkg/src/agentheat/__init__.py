"""Agent-lattice simulation of 2D heat conduction in heterogeneous plates."""

from .engine import Diagnostics, SimState, diagnostics, init_state, run, step
from .kernels import BACKEND
from .lattice import GridSpec, Lattice, Material, new_lattice, total_enthalpy
from .scenario import Scenario, builtin, parse_scenario, serialize, validate

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Diagnostics",
    "GridSpec",
    "Lattice",
    "Material",
    "Scenario",
    "SimState",
    "builtin",
    "diagnostics",
    "init_state",
    "new_lattice",
    "parse_scenario",
    "run",
    "serialize",
    "step",
    "total_enthalpy",
    "validate",
]
