"""Finite-difference micromagnetics with semi-implicit BDF integrators."""

from .bdf import SchemeKind
from .demag import DemagKernel, build_demag_kernel, direct_stray_field, stray_field
from .errors import ConfigError, ProjectionSingularError, SolverConvergenceError
from .fields import MaterialParams, anisotropy_field, composite_f, energy
from .grid import GridSpec, Norms, VectorField3, apply_neumann_ghost, d1, d2, \
    grad_norm_sq, laplacian, norms
from .manufactured import ManufacturedSolution
from .schemes import SchemeState, bootstrap, extrapolate2, extrapolate3, \
    project, step
from .solver import ImplicitOperator, SolveStats, SolverOptions, gmres_solve

__version__ = "0.1.0"

__all__ = [
    "SchemeKind", "SchemeState", "GridSpec", "VectorField3", "Norms",
    "MaterialParams", "DemagKernel", "ManufacturedSolution",
    "ImplicitOperator", "SolverOptions", "SolveStats",
    "ConfigError", "ProjectionSingularError", "SolverConvergenceError",
    "apply_neumann_ghost", "d1", "d2", "laplacian", "grad_norm_sq", "norms",
    "anisotropy_field", "composite_f", "energy",
    "build_demag_kernel", "stray_field", "direct_stray_field",
    "bootstrap", "step", "project", "extrapolate2", "extrapolate3",
    "gmres_solve", "__version__",
]
