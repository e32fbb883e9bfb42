"""Exception types shared across the solver stack."""

from __future__ import annotations


class ConfigError(ValueError):
    """Invalid run configuration or incompatible inputs (grid/kernel mismatch,
    degenerate mesh, unparsable config file)."""

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = violations or [message]


class SolverConvergenceError(RuntimeError):
    """GMRES failed to reach the requested residual within the iteration
    budget.  Carries the best iterate so callers can decide policy."""

    def __init__(self, message: str, best_x=None, stats=None):
        super().__init__(message)
        self.best_x = best_x
        self.stats = stats


class ProjectionSingularError(FloatingPointError):
    """A cell's intermediate magnetization collapsed below the projection
    floor; signals numerical blow-up of the time integration."""

    def __init__(self, cell, norm_value: float):
        super().__init__(
            f"projection singular at cell {cell}: |m~| = {norm_value:.3e}"
        )
        self.cell = cell
        self.norm_value = norm_value
